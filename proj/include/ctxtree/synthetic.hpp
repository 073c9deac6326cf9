#pragma once

#include "ctxtree/feature_set.hpp"
#include "ctxtree/sequence.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ctxtree {

enum class Background {
  uniform,  // i.i.d. uniform symbols
  mixing,   // uniform symbols interleaved with copies of earlier blocks
};

Background parse_background(std::string_view name);
std::string_view to_string(Background background);

struct SyntheticSpec {
  std::size_t alphabet_size = 4;
  std::size_t length = 100000;  // N'

  /// Explicit features over synthetic_alphabet(alphabet_size), read as
  /// backward contexts. When empty, random_feature_count random features
  /// with lengths in [min_feature_length, max_feature_length] are drawn.
  std::vector<std::string> features;
  std::size_t random_feature_count = 0;
  std::size_t min_feature_length = 4;
  std::size_t max_feature_length = 8;

  /// Fraction of Y covered by planted copies; floor(density * N') symbols.
  double density = 0.0;
  /// Planting weight of the k-th feature is 1 / k^zipf_exponent.
  double zipf_exponent = 0.0;

  Background background = Background::uniform;
  double copy_probability = 0.01;
  std::size_t min_copy_length = 20;
  std::size_t max_copy_length = 200;

  std::uint64_t seed = 1;

  std::string to_json() const;
};

struct SyntheticCorpus {
  Alphabet alphabet;
  Sequence y;
  FeatureSet features;
  std::vector<std::uint64_t> planted_copies;  // per feature, aligned with features.features()
};

/// The first `size` symbols of A-Z, a-z, 0-9.
Alphabet synthetic_alphabet(std::size_t size);

/// Deterministic in the spec (including the seed) on every platform.
SyntheticCorpus gen_synthetic(const SyntheticSpec& spec);

/// Portable uniform draws from a 64-bit engine.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);

}  // namespace ctxtree
