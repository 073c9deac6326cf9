#include "ctxtree/synthetic.hpp"

#include "ctxtree/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace ctxtree {

namespace {

constexpr std::string_view kSymbolPool = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

std::size_t pick_weighted(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double r = uniform_unit(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

Background parse_background(std::string_view name) {
  if (name == "uniform") return Background::uniform;
  if (name == "mixing") return Background::mixing;
  throw InputError("unknown background model: " + std::string(name));
}

std::string_view to_string(Background background) {
  return background == Background::uniform ? "uniform" : "mixing";
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw RangeError("uniform_below(0)");
  // rejection keeps the draw unbiased and platform independent
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string SyntheticSpec::to_json() const {
  nlohmann::ordered_json j;
  j["alphabet_size"] = alphabet_size;
  j["length"] = length;
  j["features"] = features;
  j["random_feature_count"] = random_feature_count;
  j["min_feature_length"] = min_feature_length;
  j["max_feature_length"] = max_feature_length;
  j["density"] = density;
  j["zipf_exponent"] = zipf_exponent;
  j["background"] = std::string(to_string(background));
  j["copy_probability"] = copy_probability;
  j["min_copy_length"] = min_copy_length;
  j["max_copy_length"] = max_copy_length;
  j["seed"] = seed;
  return j.dump();
}

Alphabet synthetic_alphabet(std::size_t size) {
  if (size < 2 || size > kSymbolPool.size()) {
    throw RangeError("synthetic alphabet size must be in [2, " + std::to_string(kSymbolPool.size()) + "]");
  }
  return Alphabet(kSymbolPool.substr(0, size));
}

SyntheticCorpus gen_synthetic(const SyntheticSpec& spec) {
  if (!(spec.density >= 0.0) || spec.density > 1.0) throw RangeError("planting density must lie in [0, 1]");
  if (spec.length < 2) throw RangeError("synthetic length must be at least 2");
  if (spec.background == Background::mixing &&
      (spec.min_copy_length < 1 || spec.max_copy_length < spec.min_copy_length || spec.copy_probability < 0 ||
       spec.copy_probability > 1)) {
    throw RangeError("bad copy parameters for the mixing background");
  }
  const Alphabet alphabet = synthetic_alphabet(spec.alphabet_size);
  const std::uint64_t a = alphabet.size();
  std::mt19937_64 rng(spec.seed);

  // Features, backward-read.
  std::vector<std::vector<Code>> features;
  if (!spec.features.empty()) {
    for (const auto& f : spec.features) features.push_back(alphabet.encode(f));
  } else {
    if (spec.random_feature_count == 0) throw RangeError("no features requested");
    if (spec.min_feature_length < 1 || spec.max_feature_length < spec.min_feature_length) {
      throw RangeError("bad random feature length range");
    }
    std::set<std::vector<Code>> seen;
    std::size_t attempts = 0;
    while (features.size() < spec.random_feature_count) {
      if (++attempts > 1000 * spec.random_feature_count) throw RangeError("cannot draw enough distinct features");
      const std::size_t len =
          spec.min_feature_length + uniform_below(rng, spec.max_feature_length - spec.min_feature_length + 1);
      std::vector<Code> w(len);
      for (auto& c : w) c = static_cast<Code>(uniform_below(rng, a));
      if (seen.insert(w).second) features.push_back(std::move(w));
    }
  }
  for (const auto& w : features) {
    if (w.empty()) throw RangeError("empty feature");
    if (w.size() > spec.length) throw RangeError("feature longer than the training length");
  }

  // Planted copies, in sampling order.
  std::vector<double> weight(features.size());
  for (std::size_t k = 0; k < features.size(); ++k) {
    weight[k] = 1.0 / std::pow(static_cast<double>(k + 1), spec.zipf_exponent);
  }
  std::vector<std::size_t> plan;
  std::vector<std::uint64_t> copies(features.size(), 0);
  std::uint64_t remaining = static_cast<std::uint64_t>(std::floor(spec.density * static_cast<double>(spec.length)));
  std::uint64_t planted_symbols = 0;
  std::vector<std::size_t> fitting;
  std::vector<double> cumulative;
  while (true) {
    fitting.clear();
    cumulative.clear();
    double acc = 0;
    for (std::size_t k = 0; k < features.size(); ++k) {
      if (features[k].size() <= remaining) {
        fitting.push_back(k);
        acc += weight[k];
        cumulative.push_back(acc);
      }
    }
    if (fitting.empty()) break;
    const std::size_t k = fitting[pick_weighted(rng, cumulative)];
    plan.push_back(k);
    ++copies[k];
    remaining -= features[k].size();
    planted_symbols += features[k].size();
  }

  // Split the background into len(plan) + 1 gaps.
  const std::uint64_t background = spec.length - planted_symbols;
  std::vector<std::uint64_t> cuts(plan.size());
  for (auto& c : cuts) c = uniform_below(rng, background + 1);
  std::sort(cuts.begin(), cuts.end());

  std::vector<Code> y;
  y.reserve(spec.length);
  std::uint64_t copy_left = 0;
  std::uint64_t copy_from = 0;
  auto emit_background = [&](std::uint64_t count) {
    for (std::uint64_t k = 0; k < count; ++k) {
      if (spec.background == Background::mixing) {
        if (copy_left == 0 && !y.empty() && uniform_unit(rng) < spec.copy_probability) {
          copy_from = uniform_below(rng, y.size());
          copy_left = spec.min_copy_length + uniform_below(rng, spec.max_copy_length - spec.min_copy_length + 1);
        }
        if (copy_left > 0) {
          y.push_back(y[copy_from++]);
          --copy_left;
          continue;
        }
      }
      y.push_back(static_cast<Code>(uniform_below(rng, a)));
    }
  };

  std::uint64_t previous = 0;
  for (std::size_t p = 0; p < plan.size(); ++p) {
    emit_background(cuts[p] - previous);
    previous = cuts[p];
    copy_left = 0;
    const auto& w = features[plan[p]];
    y.insert(y.end(), w.rbegin(), w.rend());  // forward text of a backward context
  }
  emit_background(background - previous);

  std::vector<std::uint64_t> aligned;
  FeatureSet set(features, a);
  aligned.reserve(set.size());
  for (const auto& w : set.features()) {
    auto it = std::find(features.begin(), features.end(), w);
    aligned.push_back(copies[static_cast<std::size_t>(it - features.begin())]);
  }
  return SyntheticCorpus{alphabet, Sequence(std::move(y), "synthetic seed=" + std::to_string(spec.seed)),
                         std::move(set), std::move(aligned)};
}

}  // namespace ctxtree
