#pragma once

#include "ctxtree/sequence.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ctxtree {

using SaIndex = std::int32_t;

/// Suffix array of `text` by induced sorting (SA-IS), O(n) time. Codes
/// must be < alphabet_size. A suffix that is a proper prefix of another
/// sorts first. Requires |text| < 2^31.
std::vector<SaIndex> build_suffix_array(std::span<const Code> text, std::size_t alphabet_size);

}  // namespace ctxtree
