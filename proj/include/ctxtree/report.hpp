#pragma once

// JSON renderings shared by the CLI and the tests. Exact values travel as
// "num/den" strings next to their decimal approximations.

#include "ctxtree/classifier.hpp"
#include "ctxtree/evaluation.hpp"
#include "ctxtree/sweep.hpp"

#include <json.hpp>

namespace ctxtree {

using Json = nlohmann::ordered_json;

Json to_json(const SimilarityReport& report);
Json to_json(const EvalReport& report, const EvalParams& params);
Json to_json(const WindowRecord& window);
Json to_json(const SweepCell& cell, std::uint64_t seed, AvgMode mode);

/// First line of every JSON-lines stream: {"config": ...}.
Json config_header(const Json& config);

}  // namespace ctxtree
