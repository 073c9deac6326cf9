#include "ctxtree/report.hpp"

namespace ctxtree {

namespace {

Json exact(const Rational& r) { return to_string(r); }

Json decimal(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return to_double(*r);
}

Json exact(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return to_string(*r);
}

}  // namespace

Json to_json(const SimilarityReport& r) {
  Json j;
  j["name"] = r.name;
  j["L_Y"] = to_double(r.train_average);
  j["L_X_given_Y"] = decimal(r.test_average);
  j["L_max"] = r.max_depth;
  j["D"] = decimal(r.similarity);
  j["T"] = to_double(r.threshold);
  j["decision"] = std::string(to_string(r.decision));
  j["matched_positions"] = r.matched_positions;
  j["profile_summary"] = Json{{"length", r.length},
                              {"total_match_length", r.total_match_length},
                              {"longest", r.longest},
                              {"unknown_symbols", r.unknown_symbols}};
  j["exact"] = Json{{"L_Y", exact(r.train_average)},
                    {"L_X_given_Y", exact(r.test_average)},
                    {"D", exact(r.similarity)},
                    {"T", exact(r.threshold)}};
  j["flags"] = r.flags;
  return j;
}

Json to_json(const EvalReport& r, const EvalParams& p) {
  Json j;
  j["epsilon"] = exact(p.compaction.epsilon);
  j["f"] = p.compaction.feature_budget;
  j["N"] = p.window;
  j["T"] = exact(p.threshold);
  j["avg_mode"] = std::string(to_string(p.mode));
  j["seed"] = p.seed;
  j["window_count"] = r.window_count;
  j["accepted_ref"] = r.accepted_ref;
  j["accepted_cand"] = r.accepted_cand;
  j["rejected_by_cand"] = r.rejected_by_cand;
  j["accepted_by_cand_only"] = r.accepted_by_cand_only;
  j["q"] = exact(r.q);
  j["p_delta"] = exact(r.p_delta);
  j["bound"] = exact(r.bound);
  j["pass"] = r.pass;
  j["vacuous"] = r.vacuous;
  j["pruned_mass"] = exact(r.pruned_mass);
  j["flips_with_pruned_hit"] = r.flips_with_pruned_hit;
  j["flips_without_pruned_hit"] = r.flips_without_pruned_hit;
  j["ref_train_average"] = exact(r.ref_train_average);
  j["cand_train_average"] = exact(r.cand_train_average);
  j["decimal"] = Json{{"q", to_double(r.q)},
                      {"p_delta", to_double(r.p_delta)},
                      {"bound", decimal(r.bound)},
                      {"pruned_mass", to_double(r.pruned_mass)}};
  return j;
}

Json to_json(const WindowRecord& w) {
  Json j;
  j["start"] = w.start;
  j["ref_D"] = exact(w.ref_similarity);
  j["cand_D"] = exact(w.cand_similarity);
  j["ref_accepts"] = w.ref_accepts;
  j["cand_accepts"] = w.cand_accepts;
  j["diff_positions"] = w.diff_positions;
  return j;
}

Json to_json(const SweepCell& c, std::uint64_t seed, AvgMode mode) {
  Json j;
  j["epsilon"] = exact(c.epsilon);
  j["f"] = c.budget;
  j["N"] = c.window;
  j["T"] = exact(c.threshold);
  j["seed"] = seed;
  if (!c.ok()) {
    j["error"] = c.error;
    return j;
  }
  j["min_count"] = c.min_count;
  j["leaf_count"] = c.leaf_count;
  j["leaf_bound"] = c.leaf_bound;
  j["retained_features"] = c.retained_features;
  EvalParams p;
  p.window = c.window;
  p.threshold = c.threshold;
  p.compaction = CompactionParams{c.epsilon, c.window, c.budget};
  p.seed = seed;
  p.mode = mode;
  j["report"] = to_json(*c.report, p);
  return j;
}

Json config_header(const Json& config) { return Json{{"config", config}}; }

}  // namespace ctxtree
