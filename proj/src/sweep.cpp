#include "ctxtree/sweep.hpp"

#include "ctxtree/error.hpp"

#include <map>
#include <ostream>

namespace ctxtree {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SweepMode parse_sweep_mode(std::string_view name) {
  if (name == "universal") return SweepMode::universal;
  if (name == "features") return SweepMode::features;
  throw InputError("unknown sweep mode: " + std::string(name));
}

std::string_view to_string(SweepMode mode) { return mode == SweepMode::universal ? "universal" : "features"; }

std::vector<SweepCell> sweep(const SweepInput& input, const SweepGrid& grid) {
  if (grid.size() == 0) throw RangeError("sweep grid is empty");
  if (input.index == nullptr) throw RangeError("sweep needs an index");
  if (input.mode == SweepMode::features && input.features == nullptr) {
    throw RangeError("feature-mode sweep needs a feature set");
  }
  const SuffixIndex& index = *input.index;
  const Sequence y = index.training_sequence();

  std::optional<PreparedBase> ref;
  std::string ref_error;
  try {
    if (input.mode == SweepMode::universal) {
      ref = prepare(IndexBase{&index, 1}, y.codes(), input.avg_mode, input.threads);
    } else {
      ref = prepare(*input.features, y.codes(), input.avg_mode, input.threads);
    }
  } catch (const Error& e) {
    ref_error = e.what();
  }

  // Candidates depend only on the count threshold; keep a few around.
  std::map<std::uint64_t, PreparedBase> cache;
  std::map<std::uint64_t, std::uint64_t> retained_sizes;
  auto candidate = [&](const CompactedTree& tree) -> const PreparedBase& {
    auto it = cache.find(tree.min_count());
    if (it != cache.end()) return it->second;
    if (cache.size() >= 4) cache.erase(cache.begin());
    PreparedBase prepared;
    if (input.mode == SweepMode::universal) {
      prepared = prepare(tree, y.codes(), input.avg_mode, input.threads);
    } else {
      const FeatureSet kept = retained_features(*input.features, tree);
      retained_sizes[tree.min_count()] = kept.size();
      prepared = prepare(kept, y.codes(), input.avg_mode, input.threads);
    }
    return cache.emplace(tree.min_count(), std::move(prepared)).first->second;
  };

  std::vector<SweepCell> cells;
  cells.reserve(grid.size());
  std::map<std::uint64_t, std::uint64_t> leaf_counts;
  for (const auto& eps : grid.epsilons) {
    for (auto f : grid.budgets) {
      for (auto n : grid.windows) {
        for (const auto& t : grid.thresholds) {
          SweepCell cell;
          cell.epsilon = eps;
          cell.budget = f;
          cell.window = n;
          cell.threshold = t;
          try {
            if (!ref) throw RangeError(ref_error);
            CompactionParams params{eps, n, f};
            params.validate();
            cell.leaf_bound = leaf_bound(params);
            const CompactedTree tree = compact(index, params);
            cell.min_count = tree.min_count();
            auto lc = leaf_counts.find(tree.min_count());
            if (lc == leaf_counts.end()) lc = leaf_counts.emplace(tree.min_count(), tree.leaf_count()).first;
            cell.leaf_count = lc->second;
            const PreparedBase& cand = candidate(tree);
            if (input.mode == SweepMode::features) cell.retained_features = retained_sizes[tree.min_count()];
            EvalParams eval{n, t, params, input.avg_mode, input.threads, input.seed, false};
            cell.report = window_eval(*ref, cand, eval);
          } catch (const Error& e) {
            cell.error = e.what();
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

SweepSummary summarize(const std::vector<SweepCell>& cells) {
  SweepSummary s;
  s.cells = cells.size();
  for (const auto& c : cells) {
    if (!c.ok()) {
      ++s.errors;
      continue;
    }
    if (!c.report->pass) ++s.violations;
    if (c.report->vacuous) ++s.vacuous;
    if (c.leaf_count > c.leaf_bound) ++s.leaf_overflows;
  }
  return s;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells, std::uint64_t seed,
                     const std::string& config_json) {
  out << "# config=" << config_json << '\n';
  out << "epsilon,f,N,T,leaf_count,q,p_delta,bound,pass,seed,min_count,leaf_bound,pruned_mass,vacuous,error\n";
  for (const auto& c : cells) {
    out << to_string(c.epsilon) << ',' << c.budget << ',' << c.window << ',' << to_string(c.threshold) << ',';
    if (c.ok()) {
      const EvalReport& r = *c.report;
      out << c.leaf_count << ',' << to_string(r.q) << ',' << to_string(r.p_delta) << ','
          << (r.bound ? to_string(*r.bound) : std::string("inf")) << ',' << (r.pass ? "true" : "false") << ','
          << seed << ',' << c.min_count << ',' << c.leaf_bound << ',' << to_string(r.pruned_mass) << ','
          << (r.vacuous ? "true" : "false") << ",\n";
    } else {
      out << ",,,,false," << seed << ",,,,," << csv_field(c.error) << '\n';
    }
  }
}

}  // namespace ctxtree
