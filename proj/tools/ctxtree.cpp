// ctxtree: build, compact, classify and evaluate frequency-pruned context trees.
//
//   ctxtree build    training -> index
//   ctxtree compact  index -> standalone tree
//   ctxtree score | filter | sort   base + tests -> JSON-lines reports
//   ctxtree eval     sliding-window error check of one compaction
//   ctxtree gen      synthetic corpus + feature manifest
//   ctxtree sweep    eval over a parameter grid -> CSV
//
// Machine output goes to stdout (or -o), diagnostics to stderr.
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 data or invariant failure.

#include "cli_io.hpp"

#include "ctxtree/classifier.hpp"
#include "ctxtree/compaction.hpp"
#include "ctxtree/error.hpp"
#include "ctxtree/evaluation.hpp"
#include "ctxtree/feature_set.hpp"
#include "ctxtree/report.hpp"
#include "ctxtree/suffix_index.hpp"
#include "ctxtree/sweep.hpp"
#include "ctxtree/synthetic.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>

using namespace ctxtree;
using cli::UsageError;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;

constexpr std::size_t kDefaultMaxDepth = 64;

struct Options {
  // shared
  std::optional<std::string> format;
  unsigned threads = 1;
  std::string avg_mode = "matched";
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  bool quiet = false;

  // parameters
  std::optional<std::size_t> lmax;
  std::optional<std::string> epsilon;
  std::optional<std::size_t> big_n;
  std::optional<std::uint64_t> budget;
  std::string threshold = "0";

  // inputs
  std::string training;
  std::string index_path;
  std::optional<std::string> index_opt;
  std::optional<std::string> tree_opt;
  std::optional<std::string> features_opt;
  std::optional<std::string> training_opt;
  std::vector<std::string> tests;

  // command specific
  std::string tree_format = "text";
  bool no_train_stats = false;
  std::optional<std::string> accepted_out;
  std::optional<std::string> windows_out;
  std::optional<std::string> detail_out;
  std::vector<std::string> epsilons, thresholds;
  std::vector<std::uint64_t> budgets;
  std::vector<std::size_t> windows;

  // gen
  std::size_t alphabet_size = 4;
  std::size_t length = 100000;
  std::vector<std::string> gen_features;
  std::size_t feature_count = 8;
  std::size_t min_feature_length = 4;
  std::size_t max_feature_length = 8;
  double density = 0.2;
  double zipf = 0.0;
  std::string background = "uniform";
  double copy_probability = 0.01;
  std::size_t min_copy = 20;
  std::size_t max_copy = 200;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void note(const Options& o, const std::string& line) {
  if (!o.quiet) std::cerr << line << '\n';
}

Rational parse_param(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const InputError&) {
    throw UsageError(std::string("bad value for ") + flag + ": " + text);
  }
}

Rational epsilon_of(const Options& o) {
  if (!o.epsilon) throw UsageError("--epsilon is required");
  Rational e = parse_param(*o.epsilon, "--epsilon");
  if (e <= 0) throw UsageError("--epsilon must be positive");
  return e;
}

std::size_t big_n_of(const Options& o) {
  if (!o.big_n) throw UsageError("--bigN is required");
  if (*o.big_n < 1) throw UsageError("--bigN must be at least 1");
  return *o.big_n;
}

void check_lmax(const Options& o) {
  if (o.lmax && (*o.lmax < 1 || *o.lmax > 255)) throw UsageError("--lmax must lie in 1..255");
}

/// Explicit --lmax, else min(N - 1, 64) when N is known, else 64; a default
/// is clipped to fit the training length.
std::size_t effective_lmax(const Options& o, std::size_t source_length) {
  if (o.lmax) return *o.lmax;
  std::size_t l = kDefaultMaxDepth;
  if (o.big_n && *o.big_n > 1) l = std::min(l, *o.big_n - 1);
  if (source_length >= 2) l = std::min(l, source_length - 1);
  return std::max<std::size_t>(l, 1);
}

Json base_config(const Options& o, const std::string& command) {
  Json j;
  j["tool"] = "ctxtree";
  j["command"] = command;
  j["avg_mode"] = o.avg_mode;
  j["seed"] = o.seed;
  return j;
}

LoadedSequence load_training(const Options& o, const std::string& path) {
  cli::require_readable(path);
  return load_sequence_file(path, cli::detect_format(path, o.format));
}

// ---------------------------------------------------------------------------
// build

int cmd_build(const Options& o) {
  check_lmax(o);
  const auto start = Clock::now();
  auto loaded = load_training(o, o.training);
  const std::size_t n = loaded.sequence.size();
  const std::size_t lmax = effective_lmax(o, n);
  if (lmax >= n) throw RangeError("L_max must be below the training length " + std::to_string(n));

  auto index = SuffixIndex::build(loaded.sequence, loaded.alphabet, lmax);
  Json config = base_config(o, "build");
  config["training"] = o.training;
  config["lmax"] = lmax;
  config["source_length"] = n;
  config["alphabet"] = std::string(loaded.alphabet.symbols());

  const auto path = cli::resolve_output(o.output, std::filesystem::path(o.training).filename().string() + ".ctxidx");
  cli::AtomicFile out(path, true);
  index.save(out.stream(), config.dump());
  out.commit();
  note(o, "built index " + path.string() + ": N'=" + std::to_string(n) + " alphabet=" +
              std::string(loaded.alphabet.symbols()) + " L_max=" + std::to_string(lmax) +
              " table_depth=" + std::to_string(index.table_depth()) + " seconds=" +
              std::to_string(seconds_since(start)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compact

int cmd_compact(const Options& o) {
  const Rational eps = epsilon_of(o);
  const std::size_t big_n = big_n_of(o);
  const AvgMode mode = parse_avg_mode(o.avg_mode);
  if (o.tree_format != "text" && o.tree_format != "binary") throw UsageError("--tree-format is text or binary");
  if (o.budget && *o.budget < 1) throw UsageError("--features-budget must be at least 1");

  std::string index_config;
  auto index = SuffixIndex::load_file(o.index_path, nullptr, &index_config);
  const CompactionParams params{eps, big_n, o.budget.value_or(index.alphabet_size())};
  const CompactedTree tree = compact(index, params);
  for (const auto& w : tree.warnings()) std::cerr << "warning: " << w << '\n';

  StandaloneTree exported = tree.export_standalone();
  if (!o.no_train_stats) {
    const Sequence y = index.training_sequence();
    const MatchProfile profile = match_profile(tree, y.codes());
    auto matched = average_length(profile, AvgMode::matched);
    auto all = average_length(profile, AvgMode::all);
    if (matched && all) {
      exported.training_averages = TrainingAverages{*matched, *all};
    } else {
      std::cerr << "warning: the tree matches nowhere in the training sequence; no training averages stored\n";
    }
  }

  Json config = base_config(o, "compact");
  config["index"] = o.index_path;
  config["index_config"] = Json::parse(index_config, nullptr, false);
  config["epsilon"] = to_string(params.epsilon);
  config["bigN"] = params.test_length;
  config["features_budget"] = params.feature_budget;
  config["avg_mode"] = std::string(to_string(mode));
  exported.config_json = config.dump();

  const std::uint64_t leaves = exported.leaf_count();
  const std::uint64_t bound = leaf_bound(params);
  const auto path = cli::resolve_output(o.output, std::filesystem::path(o.index_path).filename().string() + ".tree");
  {
    cli::AtomicFile out(path, o.tree_format == "binary");
    if (o.tree_format == "binary") {
      exported.save_binary(out.stream());
    } else {
      exported.save_text(out.stream());
    }
    out.commit();
  }

  Json summary;
  summary["tree"] = path.string();
  summary["leaf_count"] = leaves;
  summary["leaf_bound"] = bound;
  summary["min_count"] = tree.min_count();
  summary["threshold"] = to_string(threshold(params));
  summary["within_bound"] = leaves <= bound;
  std::cout << summary.dump() << '\n';
  note(o, "leaf_count=" + std::to_string(leaves) + " bound=" + std::to_string(bound) +
              " min_count=" + std::to_string(tree.min_count()));
  if (leaves > bound) {
    std::cerr << "error: leaf count exceeds the bound\n";
    return kExitData;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score / filter / sort

struct ScoringBase {
  Alphabet alphabet;
  std::unique_ptr<SuffixIndex> index;
  std::optional<StandaloneTree> tree;
  std::optional<FeatureSet> features;
  TrainingStats stats{Rational(0), 0, AvgMode::matched};
  Json description;

  template <class F>
  decltype(auto) visit(F&& f) const {
    if (index) return f(IndexBase{index.get(), 1});
    if (tree) return f(*tree);
    return f(*features);
  }
};

ScoringBase load_scoring_base(const Options& o) {
  const int chosen = int(o.index_opt.has_value()) + int(o.tree_opt.has_value()) + int(o.features_opt.has_value());
  if (chosen != 1) throw UsageError("give exactly one of --index, --tree or --features");
  if (o.features_opt && !o.training_opt) throw UsageError("--features needs --training");
  const AvgMode mode = parse_avg_mode(o.avg_mode);

  ScoringBase b;
  if (o.index_opt) {
    b.index = std::make_unique<SuffixIndex>(SuffixIndex::load_file(*o.index_opt));
    b.alphabet = b.index->alphabet();
    const Sequence y = b.index->training_sequence();
    b.stats = training_stats(IndexBase{b.index.get(), 1}, y.codes(), mode);
    b.description = Json{{"kind", "index"}, {"path", *o.index_opt}};
  } else if (o.tree_opt) {
    cli::require_readable(*o.tree_opt);
    b.tree = StandaloneTree::load_file(*o.tree_opt);
    b.alphabet = b.tree->alphabet();
    if (o.training_opt) {
      auto y = load_sequence_file(*o.training_opt, cli::detect_format(*o.training_opt, o.format), b.alphabet);
      b.stats = training_stats(*b.tree, y.sequence.codes(), mode);
    } else {
      if (!b.tree->training_averages) {
        throw UndefinedAverage("tree has no stored training averages; pass --training");
      }
      const auto& avg = *b.tree->training_averages;
      b.stats = TrainingStats{mode == AvgMode::matched ? avg.matched : avg.all, b.tree->max_depth(), mode};
    }
    b.description = Json{{"kind", "tree"}, {"path", *o.tree_opt}};
  } else {
    auto y = load_training(o, *o.training_opt);
    b.alphabet = y.alphabet;
    cli::require_readable(*o.features_opt);
    b.features = read_feature_manifest_file(*o.features_opt, b.alphabet);
    b.stats = training_stats(*b.features, y.sequence.codes(), mode);
    b.description = Json{{"kind", "features"}, {"path", *o.features_opt}, {"training", *o.training_opt}};
  }
  return b;
}

std::vector<Sequence> load_tests(const Options& o, const Alphabet& alphabet) {
  std::vector<Sequence> tests;
  for (const auto& path : o.tests) {
    cli::require_readable(path);
    auto loaded = load_sequences_file(path, cli::detect_format(path, o.format), alphabet, SymbolPolicy::lenient);
    for (auto& s : loaded.records) {
      if (s.name().empty()) s.set_name(std::filesystem::path(path).filename().string());
      tests.push_back(std::move(s));
    }
  }
  return tests;
}

Json report_line(const SimilarityReport& r) {
  Json j = to_json(r);
  if (r.unknown_symbols > 0) {
    auto flags = j["flags"];
    flags.push_back("unknown-symbols");
    j["flags"] = flags;
  }
  return j;
}

void print_table(const std::vector<SimilarityReport>& reports, bool ranked) {
  std::fprintf(stderr, "%s%-24s %10s %10s  %s\n", ranked ? "rank  " : "", "name", "L(X|Y)", "D", "decision");
  std::size_t rank = 0;
  for (const auto& r : reports) {
    ++rank;
    const std::string lx = r.test_average ? to_decimal(*r.test_average) : "-";
    const std::string d = r.similarity ? to_decimal(*r.similarity) : "-";
    if (ranked) std::fprintf(stderr, "%-5zu ", rank);
    std::fprintf(stderr, "%-24.24s %10s %10s  %s\n", r.name.c_str(), lx.c_str(), d.c_str(),
                 std::string(to_string(r.decision)).c_str());
  }
}

enum class ScoreKind { score, filter, sort };

int cmd_classify(const Options& o, ScoreKind kind) {
  const Rational t = parse_param(o.threshold, "--threshold");
  if (o.tests.empty()) throw UsageError("no test files given");
  const ScoringBase base = load_scoring_base(o);
  const std::vector<Sequence> tests = load_tests(o, base.alphabet);
  if (tests.empty()) throw InputError("no test sequences");

  std::vector<SimilarityReport> reports =
      base.visit([&](const auto& b) { return score_all(b, base.stats, tests, t, o.threads); });

  const char* command = kind == ScoreKind::score ? "score" : kind == ScoreKind::filter ? "filter" : "sort";
  Json config = base_config(o, command);
  config["base"] = base.description;
  config["threshold"] = to_string(t);
  config["L_Y"] = to_string(base.stats.average);
  config["L_max"] = base.stats.max_depth;
  config["tests"] = o.tests;

  cli::OutputSink sink(o.output);
  sink.stream() << config_header(config).dump() << '\n';
  if (kind == ScoreKind::sort) {
    auto ranked = rank_reports(reports);
    std::vector<SimilarityReport> ordered;
    std::size_t rank = 0;
    for (auto& e : ranked) {
      Json j = report_line(e.report);
      j["rank"] = ++rank;
      j["input_index"] = e.input_index;
      sink.stream() << j.dump() << '\n';
      ordered.push_back(std::move(e.report));
    }
    if (!o.quiet) print_table(ordered, true);
  } else {
    for (const auto& r : reports) sink.stream() << report_line(r).dump() << '\n';
    if (!o.quiet) print_table(reports, false);
  }

  std::optional<cli::AtomicFile> accepted;
  if (kind == ScoreKind::filter && o.accepted_out) {
    accepted.emplace(cli::resolve_output(o.accepted_out, *o.accepted_out));
    for (std::size_t k = 0; k < tests.size(); ++k) {
      if (reports[k].decision != Decision::acceptable) continue;
      if (tests[k].unknown_count() > 0) {
        // unknown symbols cannot be rendered back through the alphabet
        std::cerr << "warning: " << tests[k].name() << " holds unknown symbols; not copied\n";
        continue;
      }
      write_fasta(accepted->stream(), tests[k], base.alphabet);
    }
  }
  sink.commit();
  if (accepted) accepted->commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalInputs {
  std::unique_ptr<SuffixIndex> index;
  std::optional<FeatureSet> features;
  Json description;
};

EvalInputs load_eval_inputs(const Options& o) {
  if (o.index_opt.has_value() == o.training_opt.has_value()) {
    throw UsageError("give exactly one of --index or --training");
  }
  EvalInputs in;
  if (o.index_opt) {
    in.index = std::make_unique<SuffixIndex>(SuffixIndex::load_file(*o.index_opt));
    in.description = Json{{"index", *o.index_opt}};
  } else {
    auto y = load_training(o, *o.training_opt);
    const std::size_t lmax = effective_lmax(o, y.sequence.size());
    in.index = std::make_unique<SuffixIndex>(SuffixIndex::build(y.sequence, y.alphabet, lmax));
    in.description = Json{{"training", *o.training_opt}, {"lmax", lmax}};
  }
  if (o.features_opt) {
    cli::require_readable(*o.features_opt);
    in.features = read_feature_manifest_file(*o.features_opt, in.index->alphabet());
    in.description["features"] = *o.features_opt;
  }
  return in;
}

int cmd_eval(const Options& o) {
  check_lmax(o);
  const Rational eps = epsilon_of(o);
  const std::size_t big_n = big_n_of(o);
  const Rational t = parse_param(o.threshold, "--threshold");
  const AvgMode mode = parse_avg_mode(o.avg_mode);
  if (o.budget && *o.budget < 1) throw UsageError("--features-budget must be at least 1");

  const auto start = Clock::now();
  EvalInputs in = load_eval_inputs(o);
  const SuffixIndex& index = *in.index;
  const Sequence y = index.training_sequence();
  EvalParams params;
  params.window = big_n;
  params.threshold = t;
  params.compaction = CompactionParams{eps, big_n, o.budget.value_or(index.alphabet_size())};
  params.mode = mode;
  params.threads = o.threads;
  params.seed = o.seed;
  params.keep_windows = o.windows_out.has_value();

  const CompactedTree tree = compact(index, params.compaction);
  for (const auto& w : tree.warnings()) std::cerr << "warning: " << w << '\n';
  EvalReport report;
  if (in.features) {
    const FeatureSet kept = retained_features(*in.features, tree);
    report = window_eval(*in.features, kept, y.codes(), params);
  } else {
    report = window_eval(IndexBase{&index, 1}, tree, y.codes(), params);
  }

  Json config = base_config(o, "eval");
  config["inputs"] = in.description;
  config["mode"] = in.features ? "features" : "universal";
  Json line = to_json(report, params);
  line["leaf_count"] = tree.leaf_count();
  line["leaf_bound"] = leaf_bound(params.compaction);
  line["min_count"] = tree.min_count();

  cli::OutputSink sink(o.output);
  sink.stream() << config_header(config).dump() << '\n' << line.dump() << '\n';
  std::optional<cli::AtomicFile> detail;
  if (o.windows_out) {
    detail.emplace(cli::resolve_output(o.windows_out, *o.windows_out));
    detail->stream() << config_header(config).dump() << '\n';
    for (const auto& w : report.windows) detail->stream() << to_json(w).dump() << '\n';
  }
  sink.commit();
  if (detail) detail->commit();

  std::cerr << "q=" << to_string(report.q) << " p_delta=" << to_string(report.p_delta)
            << " bound=" << (report.bound ? to_string(*report.bound) : std::string("inf"))
            << (report.vacuous ? " (vacuous)" : "") << ' ' << (report.pass ? "PASS" : "FAIL") << '\n';
  note(o, "windows=" + std::to_string(report.window_count) + " pruned_mass=" + to_decimal(report.pruned_mass) +
              " seconds=" + std::to_string(seconds_since(start)));
  return report.pass ? kExitOk : kExitData;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const Options& o) {
  SyntheticSpec spec;
  spec.alphabet_size = o.alphabet_size;
  spec.length = o.length;
  spec.features = o.gen_features;
  spec.random_feature_count = o.gen_features.empty() ? o.feature_count : 0;
  spec.min_feature_length = o.min_feature_length;
  spec.max_feature_length = o.max_feature_length;
  spec.density = o.density;
  spec.zipf_exponent = o.zipf;
  try {
    spec.background = parse_background(o.background);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  spec.copy_probability = o.copy_probability;
  spec.min_copy_length = o.min_copy;
  spec.max_copy_length = o.max_copy;
  spec.seed = o.seed;
  if (spec.density < 0 || spec.density > 1) throw UsageError("--density must lie in [0, 1]");

  const SyntheticCorpus corpus = gen_synthetic(spec);
  Json config = base_config(o, "gen");
  config["spec"] = Json::parse(spec.to_json());

  const std::string prefix = o.output.value_or("synthetic-s" + std::to_string(o.seed));
  auto seq_path = cli::resolve_output(prefix + ".fa", prefix + ".fa");
  auto feat_path = cli::resolve_output(prefix + ".features", prefix + ".features");
  cli::AtomicFile seq_out(seq_path);
  cli::AtomicFile feat_out(feat_path);
  Sequence y = corpus.y;
  y.set_name("synthetic config=" + config.dump());
  write_fasta(seq_out.stream(), y, corpus.alphabet);
  write_feature_manifest(feat_out.stream(), corpus.features, corpus.alphabet, config.dump());
  seq_out.commit();
  feat_out.commit();

  std::uint64_t planted = 0;
  for (auto c : corpus.planted_copies) planted += c;
  Json summary{{"sequence", seq_path.string()},
               {"features", feat_path.string()},
               {"length", corpus.y.size()},
               {"feature_count", corpus.features.size()},
               {"planted_copies", planted},
               {"seed", o.seed}};
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

template <class T, class From, class Parse>
std::vector<T> parse_list(const std::vector<From>& items, Parse parse) {
  std::vector<T> out;
  for (const auto& s : items) out.push_back(parse(s));
  return out;
}

int cmd_sweep(const Options& o) {
  check_lmax(o);
  const AvgMode mode = parse_avg_mode(o.avg_mode);
  SweepGrid grid;
  grid.epsilons = o.epsilons.empty() ? std::vector<Rational>{epsilon_of(o)}
                                     : parse_list<Rational>(o.epsilons, [](const std::string& s) {
                                         return parse_param(s, "--epsilons");
                                       });
  grid.windows = o.windows.empty() ? std::vector<std::size_t>{big_n_of(o)} : o.windows;
  grid.thresholds = o.thresholds.empty() ? std::vector<Rational>{parse_param(o.threshold, "--threshold")}
                                         : parse_list<Rational>(o.thresholds, [](const std::string& s) {
                                             return parse_param(s, "--thresholds");
                                           });
  const auto start = Clock::now();
  EvalInputs in = load_eval_inputs(o);
  if (!o.budgets.empty()) {
    grid.budgets = o.budgets;
  } else {
    grid.budgets = {o.budget.value_or(in.index->alphabet_size())};
  }

  SweepInput input;
  input.index = in.index.get();
  input.features = in.features ? &*in.features : nullptr;
  input.mode = in.features ? SweepMode::features : SweepMode::universal;
  input.avg_mode = mode;
  input.threads = o.threads;
  input.seed = o.seed;
  const auto cells = sweep(input, grid);
  const SweepSummary summary = summarize(cells);

  Json config = base_config(o, "sweep");
  config["inputs"] = in.description;
  config["mode"] = std::string(to_string(input.mode));
  config["epsilons"] = parse_list<std::string>(grid.epsilons, [](const Rational& r) { return to_string(r); });
  config["budgets"] = grid.budgets;
  config["windows"] = grid.windows;
  config["thresholds"] = parse_list<std::string>(grid.thresholds, [](const Rational& r) { return to_string(r); });

  cli::OutputSink sink(o.output);
  write_sweep_csv(sink.stream(), cells, o.seed, config.dump());
  std::optional<cli::AtomicFile> detail;
  if (o.detail_out) {
    detail.emplace(cli::resolve_output(o.detail_out, *o.detail_out));
    detail->stream() << config_header(config).dump() << '\n';
    for (const auto& c : cells) detail->stream() << to_json(c, o.seed, mode).dump() << '\n';
  }
  sink.commit();
  if (detail) detail->commit();

  for (const auto& c : cells) {
    if (!c.ok()) std::cerr << "cell eps=" << to_string(c.epsilon) << " f=" << c.budget << " N=" << c.window
                           << " T=" << to_string(c.threshold) << ": " << c.error << '\n';
  }
  std::cerr << "cells=" << summary.cells << " errors=" << summary.errors << " violations=" << summary.violations
            << " leaf_overflows=" << summary.leaf_overflows << " vacuous=" << summary.vacuous
            << " seconds=" << seconds_since(start) << '\n';
  return summary.violations == 0 && summary.leaf_overflows == 0 ? kExitOk : kExitData;
}

// ---------------------------------------------------------------------------

void add_shared(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Sequence format (default: sniffed)")->check(CLI::IsMember({"plain", "fasta"}));
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--avg-mode", o.avg_mode, "Average over matched or all positions")
      ->check(CLI::IsMember({"matched", "all"}));
  cmd->add_option("--seed", o.seed, "Seed, echoed into every output");
  cmd->add_option("-o,--output", o.output, "Output path (relative paths go to $" + std::string(cli::kOutputDirEnv) + ")");
  cmd->add_flag("-q,--quiet", o.quiet, "Less chatter on stderr");
}

void add_compaction(CLI::App* cmd, Options& o) {
  cmd->add_option("--epsilon", o.epsilon, "Error budget epsilon (decimal or fraction)");
  cmd->add_option("--bigN", o.big_n, "Test sequence length N");
  cmd->add_option("--features-budget", o.budget, "Feature budget f (default: alphabet size)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-pruned context trees for sequence classification"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Index a training sequence");
  add_shared(build, o);
  build->add_option("training", o.training, "Training sequence")->required();
  build->add_option("--lmax", o.lmax, "Longest context indexed (default min(N-1, 64))");
  build->add_option("--bigN", o.big_n, "Test length, used only for the --lmax default");

  auto* compact_cmd = app.add_subcommand("compact", "Prune an index into a standalone tree");
  add_shared(compact_cmd, o);
  add_compaction(compact_cmd, o);
  compact_cmd->add_option("index", o.index_path, "Index file")->required();
  compact_cmd->add_option("--tree-format", o.tree_format, "text or binary");
  compact_cmd->add_flag("--no-train-stats", o.no_train_stats, "Do not store training averages");

  std::array<CLI::App*, 3> classify{};
  const std::array<std::pair<const char*, const char*>, 3> classify_names = {
      {{"score", "Similarity report per test sequence"},
       {"filter", "Accept or reject each test sequence"},
       {"sort", "Rank test sequences by similarity"}}};
  for (std::size_t k = 0; k < 3; ++k) {
    auto* cmd = app.add_subcommand(classify_names[k].first, classify_names[k].second);
    add_shared(cmd, o);
    cmd->add_option("tests", o.tests, "Test sequence files")->required();
    cmd->add_option("--index", o.index_opt, "Full index (no pruning)");
    cmd->add_option("--tree", o.tree_opt, "Standalone compacted tree");
    cmd->add_option("--features", o.features_opt, "Feature manifest (with --training)");
    cmd->add_option("--training", o.training_opt, "Training sequence");
    cmd->add_option("--threshold", o.threshold, "Decision threshold T");
    classify[k] = cmd;
  }
  classify[1]->add_option("--accepted-out", o.accepted_out, "FASTA of the acceptable tests");

  auto* eval = app.add_subcommand("eval", "Sliding-window error check of one compaction");
  add_shared(eval, o);
  add_compaction(eval, o);
  eval->add_option("--index", o.index_opt, "Index file");
  eval->add_option("--training", o.training_opt, "Training sequence (indexed in memory)");
  eval->add_option("--lmax", o.lmax, "Context cap when indexing --training");
  eval->add_option("--features", o.features_opt, "Feature manifest: compare feature classifiers");
  eval->add_option("--threshold", o.threshold, "Decision threshold T");
  eval->add_option("--windows-out", o.windows_out, "Per-window JSON lines");

  auto* gen = app.add_subcommand("gen", "Synthetic training corpus with planted features");
  add_shared(gen, o);
  gen->add_option("--alphabet-size", o.alphabet_size, "Alphabet size (2..62)");
  gen->add_option("--length", o.length, "Sequence length N'");
  gen->add_option("--feature", o.gen_features, "Explicit feature (repeatable)");
  gen->add_option("--feature-count", o.feature_count, "Random features when none is given");
  gen->add_option("--min-feature-length", o.min_feature_length, "Shortest random feature");
  gen->add_option("--max-feature-length", o.max_feature_length, "Longest random feature");
  gen->add_option("--density", o.density, "Fraction of the sequence covered by planted copies");
  gen->add_option("--zipf", o.zipf, "Zipf exponent of the planting weights");
  gen->add_option("--background", o.background, "uniform or mixing");
  gen->add_option("--copy-probability", o.copy_probability, "Mixing: chance to start a copy per symbol");
  gen->add_option("--min-copy", o.min_copy, "Mixing: shortest copied block");
  gen->add_option("--max-copy", o.max_copy, "Mixing: longest copied block");

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a grid of (epsilon, f, N, T)");
  add_shared(sweep_cmd, o);
  add_compaction(sweep_cmd, o);
  sweep_cmd->add_option("--index", o.index_opt, "Index file");
  sweep_cmd->add_option("--training", o.training_opt, "Training sequence (indexed in memory)");
  sweep_cmd->add_option("--lmax", o.lmax, "Context cap when indexing --training");
  sweep_cmd->add_option("--features", o.features_opt, "Feature manifest: feature-classifier mode");
  sweep_cmd->add_option("--threshold", o.threshold, "Threshold when --thresholds is absent");
  sweep_cmd->add_option("--epsilons", o.epsilons, "Comma-separated epsilon grid")->delimiter(',');
  sweep_cmd->add_option("--budgets", o.budgets, "Comma-separated f grid")->delimiter(',');
  sweep_cmd->add_option("--windows", o.windows, "Comma-separated N grid")->delimiter(',');
  sweep_cmd->add_option("--thresholds", o.thresholds, "Comma-separated T grid")->delimiter(',');
  sweep_cmd->add_option("--detail", o.detail_out, "JSON-lines detail stream");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(o);
    if (compact_cmd->parsed()) return cmd_compact(o);
    if (classify[0]->parsed()) return cmd_classify(o, ScoreKind::score);
    if (classify[1]->parsed()) return cmd_classify(o, ScoreKind::filter);
    if (classify[2]->parsed()) return cmd_classify(o, ScoreKind::sort);
    if (eval->parsed()) return cmd_eval(o);
    if (gen->parsed()) return cmd_gen(o);
    if (sweep_cmd->parsed()) return cmd_sweep(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
