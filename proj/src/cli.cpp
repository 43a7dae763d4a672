#include "mbrank/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mbrank/bench.hpp"
#include "mbrank/elimination.hpp"
#include "mbrank/error.hpp"
#include "mbrank/evaluation.hpp"
#include "mbrank/iamb.hpp"
#include "mbrank/io.hpp"
#include "mbrank/simd/kernels.hpp"
#include "mbrank/synthetic.hpp"

namespace mbrank {
namespace {

struct RankArgs {
  std::string data;
  std::string target;
  std::string measure = "f";
  std::string kernel = "linear";
  std::optional<double> sigma;
  double epsilon = 1e-3;
  double beta = 0.0;
  double alpha = 0.05;
  bool forward = false;
  std::optional<std::size_t> stop_at;
  bool use_iamb = false;
  std::string out;
};

struct SynthArgs {
  SynthConfig cfg;
  std::string spouses = "one";
  std::string edge_mode = "rewire";
  std::string out;
  std::string truth;
};

struct ScoreArgs {
  std::string truth;
  std::string ranking;
  std::string data;
};

KernelSpec kernel_spec(const std::string& family, std::optional<double> sigma, double epsilon) {
  KernelSpec spec;
  spec.family = family == "gaussian" ? KernelFamily::Gaussian : KernelFamily::Linear;
  spec.sigma = sigma;
  spec.epsilon = epsilon;
  spec.validate();
  return spec;
}

int cmd_rank(const RankArgs& a, std::ostream& out) {
  const DataMatrix data = io::read_csv(a.data);
  const auto target = data.index_of(a.target);
  if (!target) throw Error(Errc::BadTarget, "target '" + a.target + "' is not a column of " + a.data);

  io::RankingFile file;
  file.target = a.target;

  if (a.use_iamb) {
    const SubsetResult subset = iamb(data, *target, a.alpha);
    file.is_subset = true;
    for (std::size_t v : subset.members) file.names.push_back(data.names()[v]);
    out << "# target=" << a.target << " method=iamb alpha=" << io::format_double(a.alpha) << '\n';
    for (const auto& name : file.names) out << name << '\n';
  } else {
    const KernelSpec spec = kernel_spec(a.kernel, a.sigma, a.epsilon);
    EliminationResult result;
    if (a.measure == "hsic") {
      result = bahsic_eliminate(data, *target, spec);
      file.measure = "HSIC";
    } else {
      const MeasureKind kind = a.measure == "z" ? MeasureKind::M2 : MeasureKind::M1;
      file.measure = std::string(measure_name(kind));
      result = a.forward ? forward_select(data, *target, kind, spec, a.stop_at)
                         : backward_eliminate(data, *target, kind, spec, a.beta);
    }
    file.direction = result.direction;
    for (std::size_t v : result.order) file.names.push_back(data.names()[v]);
    file.values = result.step_values;

    out << "# target=" << a.target << " measure=" << file.measure << " direction="
        << (result.direction == Direction::Backward ? "backward" : "forward") << '\n';
    for (std::size_t i = 0; i < result.order.size(); ++i)
      out << (i + 1) << '\t' << file.names[i] << '\t' << io::format_double(result.step_values[i]) << '\n';
  }

  if (!a.out.empty()) io::write_ranking(a.out, file);
  return 0;
}

int cmd_synth(SynthArgs a, std::ostream& out) {
  a.cfg.spouses_per_child = a.spouses == "both" ? SpousesPerChild::Both : SpousesPerChild::One;
  a.cfg.edge_mode = a.edge_mode == "preserve" ? EdgeMode::Preserve : EdgeMode::Rewire;
  const SynthDataset ds = gen_mb_dataset(a.cfg);
  std::filesystem::path truth = a.truth;
  if (truth.empty()) truth = std::filesystem::path(a.out).replace_extension(".truth");
  io::write_csv(ds.data, a.out);
  io::write_truth(truth, io::truth_file(ds.truth, ds.data.names()));
  out << "wrote " << a.out << " (" << ds.data.rows() << " rows, " << ds.data.cols() << " columns) and "
      << truth.string() << '\n';
  return 0;
}

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  const io::TruthFile truth_file = io::read_truth(a.truth);
  const io::RankingFile ranking = io::read_ranking(a.ranking);
  if (truth_file.mb.empty()) throw Error(Errc::EmptyTruth, a.truth + " lists no blanket members");

  std::vector<std::string> universe = ranking.names;
  if (!a.data.empty()) universe = io::read_csv(a.data).names();

  std::vector<std::string> unknown;
  auto known = [&](const std::string& name) {
    return std::find(universe.begin(), universe.end(), name) != universe.end();
  };
  for (const auto& name : truth_file.mb)
    if (!known(name) && !ranking.is_subset) unknown.push_back(name);
  if (!a.data.empty()) {
    if (!known(truth_file.target)) unknown.push_back(truth_file.target);
    for (const auto& name : truth_file.mb)
      if (!known(name) && ranking.is_subset) unknown.push_back(name);
    for (const auto& name : ranking.names)
      if (!known(name)) unknown.push_back(name);
  }
  if (!unknown.empty())
    throw Error(Errc::BadOrder, "names not found: " + io::join(unknown, ','));

  // Index every name that appears anywhere.
  std::vector<std::string> names = ranking.names;
  auto index_of = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      return names.size() - 1;
    }
    return static_cast<std::size_t>(it - names.begin());
  };
  MarkovBlanketTruth truth;
  truth.target = index_of(truth_file.target);
  for (const auto& name : truth_file.mb) truth.mb.push_back(index_of(name));
  std::sort(truth.mb.begin(), truth.mb.end());

  std::vector<std::size_t> members;
  for (const auto& name : ranking.names) members.push_back(index_of(name));

  if (ranking.is_subset) {
    out << "accuracy=" << io::format_double(accuracy(SubsetResult{members}, truth)) << '\n';
    return 0;
  }
  EliminationResult result;
  result.order = members;
  result.direction = ranking.direction;
  const auto normalized = normalize_ranks(ascending_order(result), truth);
  out << "mean_mb_rank=" << io::format_double(normalized.mean_mb_rank) << '\n';
  out << "accuracy=" << io::format_double(accuracy(clip_ranking(result, truth.mb.size()), truth)) << '\n';
  return 0;
}

int cmd_bench(const std::string& config_path, const io::KeyValues& overrides, std::ostream& out,
              std::ostream& err) {
  io::KeyValues kv;
  if (!config_path.empty()) kv = io::read_key_values(config_path);
  for (const auto& [k, v] : overrides) kv[k] = v;
  ExperimentConfig cfg = config_from_key_values(kv);
  if (cfg.out.empty()) throw Error(Errc::InvalidConfig, "no output path (--out or out=)");
  cfg.validate();

  const BenchOutcome outcome = run_benchmark(cfg);
  write_records(cfg.out, outcome.records);
  const auto agg = aggregate_path(cfg.out);
  write_aggregate(agg, outcome.aggregate);

  out << "wrote " << outcome.records.size() << " records to " << cfg.out.string() << " and aggregate to "
      << agg.string() << '\n';
  for (const auto& row : outcome.aggregate)
    out << io::format_double(row.grid_value) << '\t' << row.algorithm << '\t' << row.metric << '\t'
        << io::format_double(row.mean) << " +/- " << io::format_double(row.ci95) << '\n';
  if (outcome.error_rows > 0) {
    err << outcome.error_rows << " trial(s) failed; see status=error rows\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov blanket ranking by kernel conditional dependence"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "Force a kernel ISA (scalar, avx2, neon)");

  const std::vector<std::string> measures{"f", "z", "hsic"};
  const std::vector<std::string> kernels{"linear", "gaussian"};

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank the variables of a CSV dataset against a target");
  rank_cmd->add_option("--data", rank.data, "Dataset CSV")->required();
  rank_cmd->add_option("--target", rank.target, "Target column name")->required();
  rank_cmd->add_option("--measure", rank.measure, "f (M1), z (M2) or hsic (BAHSIC)")
      ->check(CLI::IsMember(measures));
  rank_cmd->add_option("--kernel", rank.kernel)->check(CLI::IsMember(kernels));
  rank_cmd->add_option("--sigma", rank.sigma, "Fixed Gaussian bandwidth (default: median heuristic)");
  rank_cmd->add_option("--epsilon", rank.epsilon, "Ridge regularization");
  rank_cmd->add_option("--beta", rank.beta, "Batch fraction: remove ceil((1-beta)|X_S|) per step when > 0");
  rank_cmd->add_option("--alpha", rank.alpha, "IAMB significance level");
  rank_cmd->add_flag("--forward", rank.forward, "Forward selection instead of backward elimination");
  rank_cmd->add_option("--stop-at", rank.stop_at, "Forward selection: stop after this many variables");
  rank_cmd->add_flag("--iamb", rank.use_iamb, "Run IAMB (Fisher z) and output a subset");
  rank_cmd->add_option("--out", rank.out, "Write the ranking file here");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic Markov-blanket dataset and truth file");
  synth_cmd->add_option("--n", synth.cfg.n_samples, "Samples");
  synth_cmd->add_option("--noise", synth.cfg.noise_sd, "Noise standard deviation");
  synth_cmd->add_option("--extraneous", synth.cfg.n_extraneous, "Extraneous variables");
  synth_cmd->add_option("--edges", synth.cfg.extra_edges, "Extra edges");
  synth_cmd->add_option("--weight", synth.cfg.mb_weight, "Blanket edge weight");
  synth_cmd->add_option("--seed", synth.cfg.seed, "RNG seed");
  synth_cmd->add_option("--spouses", synth.spouses, "Spouses per child")->check(CLI::IsMember({"one", "both"}));
  synth_cmd->add_option("--edge-mode", synth.edge_mode, "Extra edges rewire the blanket or preserve it")
      ->check(CLI::IsMember({"rewire", "preserve"}));
  synth_cmd->add_option("--out", synth.out, "Dataset CSV path")->required();
  synth_cmd->add_option("--truth", synth.truth, "Truth file path (default: CSV path with .truth)");

  std::string config_path;
  std::map<std::string, std::string> bench_values;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded benchmark sweep");
  bench_cmd->add_option("--config", config_path, "key=value config file");
  const std::vector<std::pair<std::string, std::string>> bench_keys{
      {"experiment", "samples|noise|edges|extraneous|weights"},
      {"algorithms", "Comma list of proposed-f,proposed-z,bahsic,iamb,forward-f,forward-z"},
      {"grid", "Comma list of grid values"},
      {"trials", "Trials per grid value"},
      {"seed", "Base seed"},
      {"kernel", "linear|gaussian"},
      {"sigma", "Fixed bandwidth or 'median'"},
      {"epsilon", "Ridge regularization"},
      {"beta", "Batch fraction"},
      {"alpha", "IAMB significance level"},
      {"samples", "Sample size held by non-sample sweeps"},
      {"noise", "Base noise sd"},
      {"extraneous", "Base extraneous count"},
      {"edges", "Base extra edges"},
      {"weight", "Base blanket weight"},
      {"spouses", "one|both"},
      {"edge-mode", "rewire|preserve"},
      {"threads", "Worker threads (0 = all cores)"},
      {"out", "Records file (aggregate goes next to it)"}};
  for (const auto& [key, help] : bench_keys) bench_cmd->add_option("--" + key, bench_values[key], help);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score a ranking or subset file against a truth file");
  score_cmd->add_option("--truth", score.truth, "Truth file")->required();
  score_cmd->add_option("--ranking", score.ranking, "Ranking or subset file")->required();
  score_cmd->add_option("--data", score.data, "Dataset CSV whose header the names must match");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!simd.empty()) {
      simd::Isa isa;
      if (!simd::parse_isa(simd, isa) || !simd::set_active(isa))
        throw Error(Errc::InvalidConfig, "SIMD variant '" + simd + "' is not available");
    }
    if (*rank_cmd) return cmd_rank(rank, out);
    if (*synth_cmd) return cmd_synth(synth, out);
    if (*score_cmd) return cmd_score(score, out);
    if (*bench_cmd) {
      io::KeyValues overrides;
      for (const auto& [key, help] : bench_keys)
        if (bench_cmd->get_option("--" + key)->count() > 0) overrides[key] = bench_values[key];
      return cmd_bench(config_path, overrides, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace mbrank
