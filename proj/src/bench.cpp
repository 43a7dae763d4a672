#include "mbrank/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "mbrank/elimination.hpp"
#include "mbrank/error.hpp"
#include "mbrank/evaluation.hpp"
#include "mbrank/iamb.hpp"

namespace mbrank {
namespace {

constexpr const char* kRecordKeys[] = {"experiment", "algorithm", "grid_value", "trial", "seed",
                                       "metric",     "value",     "wall_time_ms", "status"};

std::size_t parse_count(const std::string& key, const std::string& text) {
  const double v = io::parse_double(text);
  if (!(v >= 0.0) || v != std::floor(v)) throw Error(Errc::InvalidConfig, key + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::InvalidConfig, key + " must be an unsigned integer");
  return v;
}

std::vector<ResultRecord> run_one(const ExperimentConfig& cfg, Algorithm algo, const SynthDataset& ds,
                                  ResultRecord proto) {
  proto.algorithm = std::string(algorithm_name(algo));
  const auto& truth = ds.truth;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  std::vector<ResultRecord> out;
  try {
    if (algo == Algorithm::Iamb) {
      const SubsetResult subset = iamb(ds.data, truth.target, cfg.alpha);
      const double wall = elapsed_ms();
      ResultRecord r = proto;
      r.metric = "accuracy";
      r.value = accuracy(subset, truth);
      r.wall_time_ms = wall;
      out.push_back(r);
      return out;
    }

    EliminationResult result;
    switch (algo) {
      case Algorithm::ProposedF:
        result = backward_eliminate(ds.data, truth.target, MeasureKind::M1, cfg.kernel, cfg.beta);
        break;
      case Algorithm::ProposedZ:
        result = backward_eliminate(ds.data, truth.target, MeasureKind::M2, cfg.kernel, cfg.beta);
        break;
      case Algorithm::Bahsic:
        result = bahsic_eliminate(ds.data, truth.target, cfg.kernel);
        break;
      case Algorithm::ForwardF:
        result = forward_select(ds.data, truth.target, MeasureKind::M1, cfg.kernel);
        break;
      case Algorithm::ForwardZ:
        result = forward_select(ds.data, truth.target, MeasureKind::M2, cfg.kernel);
        break;
      case Algorithm::Iamb:
        break;
    }
    const double wall = elapsed_ms();
    const auto ranking = normalize_ranks(ascending_order(result), truth);
    ResultRecord rank = proto;
    rank.metric = "mean_mb_rank";
    rank.value = ranking.mean_mb_rank;
    rank.wall_time_ms = wall;
    ResultRecord acc = proto;
    acc.metric = "accuracy";
    acc.value = accuracy(clip_ranking(result, truth.mb.size()), truth);
    acc.wall_time_ms = wall;
    out.push_back(acc);
    out.push_back(rank);
  } catch (const std::exception& e) {
    out.clear();
    ResultRecord r = proto;
    r.metric = "error";
    r.value = std::nan("");
    r.wall_time_ms = elapsed_ms();
    r.ok = false;
    r.message = e.what();
    std::replace(r.message.begin(), r.message.end(), '\n', ' ');
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ProposedF: return "proposed-f";
    case Algorithm::ProposedZ: return "proposed-z";
    case Algorithm::Bahsic: return "bahsic";
    case Algorithm::Iamb: return "iamb";
    case Algorithm::ForwardF: return "forward-f";
    case Algorithm::ForwardZ: return "forward-z";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::ProposedF, Algorithm::ProposedZ, Algorithm::Bahsic, Algorithm::Iamb,
                      Algorithm::ForwardF, Algorithm::ForwardZ}) {
    if (algorithm_name(a) == name) return a;
  }
  throw Error(Errc::InvalidConfig, "unknown algorithm '" + std::string(name) + "'");
}

bool is_ranking(Algorithm a) { return a != Algorithm::Iamb; }

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw Error(Errc::InvalidConfig, "no algorithms selected");
  if (grid.empty()) throw Error(Errc::InvalidConfig, "grid is empty");
  if (trials < 1) throw Error(Errc::InvalidConfig, "trials must be at least 1");
  if (!(beta >= 0.0 && beta < 1.0)) throw Error(Errc::InvalidConfig, "beta must lie in [0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must lie in (0, 1)");
  kernel.validate();
  for (double g : grid) sweep_config(experiment, g, base, held_samples).validate();
}

ExperimentConfig config_from_key_values(const io::KeyValues& kv) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "experiment") {
      cfg.experiment = parse_experiment(value);
    } else if (key == "algorithms") {
      for (const auto& name : io::split(value, ',')) cfg.algorithms.push_back(parse_algorithm(name));
    } else if (key == "grid") {
      for (const auto& g : io::split(value, ',')) cfg.grid.push_back(io::parse_double(g));
    } else if (key == "trials") {
      cfg.trials = parse_count(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "kernel") {
      if (value == "linear") {
        cfg.kernel.family = KernelFamily::Linear;
      } else if (value == "gaussian") {
        cfg.kernel.family = KernelFamily::Gaussian;
      } else {
        throw Error(Errc::InvalidConfig, "kernel must be linear or gaussian");
      }
    } else if (key == "sigma") {
      if (value != "median") cfg.kernel.sigma = io::parse_double(value);
    } else if (key == "epsilon") {
      cfg.kernel.epsilon = io::parse_double(value);
    } else if (key == "beta") {
      cfg.beta = io::parse_double(value);
    } else if (key == "alpha") {
      cfg.alpha = io::parse_double(value);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "samples") {
      cfg.base.n_samples = parse_count(key, value);
      cfg.held_samples = cfg.base.n_samples;
    } else if (key == "noise") {
      cfg.base.noise_sd = io::parse_double(value);
    } else if (key == "extraneous") {
      cfg.base.n_extraneous = parse_count(key, value);
    } else if (key == "edges") {
      cfg.base.extra_edges = parse_count(key, value);
    } else if (key == "weight") {
      cfg.base.mb_weight = io::parse_double(value);
    } else if (key == "spouses") {
      if (value == "one") {
        cfg.base.spouses_per_child = SpousesPerChild::One;
      } else if (value == "both") {
        cfg.base.spouses_per_child = SpousesPerChild::Both;
      } else {
        throw Error(Errc::InvalidConfig, "spouses must be one or both");
      }
    } else if (key == "edge-mode") {
      if (value == "rewire") {
        cfg.base.edge_mode = EdgeMode::Rewire;
      } else if (value == "preserve") {
        cfg.base.edge_mode = EdgeMode::Preserve;
      } else {
        throw Error(Errc::InvalidConfig, "edge-mode must be rewire or preserve");
      }
    } else if (key == "threads") {
      cfg.threads = parse_count(key, value);
    } else {
      throw Error(Errc::InvalidConfig, "unknown config key '" + key + "'");
    }
  }
  cfg.base.seed = cfg.seed;
  return cfg;
}

std::string format_record(const ResultRecord& r) {
  std::ostringstream s;
  s << "experiment=" << r.experiment << " algorithm=" << r.algorithm
    << " grid_value=" << io::format_double(r.grid_value) << " trial=" << r.trial << " seed=" << r.seed
    << " metric=" << r.metric << " value=" << io::format_double(r.value)
    << " wall_time_ms=" << io::format_double(r.wall_time_ms) << " status=" << (r.ok ? "ok" : "error");
  if (!r.message.empty()) s << " message=" << r.message;
  return s.str();
}

ResultRecord parse_record(std::string_view line) {
  ResultRecord r;
  std::string_view rest = line;
  if (auto pos = rest.find(" message="); pos != std::string_view::npos) {
    r.message = std::string(rest.substr(pos + 9));
    rest = rest.substr(0, pos);
  }
  std::map<std::string, std::string> kv;
  for (const auto& token : io::split(rest, ' ')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(Errc::Parse, "record token without '=': " + token);
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : kRecordKeys)
    if (!kv.contains(key)) throw Error(Errc::Parse, std::string("record missing key ") + key);
  r.experiment = kv["experiment"];
  r.algorithm = kv["algorithm"];
  r.grid_value = io::parse_double(kv["grid_value"]);
  r.trial = static_cast<std::size_t>(io::parse_double(kv["trial"]));
  try {
    r.seed = parse_u64("seed", kv["seed"]);
  } catch (const Error&) {
    throw Error(Errc::Parse, "bad seed in record");
  }
  r.metric = kv["metric"];
  r.value = io::parse_double(kv["value"]);
  r.wall_time_ms = io::parse_double(kv["wall_time_ms"]);
  r.ok = kv["status"] == "ok";
  return r;
}

BenchOutcome run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t grid_index;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < cfg.grid.size(); ++g)
    for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({g, t});

  std::vector<ResultRecord> records;
  std::mutex sink;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task task = tasks[i];
      SynthConfig sc = sweep_config(cfg.experiment, cfg.grid[task.grid_index], cfg.base, cfg.held_samples);
      sc.seed = trial_seed(cfg.seed, task.grid_index, task.trial);

      ResultRecord proto;
      proto.experiment = std::string(experiment_name(cfg.experiment));
      proto.grid_value = cfg.grid[task.grid_index];
      proto.trial = task.trial;
      proto.seed = sc.seed;

      std::vector<ResultRecord> local;
      try {
        const SynthDataset ds = gen_mb_dataset(sc);
        for (Algorithm a : cfg.algorithms) {
          auto rows = run_one(cfg, a, ds, proto);
          local.insert(local.end(), rows.begin(), rows.end());
        }
      } catch (const std::exception& e) {
        for (Algorithm a : cfg.algorithms) {
          ResultRecord r = proto;
          r.algorithm = std::string(algorithm_name(a));
          r.metric = "error";
          r.value = std::nan("");
          r.ok = false;
          r.message = e.what();
          local.push_back(r);
        }
      }
      std::lock_guard lock(sink);
      records.insert(records.end(), local.begin(), local.end());
    }
  };

  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return std::tie(a.grid_value, a.algorithm, a.trial, a.metric) <
           std::tie(b.grid_value, b.algorithm, b.trial, b.metric);
  });

  BenchOutcome outcome;
  outcome.records = std::move(records);
  outcome.error_rows = static_cast<std::size_t>(
      std::count_if(outcome.records.begin(), outcome.records.end(), [](const auto& r) { return !r.ok; }));
  outcome.aggregate = aggregate_records(outcome.records);
  return outcome;
}

std::vector<AggregateRow> aggregate_records(const std::vector<ResultRecord>& records) {
  std::map<std::tuple<double, std::string, std::string>, std::vector<double>> groups;
  for (const auto& r : records)
    if (r.ok) groups[{r.grid_value, r.algorithm, r.metric}].push_back(r.value);

  std::vector<AggregateRow> rows;
  for (const auto& [key, scores] : groups) {
    AggregateRow row;
    std::tie(row.grid_value, row.algorithm, row.metric) = key;
    row.count = scores.size();
    if (scores.size() >= 2) {
      const auto s = aggregate(scores);
      row.mean = s.mean;
      row.ci95 = s.ci95_half_width;
    } else {
      row.mean = scores.front();
      row.ci95 = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

void write_records(const std::filesystem::path& path, const std::vector<ResultRecord>& records) {
  std::string text;
  for (const auto& r : records) text += format_record(r) + "\n";
  io::write_text(path, text);
}

void write_aggregate(const std::filesystem::path& path, const std::vector<AggregateRow>& rows) {
  std::string text = "grid_value,algorithm,metric,mean,ci95\n";
  for (const auto& r : rows)
    text += io::format_double(r.grid_value) + "," + r.algorithm + "," + r.metric + "," +
            io::format_double(r.mean) + "," + io::format_double(r.ci95) + "\n";
  io::write_text(path, text);
}

std::filesystem::path aggregate_path(const std::filesystem::path& records_path) {
  std::filesystem::path p = records_path;
  p.replace_extension(".aggregate.csv");
  return p;
}

}  // namespace mbrank
