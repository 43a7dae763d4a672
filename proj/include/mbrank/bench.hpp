#pragma once

// Seeded benchmark sweeps: synthetic data per (grid value, trial), each
// algorithm run on it and scored against the known blanket.
//
// Results file: one record per line, space separated key=value pairs in a
// fixed key order:
//
//   experiment=<tag> algorithm=<name> grid_value=<x> trial=<i> seed=<u64>
//   metric=<mean_mb_rank|accuracy|error> value=<x> wall_time_ms=<x>
//   status=<ok|error> [message=<free text to end of line>]
//
// Aggregate table: CSV with header grid_value,algorithm,metric,mean,ci95.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbrank/io.hpp"
#include "mbrank/kernel.hpp"
#include "mbrank/synthetic.hpp"

namespace mbrank {

enum class Algorithm { ProposedF, ProposedZ, Bahsic, Iamb, ForwardF, ForwardZ };

std::string_view algorithm_name(Algorithm a);
/// Throws Errc::InvalidConfig.
Algorithm parse_algorithm(std::string_view name);
bool is_ranking(Algorithm a);

struct ExperimentConfig {
  Experiment experiment = Experiment::Samples;
  std::vector<Algorithm> algorithms;
  KernelSpec kernel;
  double beta = 0.0;
  double alpha = 0.05;
  std::vector<double> grid;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SynthConfig base;
  std::optional<std::size_t> held_samples = kHeldSampleSize;
  std::filesystem::path out;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Throws Errc::InvalidConfig.
  void validate() const;
};

/// Keys: experiment, algorithms, grid, trials, seed, kernel, sigma, epsilon,
/// beta, alpha, out, samples, noise, extraneous, edges, weight, spouses,
/// edge-mode, threads. Unknown keys are rejected.
ExperimentConfig config_from_key_values(const io::KeyValues& kv);

struct ResultRecord {
  std::string experiment;
  std::string algorithm;
  double grid_value = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  double wall_time_ms = 0.0;
  bool ok = true;
  std::string message;
};

std::string format_record(const ResultRecord& r);
/// Throws Errc::Parse.
ResultRecord parse_record(std::string_view line);

struct AggregateRow {
  double grid_value = 0.0;
  std::string algorithm;
  std::string metric;
  double mean = 0.0;
  double ci95 = 0.0;  // NaN with a single trial
  std::size_t count = 0;
};

struct BenchOutcome {
  std::vector<ResultRecord> records;  // sorted by grid value, algorithm, trial, metric
  std::vector<AggregateRow> aggregate;
  std::size_t error_rows = 0;
};

/// A failing (trial, algorithm) pair becomes an error row; the sweep goes on.
BenchOutcome run_benchmark(const ExperimentConfig& cfg);

std::vector<AggregateRow> aggregate_records(const std::vector<ResultRecord>& records);

void write_records(const std::filesystem::path& path, const std::vector<ResultRecord>& records);
void write_aggregate(const std::filesystem::path& path, const std::vector<AggregateRow>& rows);
std::filesystem::path aggregate_path(const std::filesystem::path& records_path);

}  // namespace mbrank
