#pragma once

// Synthetic Markov-blanket datasets.
//
// Column layout: P1 P2 S1 S2 C1 C2 Y E1..Ek
//   P, S, E ~ N(0, 1)
//   Y   = w (P1 + P2) + N(0, noise_sd^2)
//   C_i = w (S_i + Y) + N(0, noise_sd^2)     (SpousesPerChild::One)
//   C_i = w (S1 + S2 + Y) + N(0, noise_sd^2) (SpousesPerChild::Both)
// Without extra edges the blanket of Y is {P1, P2, S1, S2, C1, C2}.
//
// Extra edges add 1.0 * u into v for distinct ordered pairs (u, v) drawn
// uniformly from the admissible pairs (structural edges excluded):
//
//   EdgeMode::Rewire    u before v in P1 P2 S1 S2 Y C1 C2 E1..Ek. Edges may
//                       touch Y and its blanket, so the blanket is recomputed
//                       from the final DAG (parents, children, co-parents)
//                       and grows with the edge count.
//   EdgeMode::Preserve  u before v in P1 P2 S1 S2 C1 C2 E1..Ek (Y excluded).
//                       Edges into a child only come from blanket members and
//                       extraneous columns only become descendants, so the
//                       blanket stays {P1, P2, S1, S2, C1, C2}.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "mbrank/data_matrix.hpp"

namespace mbrank {

enum class SpousesPerChild { One, Both };
enum class EdgeMode { Rewire, Preserve };

struct SynthConfig {
  std::size_t n_samples = 500;
  double noise_sd = 1.0;
  std::size_t n_extraneous = 10;
  std::size_t extra_edges = 0;
  double mb_weight = 1.0;
  std::uint64_t seed = 0;
  SpousesPerChild spouses_per_child = SpousesPerChild::One;
  EdgeMode edge_mode = EdgeMode::Rewire;

  /// Throws Errc::InvalidConfig.
  void validate() const;
};

enum class Role { Parent, Child, Spouse, Extraneous };

std::string_view role_name(Role role);

struct MarkovBlanketTruth {
  std::size_t target = 0;
  std::vector<std::size_t> mb;  // sorted ascending
  std::map<std::size_t, Role> roles;
};

struct SynthDataset {
  DataMatrix data;
  MarkovBlanketTruth truth;
};

inline constexpr std::size_t kSynthTarget = 6;

SynthDataset gen_mb_dataset(const SynthConfig& cfg);

enum class Experiment { Samples, Noise, Edges, Extraneous, Weights };

/// Throws Errc::BadExperiment on an unknown tag.
Experiment parse_experiment(std::string_view tag);
std::string_view experiment_name(Experiment e);

/// Sample size held fixed by every sweep except the samples sweep.
inline constexpr std::size_t kHeldSampleSize = 70;

/// Configuration for one grid point. `held_samples` overrides n for every
/// experiment except Samples.
SynthConfig sweep_config(Experiment e, double grid_value, const SynthConfig& base,
                         std::optional<std::size_t> held_samples = kHeldSampleSize);

/// Deterministic per-(grid point, trial) seed mixed from the base seed.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t grid_index, std::size_t trial);

struct SweepPoint {
  double value = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<SynthDataset> datasets;
};

/// Materializes every dataset of a sweep. Throws Errc::InvalidConfig on an
/// empty grid or zero trials.
std::vector<SweepPoint> sweep(Experiment e, const std::vector<double>& grid,
                              const SynthConfig& base, std::size_t trials,
                              std::optional<std::size_t> held_samples = kHeldSampleSize);

}  // namespace mbrank
