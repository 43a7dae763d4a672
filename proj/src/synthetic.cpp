#include "mbrank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "mbrank/error.hpp"

namespace mbrank {
namespace {

constexpr std::size_t P1 = 0, P2 = 1, S1 = 2, S2 = 3, C1 = 4, C2 = 5, Y = 6;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void SynthConfig::validate() const {
  if (n_samples < 2) throw Error(Errc::InvalidConfig, "n_samples must be at least 2");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
    throw Error(Errc::InvalidConfig, "noise_sd must be finite and nonnegative");
  if (!std::isfinite(mb_weight)) throw Error(Errc::InvalidConfig, "mb_weight must be finite");
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Parent: return "parent";
    case Role::Child: return "child";
    case Role::Spouse: return "spouse";
    case Role::Extraneous: return "extraneous";
  }
  return "?";
}

SynthDataset gen_mb_dataset(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_samples;
  const std::size_t d = 7 + cfg.n_extraneous;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  // Structural parents of every node.
  std::vector<std::vector<std::size_t>> parents(d);
  parents[Y] = {P1, P2};
  for (std::size_t c : {C1, C2}) {
    if (cfg.spouses_per_child == SpousesPerChild::Both)
      parents[c] = {S1, S2, Y};
    else
      parents[c] = {c == C1 ? S1 : S2, Y};
  }

  std::vector<std::size_t> topo{P1, P2, S1, S2};
  if (cfg.edge_mode == EdgeMode::Rewire) topo.push_back(Y);
  topo.insert(topo.end(), {C1, C2});
  for (std::size_t j = 7; j < d; ++j) topo.push_back(j);

  std::vector<std::vector<std::size_t>> extra_parents(d);
  if (cfg.extra_edges > 0) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < topo.size(); ++a) {
      for (std::size_t b = a + 1; b < topo.size(); ++b) {
        const auto& pb = parents[topo[b]];
        if (std::find(pb.begin(), pb.end(), topo[a]) == pb.end()) pairs.emplace_back(topo[a], topo[b]);
      }
    }
    if (cfg.extra_edges > pairs.size())
      throw Error(Errc::InvalidConfig, "extra_edges exceeds the " + std::to_string(pairs.size()) +
                                           " admissible pairs");
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(cfg.extra_edges);
    std::sort(pairs.begin(), pairs.end());
    for (auto [u, v] : pairs) extra_parents[v].push_back(u);
  }

  std::vector<std::vector<double>> cols(d, std::vector<double>(n, 0.0));
  auto draw = [&](std::vector<double>& col, double sd) {
    if (sd == 0.0) return;
    for (double& v : col) v += sd * unit(rng);
  };
  auto add_extra = [&](std::size_t v) {
    for (std::size_t u : extra_parents[v])
      for (std::size_t i = 0; i < n; ++i) cols[v][i] += cols[u][i];
  };

  // Generation order P S Y C E is topological in both edge modes.
  const double w = cfg.mb_weight;
  for (std::size_t v : {P1, P2, S1, S2}) {
    draw(cols[v], 1.0);
    add_extra(v);
  }
  for (std::size_t i = 0; i < n; ++i) cols[Y][i] = w * (cols[P1][i] + cols[P2][i]);
  draw(cols[Y], cfg.noise_sd);
  add_extra(Y);
  for (std::size_t c : {C1, C2}) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t p : parents[c]) sum += cols[p][i];
      cols[c][i] = w * sum;
    }
    draw(cols[c], cfg.noise_sd);
    add_extra(c);
  }
  for (std::size_t j = 7; j < d; ++j) {
    draw(cols[j], 1.0);
    add_extra(j);
  }

  std::vector<std::string> names{"P1", "P2", "S1", "S2", "C1", "C2", "Y"};
  for (std::size_t k = 1; k <= cfg.n_extraneous; ++k) names.push_back("E" + std::to_string(k));

  // Blanket from the final DAG. A node with several roles keeps the first of
  // parent, child, spouse.
  for (std::size_t v = 0; v < d; ++v) parents[v].insert(parents[v].end(), extra_parents[v].begin(), extra_parents[v].end());
  MarkovBlanketTruth truth;
  truth.target = Y;
  for (std::size_t j = 0; j < d; ++j)
    if (j != Y) truth.roles[j] = Role::Extraneous;
  for (std::size_t v = 0; v < d; ++v) {
    const auto& pv = parents[v];
    if (std::find(pv.begin(), pv.end(), Y) == pv.end()) continue;
    for (std::size_t u : pv)
      if (u != Y && truth.roles[u] == Role::Extraneous) truth.roles[u] = Role::Spouse;
  }
  for (std::size_t v = 0; v < d; ++v) {
    const auto& pv = parents[v];
    if (std::find(pv.begin(), pv.end(), Y) != pv.end()) truth.roles[v] = Role::Child;
  }
  for (std::size_t u : parents[Y]) truth.roles[u] = Role::Parent;
  for (const auto& [v, role] : truth.roles)
    if (role != Role::Extraneous) truth.mb.push_back(v);

  return {DataMatrix(std::move(cols), std::move(names)), std::move(truth)};
}

Experiment parse_experiment(std::string_view tag) {
  if (tag == "samples") return Experiment::Samples;
  if (tag == "noise") return Experiment::Noise;
  if (tag == "edges") return Experiment::Edges;
  if (tag == "extraneous") return Experiment::Extraneous;
  if (tag == "weights") return Experiment::Weights;
  throw Error(Errc::BadExperiment, "unknown experiment '" + std::string(tag) + "'");
}

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Samples: return "samples";
    case Experiment::Noise: return "noise";
    case Experiment::Edges: return "edges";
    case Experiment::Extraneous: return "extraneous";
    case Experiment::Weights: return "weights";
  }
  return "?";
}

SynthConfig sweep_config(Experiment e, double grid_value, const SynthConfig& base,
                         std::optional<std::size_t> held_samples) {
  SynthConfig cfg = base;
  auto as_count = [&](const char* what) {
    if (!(grid_value >= 0.0) || grid_value != std::floor(grid_value))
      throw Error(Errc::InvalidConfig, std::string(what) + " grid values must be nonnegative integers");
    return static_cast<std::size_t>(grid_value);
  };
  if (e != Experiment::Samples && held_samples) cfg.n_samples = *held_samples;
  switch (e) {
    case Experiment::Samples: cfg.n_samples = as_count("samples"); break;
    case Experiment::Noise: cfg.noise_sd = grid_value; break;
    case Experiment::Edges: cfg.extra_edges = as_count("edges"); break;
    case Experiment::Extraneous: cfg.n_extraneous = as_count("extraneous"); break;
    case Experiment::Weights: cfg.mb_weight = grid_value; break;
  }
  return cfg;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t grid_index, std::size_t trial) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(grid_index) * 0x100000001B3ULL));
  return splitmix64(h ^ (static_cast<std::uint64_t>(trial) + 0x632BE59BD9B4E019ULL));
}

std::vector<SweepPoint> sweep(Experiment e, const std::vector<double>& grid,
                              const SynthConfig& base, std::size_t trials,
                              std::optional<std::size_t> held_samples) {
  if (grid.empty()) throw Error(Errc::InvalidConfig, "sweep grid is empty");
  if (trials == 0) throw Error(Errc::InvalidConfig, "sweep needs at least one trial");
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    SweepPoint point;
    point.value = grid[g];
    SynthConfig cfg = sweep_config(e, grid[g], base, held_samples);
    for (std::size_t t = 0; t < trials; ++t) {
      cfg.seed = trial_seed(base.seed, g, t);
      point.seeds.push_back(cfg.seed);
      point.datasets.push_back(gen_mb_dataset(cfg));
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace mbrank
