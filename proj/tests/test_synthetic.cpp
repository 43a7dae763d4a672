#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mbrank/error.hpp"
#include "mbrank/synthetic.hpp"
#include "oracles.hpp"

using namespace mbrank;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mbrank::Error");
  return Errc::Io;
}

constexpr std::size_t P1 = 0, P2 = 1, S1 = 2, S2 = 3, C1 = 4, C2 = 5, Y = 6;

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sd(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double corr(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a), mb = mean(b);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += (a[i] - ma) * (b[i] - mb);
    aa += (a[i] - ma) * (a[i] - ma);
    bb += (b[i] - mb) * (b[i] - mb);
  }
  return ab / std::sqrt(aa * bb);
}

// Partial correlation of columns i and j given every other column, from the
// inverse of the full correlation matrix.
double full_partial(const DataMatrix& d, std::size_t i, std::size_t j) {
  const std::size_t p = d.cols();
  oracle::Mat r(p * p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) r[a * p + b] = corr(d.column(a), d.column(b));
  const oracle::Mat prec = oracle::inverse(r, p);
  return -prec[i * p + j] / std::sqrt(prec[i * p + i] * prec[j * p + j]);
}

}  // namespace

TEST_CASE("base configuration shape and truth") {
  SynthConfig cfg;
  const auto ds = gen_mb_dataset(cfg);
  CHECK(ds.data.cols() == 17);
  CHECK(ds.data.rows() == 500);
  CHECK(ds.data.names()[Y] == "Y");
  CHECK(ds.data.names()[7] == "E1");
  CHECK(ds.data.names()[16] == "E10");
  CHECK(ds.truth.target == kSynthTarget);
  CHECK(ds.truth.mb == std::vector<std::size_t>{P1, P2, S1, S2, C1, C2});
  CHECK(ds.truth.roles.at(P1) == Role::Parent);
  CHECK(ds.truth.roles.at(S2) == Role::Spouse);
  CHECK(ds.truth.roles.at(C1) == Role::Child);
  CHECK(ds.truth.roles.at(12) == Role::Extraneous);
  CHECK_FALSE(ds.truth.roles.contains(Y));

  cfg.n_extraneous = 3;
  cfg.n_samples = 40;
  const auto small = gen_mb_dataset(cfg);
  CHECK(small.data.cols() == 10);
  CHECK(small.data.rows() == 40);
}

TEST_CASE("zero noise gives exact structural identities") {
  SynthConfig cfg;
  cfg.noise_sd = 0.0;
  for (double w : {1.0, 0.3}) {
    cfg.mb_weight = w;
    const auto ds = gen_mb_dataset(cfg);
    const auto& d = ds.data;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      CHECK(d.at(i, Y) - w * (d.at(i, P1) + d.at(i, P2)) == 0.0);
      CHECK(d.at(i, C1) - w * (d.at(i, S1) + d.at(i, Y)) == 0.0);
      CHECK(d.at(i, C2) - w * (d.at(i, S2) + d.at(i, Y)) == 0.0);
    }
  }
  cfg.mb_weight = 1.0;
  cfg.spouses_per_child = SpousesPerChild::Both;
  const auto both = gen_mb_dataset(cfg);
  for (std::size_t i = 0; i < both.data.rows(); ++i)
    CHECK(both.data.at(i, C2) - (both.data.at(i, S1) + both.data.at(i, S2) + both.data.at(i, Y)) == 0.0);
  CHECK(both.truth.mb == std::vector<std::size_t>{P1, P2, S1, S2, C1, C2});
}

TEST_CASE("root moments and extraneous independence") {
  std::size_t independent = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    const auto ds = gen_mb_dataset(cfg);
    const double tol = 4.0 / std::sqrt(500.0);
    for (std::size_t j : {P1, P2, S1, S2}) {
      CHECK(std::abs(mean(ds.data.column(j))) < tol);
      CHECK(sd(ds.data.column(j)) == doctest::Approx(1.0).epsilon(0.2));
    }
    bool all = true;
    for (std::size_t j = 7; j < 17; ++j) {
      CHECK(std::abs(mean(ds.data.column(j))) < tol);
      CHECK(sd(ds.data.column(j)) == doctest::Approx(1.0).epsilon(0.2));
      all = all && std::abs(corr(ds.data.column(j), ds.data.column(Y))) < tol;
    }
    independent += all;
  }
  CHECK(independent >= 18);
}

TEST_CASE("spouses are marginally independent of Y but dependent given the child") {
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthConfig cfg;
    cfg.n_samples = 5000;
    cfg.seed = 1000 + seed;
    const auto ds = gen_mb_dataset(cfg);
    const double sy = corr(ds.data.column(S1), ds.data.column(Y));
    const double sc = corr(ds.data.column(S1), ds.data.column(C1));
    const double yc = corr(ds.data.column(Y), ds.data.column(C1));
    const double partial = (sy - sc * yc) / std::sqrt((1 - sc * sc) * (1 - yc * yc));
    hits += std::abs(sy) < 0.1 && std::abs(partial) > 0.2;
  }
  CHECK(hits >= 18);
}

TEST_CASE("generation is deterministic per seed") {
  SynthConfig cfg;
  cfg.seed = 77;
  cfg.extra_edges = 25;
  const auto a = gen_mb_dataset(cfg);
  const auto b = gen_mb_dataset(cfg);
  CHECK(a.data == b.data);
  CHECK(a.truth.mb == b.truth.mb);
  cfg.seed = 78;
  CHECK_FALSE(gen_mb_dataset(cfg).data == a.data);
}

TEST_CASE("preserved extra edges keep the blanket") {
  SynthConfig cfg;
  cfg.edge_mode = EdgeMode::Preserve;
  cfg.extra_edges = 118;
  const auto ds = gen_mb_dataset(cfg);
  CHECK(ds.truth.mb == std::vector<std::size_t>{P1, P2, S1, S2, C1, C2});
  // Y's own equation never changes.
  cfg.noise_sd = 0.0;
  const auto exact = gen_mb_dataset(cfg);
  for (std::size_t i = 0; i < exact.data.rows(); ++i)
    CHECK(exact.data.at(i, Y) == exact.data.at(i, P1) + exact.data.at(i, P2));
  cfg.extra_edges = 119;
  CHECK(code_of([&] { gen_mb_dataset(cfg); }) == Errc::InvalidConfig);
}

TEST_CASE("rewired extra edges grow the blanket and it stays a blanket") {
  SynthConfig cfg;
  cfg.extra_edges = 130;
  const auto full = gen_mb_dataset(cfg);
  CHECK(full.truth.mb.size() == 16);
  cfg.extra_edges = 131;
  CHECK(code_of([&] { gen_mb_dataset(cfg); }) == Errc::InvalidConfig);

  std::size_t grown = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    cfg.extra_edges = 20;
    cfg.n_samples = 20000;
    const auto ds = gen_mb_dataset(cfg);
    for (std::size_t v : {P1, P2, S1, S2, C1, C2})
      CHECK(std::find(ds.truth.mb.begin(), ds.truth.mb.end(), v) != ds.truth.mb.end());
    grown += ds.truth.mb.size() > 6;
    for (const auto& [v, role] : ds.truth.roles) {
      const bool member = std::find(ds.truth.mb.begin(), ds.truth.mb.end(), v) != ds.truth.mb.end();
      CHECK(member == (role != Role::Extraneous));
      // Outside the blanket Y is independent of v given everything else.
      if (!member) CHECK(std::abs(full_partial(ds.data, Y, v)) < 4.0 / std::sqrt(20000.0));
    }
  }
  CHECK(grown >= 5);
}

TEST_CASE("sweeps") {
  SynthConfig base;
  base.seed = 5;
  std::vector<double> grid;
  for (int n = 50; n <= 500; n += 50) grid.push_back(n);
  const auto pts = sweep(Experiment::Samples, grid, base, 30);
  REQUIRE(pts.size() == 10);
  std::set<std::uint64_t> seeds;
  for (std::size_t g = 0; g < pts.size(); ++g) {
    CHECK(pts[g].datasets.size() == 30);
    CHECK(pts[g].datasets.front().data.rows() == static_cast<std::size_t>(grid[g]));
    seeds.insert(pts[g].seeds.begin(), pts[g].seeds.end());
  }
  CHECK(seeds.size() == 300);

  for (const auto& p : sweep(Experiment::Noise, {0.0, 2.5, 5.0}, base, 4))
    for (const auto& ds : p.datasets) CHECK(ds.data.rows() == 70);

  CHECK(sweep_config(Experiment::Edges, 40, base).extra_edges == 40);
  CHECK(sweep_config(Experiment::Extraneous, 128, base).n_extraneous == 128);
  CHECK(sweep_config(Experiment::Weights, 0.1, base).mb_weight == 0.1);
  CHECK(sweep_config(Experiment::Weights, 0.1, base, std::nullopt).n_samples == 500);
  CHECK(sweep_config(Experiment::Samples, 120, base).n_samples == 120);

  const auto again = sweep(Experiment::Samples, {50}, base, 2);
  CHECK(again[0].datasets[1].data == pts[0].datasets[1].data);

  CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
  CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
}

TEST_CASE("experiment tags and config errors") {
  CHECK(parse_experiment("samples") == Experiment::Samples);
  CHECK(parse_experiment("edges") == Experiment::Edges);
  CHECK(experiment_name(Experiment::Weights) == "weights");
  CHECK(code_of([] { parse_experiment("volume"); }) == Errc::BadExperiment);
  CHECK(code_of([] { sweep(Experiment::Samples, {}, {}, 1); }) == Errc::InvalidConfig);
  CHECK(code_of([] { sweep(Experiment::Samples, {50}, {}, 0); }) == Errc::InvalidConfig);
  CHECK(code_of([] { sweep_config(Experiment::Edges, 2.5, {}); }) == Errc::InvalidConfig);
  SynthConfig bad;
  bad.n_samples = 1;
  CHECK(code_of([&] { gen_mb_dataset(bad); }) == Errc::InvalidConfig);
  bad = {};
  bad.noise_sd = -1.0;
  CHECK(code_of([&] { gen_mb_dataset(bad); }) == Errc::InvalidConfig);
}
