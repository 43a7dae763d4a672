#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mbrank/elimination.hpp"
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

DataMatrix two_column(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = x[i] + 0.1 * g(rng);
  }
  return DataMatrix({x, y}, {"X", "Y"});
}

bool is_permutation_of_non_targets(const std::vector<std::size_t>& order, std::size_t d, std::size_t target) {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expect;
  for (std::size_t j = 0; j < d; ++j)
    if (j != target) expect.push_back(j);
  return sorted == expect;
}

}  // namespace

TEST_CASE("a single non-target variable is forced") {
  const DataMatrix data = two_column(1);
  const KernelSpec spec;
  for (MeasureKind kind : {MeasureKind::M1, MeasureKind::M2}) {
    const auto back = backward_eliminate(data, 1, kind, spec);
    CHECK(back.order == std::vector<std::size_t>{0});
    CHECK(back.step_values.size() == 1);
    CHECK(back.direction == Direction::Backward);
    const auto fwd = forward_select(data, 1, kind, spec);
    CHECK(fwd.order == std::vector<std::size_t>{0});
    CHECK(fwd.direction == Direction::Forward);
  }
  CHECK(bahsic_eliminate(data, 1, spec).order == std::vector<std::size_t>{0});
}

TEST_CASE("the noise column is eliminated first") {
  // Y = X1 + noise, X2 independent: holding X2 out costs nothing.
  std::size_t hits_m1 = 0, hits_m2 = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    std::mt19937_64 rng(100 + t);
    std::normal_distribution<double> g;
    std::vector<double> x1(1000), x2(1000), y(1000);
    for (std::size_t i = 0; i < y.size(); ++i) {
      x1[i] = g(rng);
      x2[i] = g(rng);
      y[i] = x1[i] + 0.5 * g(rng);
    }
    const DataMatrix data({x1, x2, y}, {"X1", "X2", "Y"});
    hits_m1 += backward_eliminate(data, 2, MeasureKind::M1, {}).order.front() == 1;
    hits_m2 += backward_eliminate(data, 2, MeasureKind::M2, {}).order.front() == 1;
  }
  CHECK(hits_m1 >= 18);
  CHECK(hits_m2 >= 18);
}

TEST_CASE("forward selection stops early") {
  SynthConfig cfg;
  cfg.n_samples = 120;
  cfg.seed = 3;
  const auto ds = gen_mb_dataset(cfg);
  const auto r = forward_select(ds.data, kSynthTarget, MeasureKind::M1, {}, 3);
  CHECK(r.order.size() == 3);
  CHECK(r.step_values.size() == 3);
  std::vector<std::size_t> sorted = r.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(std::find(r.order.begin(), r.order.end(), kSynthTarget) == r.order.end());
  // The first pick is the single most informative variable.
  CHECK(r.step_values[0] >= r.step_values[1]);
}

TEST_CASE("bahsic keeps a copy of the target until last") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> cols(5, std::vector<double>(80));
  for (std::size_t i = 0; i < 80; ++i) {
    cols[4][i] = g(rng);
    cols[2][i] = cols[4][i];
    for (std::size_t j : {0, 1, 3}) cols[j][i] = g(rng);
  }
  const DataMatrix data(cols, {"A", "B", "Copy", "D", "Y"});
  const auto r = bahsic_eliminate(data, 4, {});
  CHECK(r.order.back() == 2);
  CHECK(is_permutation_of_non_targets(r.order, 5, 4));
}

TEST_CASE("every step is the argmin of an independent scan") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const DataMatrix data = oracle::random_data(30, 6, seed);
    const std::size_t target = seed % 6;
    for (MeasureKind kind : {MeasureKind::M1, MeasureKind::M2}) {
      const KernelSpec spec;
      const auto r = backward_eliminate(data, target, kind, spec);
      REQUIRE(is_permutation_of_non_targets(r.order, 6, target));
      REQUIRE(r.step_values.size() == r.order.size());

      std::vector<std::size_t> remaining;
      for (std::size_t j = 0; j < 6; ++j)
        if (j != target) remaining.push_back(j);
      for (std::size_t step = 0; step < r.order.size(); ++step) {
        std::size_t best = remaining.front();
        double best_value = 0.0;
        bool first = true;
        for (std::size_t v : remaining) {
          std::vector<std::size_t> held;
          for (std::size_t u : remaining)
            if (u != v) held.push_back(u);
          const double value = evaluate(kind, data, target, held, spec);
          if (first || value < best_value) {
            best = v;
            best_value = value;
            first = false;
          }
        }
        CHECK(r.order[step] == best);
        CHECK(oracle::rel_close(r.step_values[step], best_value, 1e-8, 1e-12));
        remaining.erase(std::find(remaining.begin(), remaining.end(), r.order[step]));
      }
    }
  }
}

TEST_CASE("batched elimination still yields a permutation") {
  SynthConfig cfg;
  cfg.n_samples = 100;
  cfg.seed = 9;
  const auto ds = gen_mb_dataset(cfg);
  for (double beta : {0.25, 0.5, 0.9}) {
    const auto r = backward_eliminate(ds.data, kSynthTarget, MeasureKind::M2, {}, beta);
    CHECK(is_permutation_of_non_targets(r.order, ds.data.cols(), kSynthTarget));
    CHECK(r.step_values.size() == r.order.size());
  }
  // beta = 0.5 over 16 variables: 8, 4, 2, 1, 1 removed per round, and each
  // batch is in ascending score order.
  const auto r = backward_eliminate(ds.data, kSynthTarget, MeasureKind::M2, {}, 0.5);
  for (std::size_t s : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 10u, 12u})
    CHECK(r.step_values[s] <= r.step_values[s + 1]);
}

TEST_CASE("elimination is deterministic and order invariant") {
  SynthConfig cfg;
  cfg.n_samples = 80;
  cfg.seed = 21;
  const auto ds = gen_mb_dataset(cfg);
  const auto a = backward_eliminate(ds.data, kSynthTarget, MeasureKind::M1, {});
  const auto b = backward_eliminate(ds.data, kSynthTarget, MeasureKind::M1, {});
  CHECK(a == b);

  std::vector<std::size_t> perm(ds.data.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(4));
  const auto c = backward_eliminate(ds.data.permute_rows(perm), kSynthTarget, MeasureKind::M1, {});
  CHECK(c.order == a.order);
  for (std::size_t i = 0; i < a.step_values.size(); ++i)
    CHECK(oracle::rel_close(c.step_values[i], a.step_values[i], 1e-8, 1e-12));
}

TEST_CASE("elimination errors") {
  const DataMatrix data = two_column(2);
  const DataMatrix lone({{1.0, 2.0, 3.0}}, {"Y"});
  CHECK(code_of([&] { backward_eliminate(data, 2, MeasureKind::M1, {}); }) == Errc::BadTarget);
  CHECK(code_of([&] { forward_select(data, 5, MeasureKind::M2, {}); }) == Errc::BadTarget);
  CHECK(code_of([&] { backward_eliminate(data, 1, MeasureKind::Hsic, {}); }) == Errc::InvalidConfig);
  CHECK(code_of([&] { forward_select(data, 1, MeasureKind::Hsic, {}); }) == Errc::InvalidConfig);
  CHECK(code_of([&] { backward_eliminate(data, 1, MeasureKind::M1, {}, 1.0); }) == Errc::InvalidConfig);
  CHECK(code_of([&] { forward_select(data, 1, MeasureKind::M1, {}, 2); }) == Errc::InvalidConfig);
  CHECK(code_of([&] { backward_eliminate(lone, 0, MeasureKind::M1, {}); }) == Errc::InvalidData);
}
