#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mbrank/error.hpp"
#include "mbrank/evaluation.hpp"

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

MarkovBlanketTruth truth_of(std::vector<std::size_t> mb, std::size_t target = 0) {
  MarkovBlanketTruth t;
  t.target = target;
  t.mb = std::move(mb);
  return t;
}

EliminationResult backward(std::vector<std::size_t> order) {
  EliminationResult r;
  r.order = std::move(order);
  r.step_values.assign(r.order.size(), 0.0);
  return r;
}

}  // namespace

TEST_CASE("worked example: ranks, clip and accuracy") {
  const auto truth = truth_of({2, 3, 4});
  const std::vector<std::size_t> order{6, 3, 5, 4, 2, 1};
  const auto nr = normalize_ranks(order, truth);
  const std::vector<std::size_t> expect{5, 4, 3, 2, 2, 1};
  for (std::size_t i = 0; i < order.size(); ++i) CHECK(nr.ranks.at(order[i]) == expect[i]);
  CHECK(nr.mean_mb_rank == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  const auto clipped = clip_ranking(backward(order), 3);
  CHECK(clipped.members == std::vector<std::size_t>{1, 2, 4});
  CHECK(accuracy(clipped, truth) == 50.0);
}

TEST_CASE("rank normalization edge cases") {
  const auto all = normalize_ranks(std::vector<std::size_t>{3, 1, 2}, truth_of({1, 2, 3}));
  for (const auto& [v, r] : all.ranks) CHECK(r == 1);
  CHECK(all.mean_mb_rank == 1.0);

  const auto last = normalize_ranks(std::vector<std::size_t>{2, 3, 1}, truth_of({1}));
  CHECK(last.ranks.at(1) == 1);
  CHECK(last.ranks.at(3) == 2);
  CHECK(last.ranks.at(2) == 3);
  CHECK(last.mean_mb_rank == 1.0);

  // Contiguous non-blanket runs still increment.
  const auto runs = normalize_ranks(std::vector<std::size_t>{1, 2, 3, 4}, truth_of({4}, 9));
  CHECK(runs.ranks.at(1) == 4);
}

TEST_CASE("ranks cover the order and the top-|MB| slots decide the best score") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<std::size_t> order{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> mb(order.begin(), order.begin() + 1 + rep % 5);
    std::sort(mb.begin(), mb.end());
    const auto truth = truth_of(mb);
    const auto nr = normalize_ranks(order, truth);
    CHECK(nr.ranks.size() == order.size());
    CHECK(nr.ranks.at(order.back()) == 1);
    CHECK(nr.mean_mb_rank >= 1.0);
    for (const auto& [v, r] : nr.ranks) CHECK(r <= order.size());

    const auto clipped = clip_ranking(backward(order), mb.size());
    const bool top = std::is_permutation(order.end() - mb.size(), order.end(), mb.begin());
    CHECK((accuracy(clipped, truth) == 100.0) == top);
    CHECK((nr.mean_mb_rank == 1.0) == top);
  }
}

TEST_CASE("clip follows the direction") {
  EliminationResult fwd = backward({1, 2, 3});
  fwd.direction = Direction::Forward;
  CHECK(clip_ranking(fwd, 2).members == std::vector<std::size_t>{1, 2});
  CHECK(ascending_order(fwd) == std::vector<std::size_t>{3, 2, 1});
  CHECK(clip_ranking(backward({5, 1, 3}), 3).members == std::vector<std::size_t>{1, 3, 5});
  CHECK(clip_ranking(backward({5, 1, 3}), 0).members.empty());
}

TEST_CASE("accuracy is a symmetric Jaccard score") {
  const std::vector<std::size_t> a{1, 2, 4}, b{4, 3, 2}, c{7, 8};
  CHECK(accuracy(a, b) == 50.0);
  CHECK(accuracy(b, a) == 50.0);
  CHECK(accuracy(a, c) == 0.0);
  CHECK(accuracy(a, a) == 100.0);
  const std::vector<std::size_t> a_shuffled{4, 1, 2};
  CHECK(accuracy(a_shuffled, b) == accuracy(a, b));
  CHECK(accuracy(SubsetResult{{2, 3, 4}}, truth_of({2, 3, 4})) == 100.0);
  CHECK(accuracy(SubsetResult{}, truth_of({2})) == 0.0);
}

TEST_CASE("aggregate") {
  const std::vector<double> same{3.5, 3.5, 3.5};
  CHECK(aggregate(same).mean == 3.5);
  CHECK(aggregate(same).ci95_half_width == 0.0);

  const std::vector<double> two{0.0, 100.0};
  CHECK(aggregate(two).mean == 50.0);
  CHECK(aggregate(two).ci95_half_width == doctest::Approx(98.0).epsilon(1e-12));

  const std::vector<double> three{1.0, 2.0, 3.0}, shuffled{3.0, 1.0, 2.0};
  CHECK(aggregate(three).mean == 2.0);
  CHECK(aggregate(three).ci95_half_width == doctest::Approx(1.96 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(aggregate(shuffled).mean == aggregate(three).mean);
  CHECK(aggregate(shuffled).ci95_half_width == doctest::Approx(aggregate(three).ci95_half_width));
}

TEST_CASE("evaluation errors") {
  const std::vector<std::size_t> order{1, 2, 3};
  CHECK(code_of([&] { normalize_ranks(order, truth_of({})); }) == Errc::EmptyTruth);
  CHECK(code_of([&] { normalize_ranks(std::vector<std::size_t>{1, 2, 2}, truth_of({1})); }) == Errc::BadOrder);
  CHECK(code_of([&] { normalize_ranks(std::vector<std::size_t>{0, 1, 2}, truth_of({1})); }) == Errc::BadOrder);
  CHECK(code_of([&] { normalize_ranks(order, truth_of({4})); }) == Errc::BadOrder);
  CHECK(code_of([&] { clip_ranking(backward(order), 4); }) == Errc::BadK);
  CHECK(code_of([&] { accuracy(SubsetResult{}, truth_of({})); }) == Errc::UndefinedScore);
  const std::vector<double> one{1.0};
  CHECK(code_of([&] { aggregate(one); }) == Errc::TooFewTrials);
}
