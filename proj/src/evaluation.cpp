#include "mbrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mbrank/error.hpp"

namespace mbrank {

NormalizedRanking normalize_ranks(std::span<const std::size_t> ascending_order,
                                  const MarkovBlanketTruth& truth) {
  if (truth.mb.empty()) throw Error(Errc::EmptyTruth, "Markov blanket truth is empty");
  std::set<std::size_t> seen;
  for (std::size_t v : ascending_order) {
    if (v == truth.target) throw Error(Errc::BadOrder, "order contains the target");
    if (!seen.insert(v).second) throw Error(Errc::BadOrder, "order repeats a variable");
  }
  const std::set<std::size_t> mb(truth.mb.begin(), truth.mb.end());
  for (std::size_t v : mb)
    if (!seen.contains(v)) throw Error(Errc::BadOrder, "order misses a blanket member");

  NormalizedRanking out;
  std::size_t rank = 0;
  bool prev_in_mb = false;
  for (auto it = ascending_order.rbegin(); it != ascending_order.rend(); ++it) {
    const bool in_mb = mb.contains(*it);
    if (rank == 0 || !(in_mb && prev_in_mb)) ++rank;
    out.ranks[*it] = rank;
    prev_in_mb = in_mb;
  }

  double total = 0.0;
  for (std::size_t v : mb) total += static_cast<double>(out.ranks[v]);
  out.mean_mb_rank = total / static_cast<double>(mb.size());
  return out;
}

std::vector<std::size_t> ascending_order(const EliminationResult& result) {
  std::vector<std::size_t> order = result.order;
  if (result.direction == Direction::Forward) std::reverse(order.begin(), order.end());
  return order;
}

SubsetResult clip_ranking(const EliminationResult& result, std::size_t k) {
  if (k > result.order.size()) throw Error(Errc::BadK, "k exceeds the ranking length");
  SubsetResult out;
  if (result.direction == Direction::Backward)
    out.members.assign(result.order.end() - static_cast<std::ptrdiff_t>(k), result.order.end());
  else
    out.members.assign(result.order.begin(), result.order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

double accuracy(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  const std::set<std::size_t> sa(a.begin(), a.end());
  const std::set<std::size_t> sb(b.begin(), b.end());
  std::size_t common = 0;
  for (std::size_t v : sa) common += sb.contains(v) ? 1 : 0;
  const std::size_t uni = sa.size() + sb.size() - common;
  if (uni == 0) throw Error(Errc::UndefinedScore, "accuracy of two empty sets");
  return 100.0 * static_cast<double>(common) / static_cast<double>(uni);
}

double accuracy(const SubsetResult& subset, const MarkovBlanketTruth& truth) {
  return accuracy(subset.members, truth.mb);
}

TrialSummary aggregate(std::span<const double> scores) {
  if (scores.size() < 2) throw Error(Errc::TooFewTrials, "aggregate needs at least two scores");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());  // fixed summation order
  const double count = static_cast<double>(sorted.size());
  double mean = 0.0;
  for (double s : sorted) mean += s;
  mean = std::clamp(mean / count, sorted.front(), sorted.back());
  if (sorted.front() == sorted.back()) return {sorted.front(), 0.0};
  double ss = 0.0;
  for (double s : sorted) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (count - 1.0));
  return {mean, 1.96 * sd / std::sqrt(count)};
}

}  // namespace mbrank
