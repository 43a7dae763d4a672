#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mbrank/elimination.hpp"
#include "mbrank/synthetic.hpp"

namespace mbrank {

struct NormalizedRanking {
  std::map<std::size_t, std::size_t> ranks;  // variable -> rank (1 = best)
  double mean_mb_rank = 0.0;
};

/// Rank normalization over an ascending elimination order (least important
/// first). Walking from the most important end, the first variable gets rank
/// 1 and each next variable keeps the previous rank only when it and its
/// predecessor are both blanket members; otherwise the rank grows by one.
///
/// Throws Errc::EmptyTruth for an empty blanket and Errc::BadOrder when the
/// order repeats a variable, contains the target or misses a blanket member.
NormalizedRanking normalize_ranks(std::span<const std::size_t> ascending_order,
                                  const MarkovBlanketTruth& truth);

/// Ascending (least important first) order for either direction.
std::vector<std::size_t> ascending_order(const EliminationResult& result);

/// The k most important variables. Throws Errc::BadK when k > order length.
SubsetResult clip_ranking(const EliminationResult& result, std::size_t k);

/// 100 * |A n B| / |A u B|. Throws Errc::UndefinedScore when both are empty.
double accuracy(const SubsetResult& subset, const MarkovBlanketTruth& truth);
double accuracy(std::span<const std::size_t> a, std::span<const std::size_t> b);

struct TrialSummary {
  double mean = 0.0;
  double ci95_half_width = 0.0;  // 1.96 * sd / sqrt(count), sd with n - 1
};

/// Throws Errc::TooFewTrials with fewer than two scores.
TrialSummary aggregate(std::span<const double> scores);

}  // namespace mbrank
