#pragma once

// Incremental association Markov blanket (IAMB) with Fisher's z test on
// partial correlations. Used as the forward-selection baseline.

#include <cstddef>
#include <span>
#include <vector>

#include "mbrank/data_matrix.hpp"
#include "mbrank/elimination.hpp"

namespace mbrank {

struct FisherZ {
  double statistic = 0.0;  // 0.5 ln((1+r)/(1-r)) sqrt(n - |Z| - 3)
  double p_value = 1.0;    // two-sided, standard normal reference

  bool significant_at(double alpha) const { return p_value < alpha; }
};

/// Throws Errc::TooFewSamples when n - cond_size - 3 <= 0 and
/// Errc::InvalidData unless -1 < r < 1.
FisherZ fisher_z(double r, std::size_t n, std::size_t cond_size);

/// Pearson correlations of all columns, d x d row-major. Constant columns get
/// zero correlation with everything else.
struct CorrelationMatrix {
  std::size_t d = 0;
  std::size_t samples = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * d + j]; }
};

CorrelationMatrix correlation_matrix(const DataMatrix& data);

/// Partial correlation of a and b given `given`, from the inverse of the
/// correlation submatrix over {a, b} + given. Throws
/// Errc::SingularConditioning when that submatrix is numerically singular.
double partial_correlation(const CorrelationMatrix& corr, std::size_t a, std::size_t b,
                           std::span<const std::size_t> given);

/// True when a and b test dependent given `given` at level alpha. Singular
/// conditioning sets and too-small samples count as independence.
bool dependent(const CorrelationMatrix& corr, std::size_t a, std::size_t b,
               std::span<const std::size_t> given, double alpha);

/// Grow by largest |partial correlation| while significant, then shrink away
/// members that test independent given the rest; repeated until neither
/// phase changes the set.
SubsetResult iamb(const DataMatrix& data, std::size_t target, double alpha = 0.05);

}  // namespace mbrank
