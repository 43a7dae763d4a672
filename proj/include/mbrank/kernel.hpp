#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mbrank/data_matrix.hpp"

namespace mbrank {

enum class KernelFamily { Linear, Gaussian };

/// Kernel family, bandwidth policy and ridge epsilon shared by every Gram
/// computation in one analysis. An empty `sigma` selects the median heuristic,
/// resolved separately over each column subset the kernel is evaluated on.
struct KernelSpec {
  KernelFamily family = KernelFamily::Linear;
  std::optional<double> sigma;
  double epsilon = 1e-3;

  /// Throws Errc::InvalidConfig on epsilon <= 0 or sigma <= 0.
  void validate() const;
};

/// Dense symmetric n x n kernel matrix, row-major.
class GramMatrix {
 public:
  GramMatrix() = default;
  /// Throws Errc::DimensionMismatch unless entries.size() == n * n.
  GramMatrix(std::size_t n, std::vector<double> entries, bool centered);

  std::size_t size() const noexcept { return n_; }
  bool centered() const noexcept { return centered_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::span<const double> entries() const noexcept { return entries_; }
  double trace() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  bool centered_ = false;
};

/// Uncentered joint Gram over the concatenated `columns`.
/// Throws Errc::EmptySubset for an empty set, Errc::InvalidData for an
/// out-of-range or repeated index.
GramMatrix compute_gram(const DataMatrix& data, std::span<const std::size_t> columns,
                        const KernelSpec& spec);

/// H K H with H = I - 11'/n. Throws Errc::AlreadyCentered on a centered input.
GramMatrix center(const GramMatrix& gram);

/// Median of the strictly positive pairwise Euclidean distances over
/// `columns`; 1.0 when every pair coincides.
double median_bandwidth(const DataMatrix& data, std::span<const std::size_t> columns);

}  // namespace mbrank
