#pragma once

// Dense symmetric factorizations on row-major n x n buffers.

#include <cstddef>
#include <span>
#include <vector>

namespace mbrank::linalg {

/// In-place Cholesky A = L L'. Reads the lower triangle of `a`, writes L
/// there; the strict upper triangle is left untouched. Throws
/// Errc::NotPositiveDefinite when a pivot is not strictly positive.
void cholesky_lower(std::span<double> a, std::size_t n);

/// b <- L^{-1} b
void solve_lower(std::span<const double> l, std::size_t n, std::span<double> b);
/// b <- L^{-T} b
void solve_lower_transposed(std::span<const double> l, std::size_t n, std::span<double> b);

/// Low-rank factor of a PSD matrix: A ~= sum_r f_r f_r', with f_r stored as
/// row r of `rows` (rank x n). Pivoting stops once every remaining diagonal
/// entry is at most rel_tol times the largest input diagonal.
struct LowRankFactor {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::vector<double> rows;

  std::span<const double> row(std::size_t r) const { return {rows.data() + r * n, n}; }
};

LowRankFactor pivoted_cholesky(std::span<const double> a, std::size_t n, double rel_tol = 1e-14);

}  // namespace mbrank::linalg
