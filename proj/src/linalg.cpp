#include "mbrank/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "mbrank/error.hpp"
#include "mbrank/simd/kernels.hpp"

namespace mbrank::linalg {

void cholesky_lower(std::span<double> a, std::size_t n) {
  if (a.size() != n * n) throw Error(Errc::DimensionMismatch, "cholesky: buffer is not n x n");
  const auto& k = simd::active();
  double* m = a.data();
  double s[4];

  for (std::size_t i = 0; i < n; ++i) {
    double* li = m + i * n;
    std::size_t j = 0;
    // Four columns share one pass over row i; the in-block terms are
    // folded in afterwards in column order.
    for (; j + 4 <= i; j += 4) {
      const double* l0 = m + j * n;
      const double* l1 = l0 + n;
      const double* l2 = l1 + n;
      const double* l3 = l2 + n;
      k.dot4(li, l0, l1, l2, l3, j, s);
      li[j] = (li[j] - s[0]) / l0[j];
      li[j + 1] = (li[j + 1] - s[1] - li[j] * l1[j]) / l1[j + 1];
      li[j + 2] = (li[j + 2] - s[2] - li[j] * l2[j] - li[j + 1] * l2[j + 1]) / l2[j + 2];
      li[j + 3] =
          (li[j + 3] - s[3] - li[j] * l3[j] - li[j + 1] * l3[j + 1] - li[j + 2] * l3[j + 2]) /
          l3[j + 3];
    }
    for (; j < i; ++j) {
      const double* lj = m + j * n;
      li[j] = (li[j] - k.dot(li, lj, j)) / lj[j];
    }
    const double d = li[i] - k.dot(li, li, i);
    if (!(d > 0.0) || !std::isfinite(d))
      throw Error(Errc::NotPositiveDefinite, "non-positive pivot at row " + std::to_string(i));
    li[i] = std::sqrt(d);
  }
}

void solve_lower(std::span<const double> l, std::size_t n, std::span<double> b) {
  const auto& k = simd::active();
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.data() + i * n;
    b[i] = (b[i] - k.dot(li, b.data(), i)) / li[i];
  }
}

void solve_lower_transposed(std::span<const double> l, std::size_t n, std::span<double> b) {
  const auto& k = simd::active();
  for (std::size_t i = n; i-- > 0;) {
    const double* li = l.data() + i * n;
    b[i] /= li[i];
    k.axpy(-b[i], li, b.data(), i);
  }
}

LowRankFactor pivoted_cholesky(std::span<const double> a, std::size_t n, double rel_tol) {
  if (a.size() != n * n) throw Error(Errc::DimensionMismatch, "pivoted_cholesky: buffer is not n x n");
  const auto& k = simd::active();
  LowRankFactor f;
  f.n = n;

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
  const double max_diag = n == 0 ? 0.0 : *std::max_element(diag.begin(), diag.end());
  if (!(max_diag > 0.0)) return f;
  const double stop = rel_tol * max_diag;

  std::vector<bool> pivoted(n, false);
  std::vector<double> v(n);
  while (f.rank < n) {
    std::size_t p = n;
    double best = stop;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pivoted[i] && diag[i] > best) {
        best = diag[i];
        p = i;
      }
    }
    if (p == n) break;

    std::copy(a.begin() + p * n, a.begin() + (p + 1) * n, v.begin());
    for (std::size_t r = 0; r < f.rank; ++r) {
      const double* fr = f.rows.data() + r * n;
      k.axpy(-fr[p], fr, v.data(), n);
    }
    const double root = std::sqrt(best);
    for (std::size_t i = 0; i < n; ++i) v[i] = pivoted[i] ? 0.0 : v[i] / root;
    v[p] = root;
    for (std::size_t i = 0; i < n; ++i) diag[i] -= v[i] * v[i];
    diag[p] = 0.0;
    pivoted[p] = true;

    f.rows.insert(f.rows.end(), v.begin(), v.end());
    ++f.rank;
  }
  return f;
}

}  // namespace mbrank::linalg
