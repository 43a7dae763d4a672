#include "mbrank/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "mbrank/error.hpp"
#include "mbrank/simd/kernels.hpp"

namespace mbrank {
namespace {

void check_columns(const DataMatrix& data, std::span<const std::size_t> columns) {
  if (columns.empty()) throw Error(Errc::EmptySubset, "kernel over an empty variable set");
  std::vector<bool> seen(data.cols(), false);
  for (std::size_t c : columns) {
    if (c >= data.cols()) throw Error(Errc::InvalidData, "column index out of range");
    if (seen[c]) throw Error(Errc::InvalidData, "column index repeated in subset");
    seen[c] = true;
  }
}

// Upper triangle of the squared-distance matrix, mirrored. Computing one
// triangle keeps the result exactly symmetric whatever the SIMD tail does.
std::vector<double> squared_distances(const DataMatrix& data, std::span<const std::size_t> columns) {
  const auto& k = simd::active();
  const std::size_t n = data.rows();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t c : columns) {
    const double* x = data.column(c).data();
    for (std::size_t i = 0; i < n; ++i) k.sqdiff_acc(x[i], x + i, d.data() + i * n + i, n - i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  return d;
}

double median_of_positive(const std::vector<double>& sq, std::size_t n) {
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sq[i * n + j] > 0.0) dist.push_back(std::sqrt(sq[i * n + j]));
  if (dist.empty()) return 1.0;

  const std::size_t mid = dist.size() / 2;
  std::nth_element(dist.begin(), dist.begin() + mid, dist.end());
  const double upper = dist[mid];
  if (dist.size() % 2 == 1) return upper;
  const double lower = *std::max_element(dist.begin(), dist.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

void KernelSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(Errc::InvalidConfig, "epsilon must be positive");
  if (sigma && (!(*sigma > 0.0) || !std::isfinite(*sigma)))
    throw Error(Errc::InvalidConfig, "sigma must be positive");
}

GramMatrix::GramMatrix(std::size_t n, std::vector<double> entries, bool centered)
    : n_(n), entries_(std::move(entries)), centered_(centered) {
  if (entries_.size() != n_ * n_) throw Error(Errc::DimensionMismatch, "Gram entries are not n x n");
}

double GramMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += entries_[i * n_ + i];
  return t;
}

GramMatrix compute_gram(const DataMatrix& data, std::span<const std::size_t> columns,
                        const KernelSpec& spec) {
  spec.validate();
  check_columns(data, columns);
  const std::size_t n = data.rows();

  if (spec.family == KernelFamily::Linear) {
    const auto& k = simd::active();
    std::vector<double> g(n * n, 0.0);
    for (std::size_t c : columns) {
      const double* x = data.column(c).data();
      for (std::size_t i = 0; i < n; ++i) k.axpy(x[i], x + i, g.data() + i * n + i, n - i);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g[j * n + i] = g[i * n + j];
    return GramMatrix(n, std::move(g), false);
  }

  std::vector<double> g = squared_distances(data, columns);
  const double sigma = spec.sigma ? *spec.sigma : median_of_positive(g, n);
  const double scale = -1.0 / (2.0 * sigma * sigma);
  for (double& v : g) v = std::exp(v * scale);
  return GramMatrix(n, std::move(g), false);
}

GramMatrix center(const GramMatrix& gram) {
  if (gram.centered()) throw Error(Errc::AlreadyCentered, "Gram matrix is already centered");
  const auto& k = simd::active();
  const std::size_t n = gram.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> row_mean(n);
  for (std::size_t i = 0; i < n; ++i) row_mean[i] = k.sum(gram.row(i).data(), n) * inv_n;
  const double grand_mean = k.sum(row_mean.data(), n) * inv_n;

  std::vector<double> g(gram.entries().begin(), gram.entries().end());
  for (std::size_t i = 0; i < n; ++i)
    k.sub_shift(row_mean.data() + i, row_mean[i] - grand_mean, g.data() + i * n + i, n - i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g[j * n + i] = g[i * n + j];
  return GramMatrix(n, std::move(g), true);
}

double median_bandwidth(const DataMatrix& data, std::span<const std::size_t> columns) {
  check_columns(data, columns);
  return median_of_positive(squared_distances(data, columns), data.rows());
}

}  // namespace mbrank
