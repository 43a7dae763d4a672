#include "mbrank/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mbrank/error.hpp"
#include "mbrank/simd/kernels.hpp"

namespace mbrank {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(Errc::InvalidConfig, "epsilon must be positive");
}

void check_centered(const GramMatrix& g) {
  if (!g.centered()) throw Error(Errc::NotCentered, "measure needs a centered Gram matrix");
}

void check_pair(const GramMatrix& a, const GramMatrix& b) {
  check_centered(a);
  check_centered(b);
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "Gram matrices differ in size");
}

linalg::LowRankFactor factor_of(const GramMatrix& g_y) {
  return linalg::pivoted_cholesky(g_y.entries(), g_y.size());
}

// Cholesky factor of G_XS + ridge * I.
std::vector<double> ridge_factor(const GramMatrix& g_xs, double ridge) {
  const std::size_t n = g_xs.size();
  std::vector<double> a(g_xs.entries().begin(), g_xs.entries().end());
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += ridge;
  linalg::cholesky_lower(a, n);
  return a;
}

double m1_factored(const linalg::LowRankFactor& fy, const GramMatrix& g_xs, double epsilon) {
  const std::size_t n = g_xs.size();
  if (fy.rank == 0) return 0.0;
  const auto l = ridge_factor(g_xs, static_cast<double>(n) * epsilon);
  const auto& k = simd::active();
  std::vector<double> w(n);
  double acc = 0.0;
  for (std::size_t r = 0; r < fy.rank; ++r) {
    const auto f = fy.row(r);
    std::copy(f.begin(), f.end(), w.begin());
    linalg::solve_lower(l, n, w);
    acc += k.dot(w.data(), w.data(), n);
  }
  return acc;
}

double m2_factored(const linalg::LowRankFactor& fy, const GramMatrix& g_xs, double epsilon) {
  const std::size_t n = g_xs.size();
  if (fy.rank == 0) return 0.0;
  const auto l = ridge_factor(g_xs, epsilon);
  const auto& k = simd::active();
  std::vector<double> w(n);
  double acc = 0.0;
  for (std::size_t r = 0; r < fy.rank; ++r) {
    const auto f = fy.row(r);
    std::copy(f.begin(), f.end(), w.begin());
    linalg::solve_lower(l, n, w);
    linalg::solve_lower_transposed(l, n, w);
    acc += k.dot(w.data(), w.data(), n);
  }
  return epsilon * epsilon * acc;
}

double hsic_unchecked(const GramMatrix& g_x, const GramMatrix& g_y) {
  const auto& k = simd::active();
  const std::size_t n = g_x.size();
  const double tr = k.dot(g_x.entries().data(), g_y.entries().data(), n * n);
  const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
  return tr / denom;
}

}  // namespace

std::string_view measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::M1: return "M1";
    case MeasureKind::M2: return "M2";
    case MeasureKind::Hsic: return "HSIC";
  }
  return "?";
}

double m1(const GramMatrix& g_y, const GramMatrix& g_xs, double epsilon) {
  check_pair(g_y, g_xs);
  check_epsilon(epsilon);
  return m1_factored(factor_of(g_y), g_xs, epsilon);
}

double m1(const GramMatrix& g_y, double epsilon) {
  check_centered(g_y);
  check_epsilon(epsilon);
  return g_y.trace() / (static_cast<double>(g_y.size()) * epsilon);
}

double m2(const GramMatrix& g_y, const GramMatrix& g_xs, double epsilon) {
  check_pair(g_y, g_xs);
  check_epsilon(epsilon);
  return m2_factored(factor_of(g_y), g_xs, epsilon);
}

double m2(const GramMatrix& g_y, double epsilon) {
  check_centered(g_y);
  check_epsilon(epsilon);
  return g_y.trace();
}

double hsic(const GramMatrix& g_x, const GramMatrix& g_y) {
  check_pair(g_x, g_y);
  return hsic_unchecked(g_x, g_y);
}

MeasureContext::MeasureContext(const DataMatrix& data, std::size_t target, const KernelSpec& spec)
    : data_(&data), target_(target), spec_(spec) {
  spec_.validate();
  if (target >= data.cols()) throw Error(Errc::BadTarget, "target index out of range");
  const std::size_t cols[] = {target};
  g_y_ = center(compute_gram(data, cols, spec_));
  factor_ = factor_of(g_y_);
}

double MeasureContext::evaluate(MeasureKind kind, std::span<const std::size_t> conditioning) const {
  if (std::find(conditioning.begin(), conditioning.end(), target_) != conditioning.end())
    throw Error(Errc::BadTarget, "target appears in its own conditioning set");

  if (conditioning.empty()) {
    switch (kind) {
      case MeasureKind::M1: return m1(g_y_, spec_.epsilon);
      case MeasureKind::M2: return m2(g_y_, spec_.epsilon);
      case MeasureKind::Hsic: return 0.0;
    }
  }

  const GramMatrix g_xs = center(compute_gram(*data_, conditioning, spec_));
  switch (kind) {
    case MeasureKind::M1: return m1_factored(factor_, g_xs, spec_.epsilon);
    case MeasureKind::M2: return m2_factored(factor_, g_xs, spec_.epsilon);
    case MeasureKind::Hsic: return hsic_unchecked(g_xs, g_y_);
  }
  return 0.0;
}

double evaluate(MeasureKind kind, const DataMatrix& data, std::size_t target,
                std::span<const std::size_t> conditioning, const KernelSpec& spec) {
  return MeasureContext(data, target, spec).evaluate(kind, conditioning);
}

}  // namespace mbrank
