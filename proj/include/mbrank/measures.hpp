#pragma once

// Kernel conditional dependence measures and HSIC.
//
//   M1   = tr(G_Y (G_XS + n eps I)^{-1})
//   M2   = tr(T G_Y T),  T = eps (G_XS + eps I)^{-1}
//   HSIC = tr(G_X G_Y) / (n - 1)^2
//
// All inputs are centered Grams. Smaller M1/M2 means Y is closer to
// conditionally independent of the remaining variables given X_S; larger
// HSIC means stronger (unconditional) dependence. An empty conditioning set
// is read as G_XS = 0, which gives M1 = tr(G_Y) / (n eps) and M2 = tr(G_Y).

#include <cstddef>
#include <span>
#include <string_view>

#include "mbrank/data_matrix.hpp"
#include "mbrank/kernel.hpp"
#include "mbrank/linalg.hpp"

namespace mbrank {

enum class MeasureKind { M1, M2, Hsic };

std::string_view measure_name(MeasureKind kind);

double m1(const GramMatrix& g_y, const GramMatrix& g_xs, double epsilon);
double m1(const GramMatrix& g_y, double epsilon);
double m2(const GramMatrix& g_y, const GramMatrix& g_xs, double epsilon);
double m2(const GramMatrix& g_y, double epsilon);
double hsic(const GramMatrix& g_x, const GramMatrix& g_y);

/// Target-side state reused across many conditioning sets: the centered
/// target Gram and a low-rank factor of it. The M1/M2 traces become sums of
/// squared triangular solves against that factor, so no explicit inverse is
/// ever formed.
class MeasureContext {
 public:
  /// Throws Errc::BadTarget when `target` is not a column of `data`.
  MeasureContext(const DataMatrix& data, std::size_t target, const KernelSpec& spec);

  const DataMatrix& data() const noexcept { return *data_; }
  std::size_t target() const noexcept { return target_; }
  const KernelSpec& spec() const noexcept { return spec_; }
  const GramMatrix& target_gram() const noexcept { return g_y_; }

  /// Measure of Y against the conditioning (M1/M2) or feature (HSIC) set.
  /// Throws Errc::BadTarget if the set contains the target.
  double evaluate(MeasureKind kind, std::span<const std::size_t> conditioning) const;

 private:
  const DataMatrix* data_;
  std::size_t target_;
  KernelSpec spec_;
  GramMatrix g_y_;
  linalg::LowRankFactor factor_;
};

/// One-shot composition of compute_gram, center and the selected measure.
double evaluate(MeasureKind kind, const DataMatrix& data, std::size_t target,
                std::span<const std::size_t> conditioning, const KernelSpec& spec);

}  // namespace mbrank
