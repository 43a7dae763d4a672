#include "mbrank/iamb.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "mbrank/error.hpp"
#include "mbrank/linalg.hpp"

namespace mbrank {
namespace {

constexpr double kSingularPivot = 1e-10;
constexpr double kMaxAbsCorrelation = 1.0 - 1e-15;

// Partial correlation when the test is usable, nullopt otherwise.
std::optional<double> try_partial(const CorrelationMatrix& corr, std::size_t a, std::size_t b,
                                  std::span<const std::size_t> given) {
  try {
    return partial_correlation(corr, a, b, given);
  } catch (const Error& e) {
    if (e.code() == Errc::SingularConditioning) return std::nullopt;
    throw;
  }
}

bool significant(double r, std::size_t n, std::size_t cond_size, double alpha) {
  if (n <= cond_size + 3) return false;
  r = std::clamp(r, -kMaxAbsCorrelation, kMaxAbsCorrelation);
  return fisher_z(r, n, cond_size).significant_at(alpha);
}

}  // namespace

FisherZ fisher_z(double r, std::size_t n, std::size_t cond_size) {
  if (n <= cond_size + 3)
    throw Error(Errc::TooFewSamples, "Fisher z needs n - |Z| - 3 > 0");
  if (!(r > -1.0 && r < 1.0)) throw Error(Errc::InvalidData, "correlation must lie in (-1, 1)");
  const double scale = std::sqrt(static_cast<double>(n - cond_size - 3));
  FisherZ out;
  out.statistic = std::atanh(r) * scale;
  out.p_value = std::erfc(std::abs(out.statistic) / std::sqrt(2.0));
  return out;
}

CorrelationMatrix correlation_matrix(const DataMatrix& data) {
  const std::size_t d = data.cols();
  const std::size_t n = data.rows();
  std::vector<std::vector<double>> centered(d, std::vector<double>(n));
  std::vector<double> norm(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = data.column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      centered[j][i] = col[i] - mean;
      ss += centered[j][i] * centered[j][i];
    }
    norm[j] = std::sqrt(ss);
  }

  CorrelationMatrix c{d, n, std::vector<double>(d * d, 0.0)};
  for (std::size_t a = 0; a < d; ++a) {
    c.values[a * d + a] = 1.0;
    for (std::size_t b = a + 1; b < d; ++b) {
      double r = 0.0;
      if (norm[a] > 0.0 && norm[b] > 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += centered[a][i] * centered[b][i];
        r = std::clamp(s / (norm[a] * norm[b]), -1.0, 1.0);
      }
      c.values[a * d + b] = c.values[b * d + a] = r;
    }
  }
  return c;
}

double partial_correlation(const CorrelationMatrix& corr, std::size_t a, std::size_t b,
                           std::span<const std::size_t> given) {
  if (given.empty()) return corr(a, b);

  std::vector<std::size_t> idx{a, b};
  idx.insert(idx.end(), given.begin(), given.end());
  const std::size_t m = idx.size();
  std::vector<double> s(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s[i * m + j] = corr(idx[i], idx[j]);

  try {
    linalg::cholesky_lower(s, m);
  } catch (const Error&) {
    throw Error(Errc::SingularConditioning, "correlation submatrix is not positive definite");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (s[i * m + i] < kSingularPivot)
      throw Error(Errc::SingularConditioning, "correlation submatrix is numerically singular");
  }

  // First two columns of the inverse.
  std::vector<double> e0(m, 0.0), e1(m, 0.0);
  e0[0] = 1.0;
  e1[1] = 1.0;
  linalg::solve_lower(s, m, e0);
  linalg::solve_lower_transposed(s, m, e0);
  linalg::solve_lower(s, m, e1);
  linalg::solve_lower_transposed(s, m, e1);
  const double p00 = e0[0], p01 = e0[1], p11 = e1[1];
  return std::clamp(-p01 / std::sqrt(p00 * p11), -1.0, 1.0);
}

bool dependent(const CorrelationMatrix& corr, std::size_t a, std::size_t b,
               std::span<const std::size_t> given, double alpha) {
  const auto r = try_partial(corr, a, b, given);
  return r && significant(*r, corr.samples, given.size(), alpha);
}

SubsetResult iamb(const DataMatrix& data, std::size_t target, double alpha) {
  if (target >= data.cols()) throw Error(Errc::BadTarget, "target index out of range");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must lie in (0, 1)");
  const std::vector<std::size_t> all = non_target_columns(data, target);
  if (all.empty()) return {};

  const CorrelationMatrix corr = correlation_matrix(data);
  std::vector<std::size_t> blanket;

  // Each round either changes the set or ends the loop; the cap only guards
  // against a grow/shrink cycle.
  const std::size_t max_rounds = 4 * all.size() + 4;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;

    for (;;) {
      std::optional<std::size_t> best;
      double best_assoc = -1.0;
      for (std::size_t v : all) {
        if (std::find(blanket.begin(), blanket.end(), v) != blanket.end()) continue;
        const auto r = try_partial(corr, target, v, blanket);
        if (!r) continue;
        if (std::abs(*r) > best_assoc) {
          best_assoc = std::abs(*r);
          best = v;
        }
      }
      if (!best) break;
      const double r = *try_partial(corr, target, *best, blanket);
      if (!significant(r, corr.samples, blanket.size(), alpha)) break;
      blanket.push_back(*best);
      changed = true;
    }

    for (std::size_t i = 0; i < blanket.size();) {
      std::vector<std::size_t> rest = blanket;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (!dependent(corr, target, blanket[i], rest, alpha)) {
        blanket = std::move(rest);
        changed = true;
      } else {
        ++i;
      }
    }

    if (!changed) break;
  }

  std::sort(blanket.begin(), blanket.end());
  return {blanket};
}

}  // namespace mbrank
