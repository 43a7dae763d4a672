#include "mbrank/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mbrank/error.hpp"

namespace mbrank {
namespace {

void check_conditional(MeasureKind kind) {
  if (kind == MeasureKind::Hsic)
    throw Error(Errc::InvalidConfig, "elimination needs a conditional measure (M1 or M2)");
}

std::vector<std::size_t> without(const std::vector<std::size_t>& set, std::size_t skip) {
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (std::size_t v : set)
    if (v != skip) out.push_back(v);
  return out;
}

struct Scored {
  double value;
  std::size_t var;
};

// Lowest value first; equal values resolved by the lower variable index.
bool lower_score(const Scored& a, const Scored& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.var < b.var;
}

}  // namespace

std::vector<std::size_t> non_target_columns(const DataMatrix& data, std::size_t target) {
  if (target >= data.cols()) throw Error(Errc::BadTarget, "target index out of range");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < data.cols(); ++j)
    if (j != target) out.push_back(j);
  return out;
}

EliminationResult backward_eliminate(const DataMatrix& data, std::size_t target, MeasureKind kind,
                                     const KernelSpec& spec, double batch_fraction) {
  check_conditional(kind);
  if (!(batch_fraction >= 0.0 && batch_fraction < 1.0))
    throw Error(Errc::InvalidConfig, "batch fraction must lie in [0, 1)");
  std::vector<std::size_t> remaining = non_target_columns(data, target);
  if (remaining.empty()) throw Error(Errc::InvalidData, "no non-target variables");

  const MeasureContext ctx(data, target, spec);
  EliminationResult result;
  result.direction = Direction::Backward;

  std::vector<Scored> scores;
  while (!remaining.empty()) {
    scores.clear();
    for (std::size_t v : remaining) scores.push_back({ctx.evaluate(kind, without(remaining, v)), v});
    std::sort(scores.begin(), scores.end(), lower_score);

    std::size_t take = 1;
    if (batch_fraction > 0.0) {
      const double raw = std::ceil((1.0 - batch_fraction) * static_cast<double>(remaining.size()));
      take = std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, remaining.size());
    }
    for (std::size_t i = 0; i < take; ++i) {
      result.order.push_back(scores[i].var);
      result.step_values.push_back(scores[i].value);
      std::erase(remaining, scores[i].var);
    }
  }
  return result;
}

EliminationResult forward_select(const DataMatrix& data, std::size_t target, MeasureKind kind,
                                 const KernelSpec& spec, std::optional<std::size_t> stop_at) {
  check_conditional(kind);
  std::vector<std::size_t> candidates = non_target_columns(data, target);
  if (candidates.empty()) throw Error(Errc::InvalidData, "no non-target variables");
  const std::size_t limit = stop_at.value_or(candidates.size());
  if (limit < 1 || limit > candidates.size())
    throw Error(Errc::InvalidConfig, "stop_at must lie in [1, number of non-target variables]");

  const MeasureContext ctx(data, target, spec);
  EliminationResult result;
  result.direction = Direction::Forward;

  std::vector<std::size_t> selected;
  while (result.order.size() < limit) {
    std::optional<Scored> best;
    for (std::size_t v : candidates) {
      selected.push_back(v);
      const Scored s{ctx.evaluate(kind, selected), v};
      selected.pop_back();
      if (!best || lower_score(s, *best)) best = s;
    }
    selected.push_back(best->var);
    std::erase(candidates, best->var);
    result.order.push_back(best->var);
    result.step_values.push_back(best->value);
  }
  return result;
}

EliminationResult bahsic_eliminate(const DataMatrix& data, std::size_t target,
                                   const KernelSpec& spec) {
  std::vector<std::size_t> remaining = non_target_columns(data, target);
  if (remaining.empty()) throw Error(Errc::InvalidData, "no non-target variables");

  const MeasureContext ctx(data, target, spec);
  EliminationResult result;
  result.direction = Direction::Backward;

  while (!remaining.empty()) {
    std::optional<Scored> best;
    for (std::size_t v : remaining) {
      const Scored s{ctx.evaluate(MeasureKind::Hsic, without(remaining, v)), v};
      // Largest HSIC wins; ties go to the lower index (iteration order).
      if (!best || s.value > best->value) best = s;
    }
    result.order.push_back(best->var);
    result.step_values.push_back(best->value);
    std::erase(remaining, best->var);
  }
  return result;
}

}  // namespace mbrank
