#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mbrank/data_matrix.hpp"
#include "mbrank/kernel.hpp"
#include "mbrank/measures.hpp"

namespace mbrank {

enum class Direction { Backward, Forward };

/// Variables in the order the algorithm fixed them. Backward: first entry is
/// the least important (eliminated first). Forward: first entry is the most
/// important (selected first). step_values[i] is the winning measure value
/// when order[i] was fixed.
struct EliminationResult {
  std::vector<std::size_t> order;
  std::vector<double> step_values;
  Direction direction = Direction::Backward;

  bool operator==(const EliminationResult&) const = default;
};

struct SubsetResult {
  std::vector<std::size_t> members;  // sorted ascending

  bool operator==(const SubsetResult&) const = default;
};

/// Non-target column indices of `data`, ascending. Throws Errc::BadTarget.
std::vector<std::size_t> non_target_columns(const DataMatrix& data, std::size_t target);

/// Backward elimination on a conditional measure (M1 or M2).
///
/// Each iteration scores every remaining variable X by the measure with X
/// held out of the conditioning set, and removes the lowest score (ties go to
/// the lower index). `batch_fraction` follows the "remove 1 - beta of X_S per
/// iteration" convention: 0 removes exactly one variable per iteration, any
/// beta in (0, 1) removes the ceil((1 - beta) * |X_S|) lowest-scoring
/// variables at once (at least one), in ascending score order.
EliminationResult backward_eliminate(const DataMatrix& data, std::size_t target, MeasureKind kind,
                                     const KernelSpec& spec, double batch_fraction = 0.0);

/// Greedy forward selection: repeatedly adds the variable whose inclusion in
/// the conditioning set gives the lowest measure. Stops after `stop_at`
/// selections (all variables when empty).
EliminationResult forward_select(const DataMatrix& data, std::size_t target, MeasureKind kind,
                                 const KernelSpec& spec,
                                 std::optional<std::size_t> stop_at = std::nullopt);

/// HSIC-driven backward elimination: each iteration removes the variable
/// whose removal leaves the largest HSIC between the retained features and Y.
EliminationResult bahsic_eliminate(const DataMatrix& data, std::size_t target,
                                   const KernelSpec& spec);

}  // namespace mbrank
