#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mbrank {

enum class ColumnKind { Continuous, Discrete };

/// n samples by d variables, stored column-major so each variable is one
/// contiguous span. Immutable after construction.
///
/// Construction rejects n < 2, d < 1, non-finite values and duplicate
/// column names with Errc::InvalidData.
class DataMatrix {
 public:
  /// `columns[j]` holds the n values of variable j.
  DataMatrix(std::vector<std::vector<double>> columns, std::vector<std::string> names,
             std::vector<ColumnKind> kinds = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return names_.size(); }

  std::span<const double> column(std::size_t j) const {
    return {values_.data() + j * rows_, rows_};
  }
  double at(std::size_t i, std::size_t j) const { return values_[j * rows_ + i]; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<ColumnKind>& kinds() const noexcept { return kinds_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Same variables with rows reordered: result row i = this row perm[i].
  DataMatrix permute_rows(std::span<const std::size_t> perm) const;

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<double> values_;
  std::vector<std::string> names_;
  std::vector<ColumnKind> kinds_;
};

}  // namespace mbrank
