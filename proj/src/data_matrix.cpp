#include "mbrank/data_matrix.hpp"

#include <cmath>
#include <unordered_set>

#include "mbrank/error.hpp"

namespace mbrank {

DataMatrix::DataMatrix(std::vector<std::vector<double>> columns, std::vector<std::string> names,
                       std::vector<ColumnKind> kinds)
    : names_(std::move(names)), kinds_(std::move(kinds)) {
  if (columns.empty()) throw Error(Errc::InvalidData, "need at least one column");
  if (columns.size() != names_.size())
    throw Error(Errc::InvalidData, "column count does not match name count");
  if (kinds_.empty()) kinds_.assign(columns.size(), ColumnKind::Continuous);
  if (kinds_.size() != columns.size())
    throw Error(Errc::InvalidData, "column count does not match kind count");

  rows_ = columns.front().size();
  if (rows_ < 2) throw Error(Errc::InvalidData, "need at least two samples");

  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw Error(Errc::InvalidData, "duplicate column name '" + name + "'");
  }

  values_.reserve(rows_ * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows_)
      throw Error(Errc::InvalidData, "column '" + names_[j] + "' has a different length");
    for (double v : columns[j]) {
      if (!std::isfinite(v)) throw Error(Errc::InvalidData, "non-finite value in column '" + names_[j] + "'");
      values_.push_back(v);
    }
  }
}

std::optional<std::size_t> DataMatrix::index_of(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  return std::nullopt;
}

DataMatrix DataMatrix::permute_rows(std::span<const std::size_t> perm) const {
  if (perm.size() != rows_) throw Error(Errc::DimensionMismatch, "row permutation has wrong length");
  std::vector<std::vector<double>> out(cols(), std::vector<double>(rows_));
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t i = 0; i < rows_; ++i) out[j][i] = at(perm[i], j);
  }
  return DataMatrix(std::move(out), names_, kinds_);
}

}  // namespace mbrank
