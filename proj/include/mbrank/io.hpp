#pragma once

// Text formats shared by the command line tool:
//
//   dataset CSV   header of unique names ([A-Za-z0-9_]+), then one row of
//                 decimal values per sample, comma separated, no quoting
//   truth file    line 1 "target=<name>", line 2 "mb=<name>,<name>,..."
//   ranking file  key=value lines: kind=ranking|subset, target, and either
//                 measure/direction/order/values or members
//   config file   flat key=value lines; '#' starts a comment
//
// Numbers are written in shortest round-trip form, so reading back what was
// written reproduces every double exactly.

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mbrank/data_matrix.hpp"
#include "mbrank/elimination.hpp"
#include "mbrank/synthetic.hpp"

namespace mbrank::io {

std::string format_double(double v);
/// Throws Errc::Parse.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string join(const std::vector<std::string>& parts, char sep);

/// Throws Errc::Parse with the offending line number, Errc::InvalidData on
/// dataset invariant violations.
DataMatrix parse_csv(std::istream& in);
/// As parse_csv; Errc::Io when the file cannot be opened.
DataMatrix read_csv(const std::filesystem::path& path);
/// Throws Errc::Io.
void write_csv(const DataMatrix& data, const std::filesystem::path& path);

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);

struct TruthFile {
  std::string target;
  std::vector<std::string> mb;
};

TruthFile read_truth(const std::filesystem::path& path);
void write_truth(const std::filesystem::path& path, const TruthFile& truth);
TruthFile truth_file(const MarkovBlanketTruth& truth, const std::vector<std::string>& names);

struct RankingFile {
  bool is_subset = false;
  std::string target;
  std::string measure;
  Direction direction = Direction::Backward;
  std::vector<std::string> names;  // order, or subset members
  std::vector<double> values;      // per-step values (rankings only)
};

RankingFile read_ranking(const std::filesystem::path& path);
void write_ranking(const std::filesystem::path& path, const RankingFile& ranking);

}  // namespace mbrank::io
