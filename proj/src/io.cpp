#include "mbrank/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mbrank/error.hpp"

namespace mbrank::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(Errc::Io, "write failed for '" + path.string() + "'");
}

const std::string& require(const KeyValues& kv, const std::string& key, const std::string& file) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(Errc::Parse, file + ": missing key '" + key + "'");
  return it->second;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "nan") return std::nan("");
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(Errc::Parse, "not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

DataMatrix parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (names.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    names = split(line, ',');
  }
  if (names.empty()) throw Error(Errc::Parse, "line 1: missing header");
  for (const auto& name : names)
    if (!valid_name(name)) throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": bad column name '" + name + "'");

  std::vector<std::vector<double>> cols(names.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != names.size())
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(names.size()) + " fields, got " + std::to_string(fields.size()));
    for (std::size_t j = 0; j < fields.size(); ++j) {
      try {
        cols[j].push_back(parse_double(fields[j]));
      } catch (const Error&) {
        throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": bad value '" + fields[j] + "'");
      }
    }
  }
  return DataMatrix(std::move(cols), std::move(names));
}

DataMatrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
  return parse_csv(in);
}

void write_csv(const DataMatrix& data, const std::filesystem::path& path) {
  std::ostringstream buf;
  buf << join(data.names(), ',') << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      if (j) buf << ',';
      buf << format_double(data.at(i, j));
    }
    buf << '\n';
  }
  write_text(path, buf.str());
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected key=value");
    kv[std::string(trim(view.substr(0, eq)))] = std::string(trim(view.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
  try {
    return parse_key_values(in);
  } catch (const Error& e) {
    throw Error(Errc::Parse, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  finish(out, path);
}

TruthFile read_truth(const std::filesystem::path& path) {
  const auto kv = read_key_values(path);
  TruthFile t;
  t.target = require(kv, "target", path.string());
  t.mb = split(require(kv, "mb", path.string()), ',');
  return t;
}

void write_truth(const std::filesystem::path& path, const TruthFile& truth) {
  write_text(path, "target=" + truth.target + "\nmb=" + join(truth.mb, ',') + "\n");
}

TruthFile truth_file(const MarkovBlanketTruth& truth, const std::vector<std::string>& names) {
  TruthFile t;
  t.target = names.at(truth.target);
  for (std::size_t v : truth.mb) t.mb.push_back(names.at(v));
  return t;
}

RankingFile read_ranking(const std::filesystem::path& path) {
  const auto kv = read_key_values(path);
  const std::string file = path.string();
  RankingFile r;
  const std::string& kind = require(kv, "kind", file);
  if (auto it = kv.find("target"); it != kv.end()) r.target = it->second;
  if (kind == "subset") {
    r.is_subset = true;
    r.names = split(require(kv, "members", file), ',');
    return r;
  }
  if (kind != "ranking") throw Error(Errc::Parse, file + ": unknown kind '" + kind + "'");
  if (auto it = kv.find("measure"); it != kv.end()) r.measure = it->second;
  const std::string& dir = require(kv, "direction", file);
  if (dir == "backward") {
    r.direction = Direction::Backward;
  } else if (dir == "forward") {
    r.direction = Direction::Forward;
  } else {
    throw Error(Errc::Parse, file + ": unknown direction '" + dir + "'");
  }
  r.names = split(require(kv, "order", file), ',');
  if (auto it = kv.find("values"); it != kv.end()) {
    for (const auto& v : split(it->second, ',')) r.values.push_back(parse_double(v));
    if (r.values.size() != r.names.size())
      throw Error(Errc::Parse, file + ": values and order differ in length");
  }
  return r;
}

void write_ranking(const std::filesystem::path& path, const RankingFile& ranking) {
  std::ostringstream buf;
  buf << "kind=" << (ranking.is_subset ? "subset" : "ranking") << '\n';
  buf << "target=" << ranking.target << '\n';
  if (ranking.is_subset) {
    buf << "members=" << join(ranking.names, ',') << '\n';
  } else {
    std::vector<std::string> values;
    for (double v : ranking.values) values.push_back(format_double(v));
    buf << "measure=" << ranking.measure << '\n';
    buf << "direction=" << (ranking.direction == Direction::Backward ? "backward" : "forward") << '\n';
    buf << "order=" << join(ranking.names, ',') << '\n';
    buf << "values=" << join(values, ',') << '\n';
  }
  write_text(path, buf.str());
}

}  // namespace mbrank::io
