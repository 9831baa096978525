#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dlm/harness.hpp"

namespace dlm {

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_value(const std::string& s) {
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::runtime_error("csv: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto c = line.find(',', start);
    out.emplace_back(line.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

}  // namespace

double round_to_12_digits(double v) { return std::isnan(v) ? v : parse_value(format_value(v)); }

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<double> values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("ResultTable: row has " + std::to_string(values.size()) + " values, expected " +
                                std::to_string(columns_.size()));
  for (auto& v : values) v = round_to_12_digits(v);
  rows_.push_back(std::move(values));
}

void ResultTable::append(const ResultTable& other) {
  if (columns_.empty() && rows_.empty()) columns_ = other.columns_;
  if (other.columns_ != columns_) throw std::invalid_argument("ResultTable: column mismatch");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

std::size_t ResultTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  throw std::out_of_range("ResultTable: no column '" + std::string(name) + "'");
}

double ResultTable::at(std::size_t row, std::string_view column) const { return rows_.at(row).at(column_index(column)); }

std::vector<double> ResultTable::column(std::string_view name) const {
  const auto c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[c]);
  return out;
}

bool operator==(const ResultTable& a, const ResultTable& b) {
  if (a.columns_ != b.columns_ || a.rows_.size() != b.rows_.size()) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < a.columns_.size(); ++j) {
      const double x = a.rows_[i][j], y = b.rows_[i][j];
      if (!(x == y || (std::isnan(x) && std::isnan(y)))) return false;
    }
  return true;
}

std::string to_csv(const ResultTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns().size(); ++i) {
    if (i) out += ',';
    out += t.columns()[i];
  }
  out += '\n';
  for (const auto& r : t.rows()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_value(r[i]);
    }
    out += '\n';
  }
  return out;
}

ResultTable parse_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) throw std::runtime_error("csv: missing header");
  ResultTable t(split_commas(lines[0]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_commas(lines[i]);
    if (cells.size() != t.columns().size())
      throw std::runtime_error("csv: line " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) + " cells");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_value(c));
    t.add_row(std::move(row));
  }
  return t;
}

void emit_csv(const ResultTable& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << to_csv(t);
  if (!out.flush()) throw std::runtime_error("write to '" + path.string() + "' failed");
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace dlm
