#include "faberlab/result_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "faberlab/error.hpp"

namespace faberlab {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

Cell parse_cell(const std::string& s) {
  if (s.empty()) return std::monostate{};
  if (s == "true") return true;
  if (s == "false") return false;
  std::int64_t i = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ec == std::errc{} && p == s.data() + s.size()) return i;
  double d = 0.0;
  auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec2 == std::errc{} && q == s.data() + s.size()) return d;
  if (s == "nan") return std::nan("");
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return s;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (std::isnan(v)) return "nan";
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      return fmt::format("{:.17g}", v);
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("a result table needs at least one column");
}

std::size_t ResultTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw InvalidArgument(fmt::format("no column named '{}'", name));
}

bool ResultTable::has_column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c == name) return true;
  }
  return false;
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw InvalidArgument(
        fmt::format("row has {} cells, table has {} columns", row.size(), columns_.size()));
  }
  rows_.push_back(std::move(row));
}

const Cell& ResultTable::at(std::size_t r, std::string_view column) const {
  return rows_.at(r).at(column_index(column));
}

double ResultTable::number(std::size_t r, std::string_view column) const {
  const Cell& c = at(r, column);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
  return std::nan("");
}

bool ResultTable::flag(std::size_t r, std::string_view column) const {
  const Cell& c = at(r, column);
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  throw InvalidArgument(fmt::format("column '{}' does not hold a boolean", column));
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += quote_if_needed(columns_[i]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote_if_needed(format_cell(row[i]));
    }
    out += '\n';
  }
  return out;
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  f << to_csv();
  if (!f) throw Error(fmt::format("write to '{}' failed", path.string()));
}

ResultTable ResultTable::from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = end + 1;
  }
  if (lines.empty()) throw Error("CSV text has no header");
  ResultTable table(split_csv_line(lines[0]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable ResultTable::read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::stringstream ss;
  ss << f.rdbuf();
  return from_csv(ss.str());
}

std::string ResultTable::to_text(std::size_t max_rows) const {
  const std::size_t shown = max_rows ? std::min(max_rows, rows_.size()) : rows_.size();
  std::vector<std::size_t> width(columns_.size());
  std::vector<std::vector<std::string>> cells(shown);
  for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = columns_[c].size();
  for (std::size_t r = 0; r < shown; ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      std::string s;
      if (const auto* d = std::get_if<double>(&rows_[r][c])) {
        s = fmt::format("{:.10g}", *d);
      } else {
        s = format_cell(rows_[r][c]);
      }
      width[c] = std::max(width[c], s.size());
      cells[r].push_back(std::move(s));
    }
  }
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out += fmt::format("{:>{}}{}", columns_[c], width[c], c + 1 < columns_.size() ? "  " : "\n");
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += fmt::format("{:>{}}{}", row[c], width[c], c + 1 < row.size() ? "  " : "\n");
    }
  }
  if (shown < rows_.size()) out += fmt::format("... {} more rows\n", rows_.size() - shown);
  return out;
}

}  // namespace faberlab
