#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace faberlab {

/// Empty cells hold std::monostate and print as an empty CSV field.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

/// Deterministic text form: integers in decimal, doubles as %.17g,
/// booleans as true/false.
std::string format_cell(const Cell& cell);

/// Rows of named columns plus free-form JSON metadata.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const;

  void add_row(std::vector<Cell> row);
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<Cell>& row(std::size_t r) const { return rows_.at(r); }
  const Cell& at(std::size_t r, std::string_view column) const;
  /// Numeric value of a cell; NaN for empty cells.
  double number(std::size_t r, std::string_view column) const;
  bool flag(std::size_t r, std::string_view column) const;

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
  static ResultTable from_csv(std::string_view text);
  static ResultTable read_csv(const std::filesystem::path& path);

  /// Fixed-width text rendering for terminals.
  std::string to_text(std::size_t max_rows = 0) const;

  nlohmann::json metadata = nlohmann::json::object();

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace faberlab
