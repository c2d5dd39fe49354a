#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "syntqa/cell_value.hpp"

namespace syntqa {

enum class ColumnType { Numeric, Text };

/// An immutable in-memory table with a header row and typed cells.
struct TableData {
  std::string id;
  std::vector<std::string> header;
  std::vector<std::vector<CellValue>> rows;
  std::vector<ColumnType> inferred_types;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return header.size(); }

  /// Index of the column whose normalized name matches, or -1.
  int find_column(std::string_view name) const;

  /// Header + cells validated and types inferred; throws on ragged rows or
  /// duplicate normalized column names.
  static TableData build(std::string id, std::vector<std::string> header,
                         std::vector<std::vector<CellValue>> rows);
};

struct Linearization {
  std::string text;      ///< cut at a row boundary when over budget
  bool truncated = false;
  std::size_t total_tokens = 0;  ///< whitespace tokens of the full rendering
};

inline constexpr std::size_t kDefaultLinearizeBudget = 1024;

/// Flattens the table to "col : h1 | h2 row 1 : c11 | c12 row 2 : ..." and
/// cuts on a row boundary when the whitespace-token count exceeds `budget`.
Linearization linearize(const TableData& table, std::size_t budget);

/// Loads one CSV file or every *.csv in a directory; the table id is the
/// file stem.
std::map<std::string, TableData> load_tables(const std::filesystem::path& path);

TableData load_table_csv(const std::filesystem::path& file);
void save_table_csv(const TableData& table, const std::filesystem::path& file);

}  // namespace syntqa
