#pragma once

#include <string>
#include <vector>

#include "syntqa/sql/ast.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

enum class EditKind { Column, Literal, Type };

std::string_view edit_kind_name(EditKind kind);

struct RepairEdit {
  EditKind kind;
  std::string before;
  std::string after;
  std::size_t distance = 0;  ///< normalized Levenshtein; 0 for type edits
};

struct RepairReport {
  std::string original_sql;
  std::string repaired_sql;
  std::vector<RepairEdit> edits;
};

/// Acceptance threshold for fuzzy snapping: min(2, ceil(0.34 * len(target))).
std::size_t repair_threshold(std::string_view normalized_target);

/// Unknown column names snapped to the closest header (normalized
/// Levenshtein, leftmost tie-break); names beyond threshold raise
/// UnknownColumn.
std::pair<sql::SqlQuery, std::vector<RepairEdit>> repair_columns(const sql::SqlQuery& query,
                                                                 const TableData& table);

/// Text literals in =/IN/LIKE conditions with no exact cell match snapped to
/// the closest distinct cell value of their column; unmatched literals beyond
/// threshold are left untouched. Wildcard LIKE patterns are never rewritten.
std::pair<sql::SqlQuery, std::vector<RepairEdit>> repair_literals(const sql::SqlQuery& query,
                                                                  const TableData& table);

/// Numeric comparisons against text-typed columns are rerouted through
/// leading-number extraction when at least half the cells extract; SUM/AVG
/// over such columns likewise. SUM/AVG over columns below that rate raise
/// TypeMismatch.
std::pair<sql::SqlQuery, std::vector<RepairEdit>> repair_types(const sql::SqlQuery& query,
                                                               const TableData& table);

/// Full pipeline: parse, repair columns then literals then types, print.
RepairReport repair_query(const std::string& sql_text, const TableData& table);

}  // namespace syntqa
