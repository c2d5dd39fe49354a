#pragma once

#include <vector>

#include "syntqa/sql/ast.hpp"
#include "syntqa/table.hpp"

namespace syntqa::sql {

/// Row-scan execution of the query over one table. Results are flattened to
/// a value list in row order. Throws Error with kinds UnknownColumn,
/// TypeMismatch, EmptyAggregate, or DivideByZero.
std::vector<CellValue> execute(const SqlQuery& query, const TableData& table);

/// Comparison semantics shared with repair: numeric when both sides parse as
/// numbers, otherwise case-insensitive trimmed string equality. Empty cells
/// fail every comparison.
bool cell_matches(const CellValue& cell, CmpOp op, const CellValue& literal);

/// Numeric reading of a cell, honoring CAST-style leading-number extraction
/// when `numeric_cast` is set; Empty (or unextractable) yields nullopt.
std::optional<double> cell_as_number(const CellValue& cell);

}  // namespace syntqa::sql
