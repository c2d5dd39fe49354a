#include "syntqa/repair.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "syntqa/errors.hpp"
#include "syntqa/sql/executor.hpp"
#include "syntqa/sql/parser.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

using sql::CmpOp;
using sql::ColumnRef;
using sql::Condition;
using sql::SelectExpr;
using sql::SqlQuery;

std::string_view edit_kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::Column: return "COLUMN";
    case EditKind::Literal: return "LITERAL";
    case EditKind::Type: return "TYPE";
  }
  return "COLUMN";
}

std::size_t repair_threshold(std::string_view normalized_target) {
  double relative = std::ceil(0.34 * static_cast<double>(normalized_target.size()));
  return std::min<std::size_t>(2, static_cast<std::size_t>(relative));
}

namespace {

struct Closest {
  std::size_t index = 0;
  std::size_t distance = 0;
  bool accepted = false;
};

// Minimum normalized Levenshtein over candidates; first candidate wins ties.
Closest closest_candidate(const std::string& needle, const std::vector<std::string>& candidates) {
  Closest best;
  std::string norm_needle = normalize_loose(needle);
  bool first = true;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::string norm_target = normalize_loose(candidates[i]);
    std::size_t d = levenshtein(norm_needle, norm_target);
    if (first || d < best.distance) {
      best.index = i;
      best.distance = d;
      best.accepted = d <= repair_threshold(norm_target);
      first = false;
    }
  }
  return best;
}

template <typename Fn>
void for_each_column_ref(SqlQuery& query, Fn&& fn) {
  std::function<void(SelectExpr&)> visit = [&](SelectExpr& expr) {
    if (auto* col = std::get_if<SelectExpr::Column>(&expr.node)) {
      fn(col->ref);
    } else if (auto* agg = std::get_if<SelectExpr::Agg>(&expr.node)) {
      if (!agg->star) fn(agg->ref);
    } else {
      auto& arith = std::get<SelectExpr::Arith>(expr.node);
      visit(*arith.lhs);
      visit(*arith.rhs);
    }
  };
  for (auto& expr : query.select) visit(expr);
  for (auto& cond : query.where) fn(cond.column);
  if (query.group_by) {
    ColumnRef ref{*query.group_by, false};
    fn(ref);
    query.group_by = ref.name;
  }
  if (query.order_by) fn(query.order_by->column);
}

double extraction_rate(const TableData& table, int column) {
  std::size_t non_empty = 0, extracted = 0;
  for (const auto& row : table.rows) {
    const CellValue& cell = row[column];
    if (cell.is_empty()) continue;
    ++non_empty;
    if (cell.is_number() || leading_number(cell.text_value())) ++extracted;
  }
  if (non_empty == 0) return 0.0;
  return static_cast<double>(extracted) / static_cast<double>(non_empty);
}

}  // namespace

std::pair<SqlQuery, std::vector<RepairEdit>> repair_columns(const SqlQuery& query,
                                                            const TableData& table) {
  SqlQuery repaired = query;
  std::vector<RepairEdit> edits;
  for_each_column_ref(repaired, [&](ColumnRef& ref) {
    if (table.find_column(ref.name) >= 0) return;
    Closest best = closest_candidate(ref.name, table.header);
    if (!best.accepted) {
      throw Error(ErrorKind::UnknownColumn,
                  "no column within repair distance of '" + ref.name + "'");
    }
    edits.push_back({EditKind::Column, ref.name, table.header[best.index], best.distance});
    ref.name = table.header[best.index];
  });
  return {std::move(repaired), std::move(edits)};
}

std::pair<SqlQuery, std::vector<RepairEdit>> repair_literals(const SqlQuery& query,
                                                             const TableData& table) {
  SqlQuery repaired = query;
  std::vector<RepairEdit> edits;
  for (auto& cond : repaired.where) {
    if (cond.op != CmpOp::Eq && cond.op != CmpOp::In && cond.op != CmpOp::Like) continue;
    int col = table.find_column(cond.column.name);
    if (col < 0) continue;  // unknown columns are repair_columns' concern

    // distinct non-empty cell values in first-occurrence order
    std::vector<std::string> values;
    std::set<std::string> seen;
    for (const auto& row : table.rows) {
      const CellValue& cell = row[col];
      if (cell.is_empty()) continue;
      std::string display = cell.display();
      if (seen.insert(normalize_loose(display)).second) values.push_back(display);
    }
    if (values.empty()) continue;

    for (auto& literal : cond.values) {
      if (!literal.is_text()) continue;
      const std::string& text = literal.text_value();
      if (cond.op == CmpOp::Like && text.find('%') != std::string::npos) continue;
      bool matches_cell = false;
      std::string norm_literal = normalize_loose(text);
      for (const auto& value : values) {
        if (normalize_loose(value) == norm_literal) {
          matches_cell = true;
          break;
        }
      }
      if (matches_cell) continue;
      Closest best = closest_candidate(text, values);
      if (!best.accepted) continue;  // may legitimately select nothing
      edits.push_back({EditKind::Literal, text, values[best.index], best.distance});
      literal = CellValue::from_raw(values[best.index]);
    }
  }
  return {std::move(repaired), std::move(edits)};
}

std::pair<SqlQuery, std::vector<RepairEdit>> repair_types(const SqlQuery& query,
                                                          const TableData& table) {
  SqlQuery repaired = query;
  std::vector<RepairEdit> edits;

  auto add_cast = [&](ColumnRef& ref) {
    edits.push_back({EditKind::Type, ref.name,
                     "CAST(" + ref.name + " AS NUMBER)", 0});
    ref.numeric_cast = true;
  };

  for (auto& cond : repaired.where) {
    if (cond.column.numeric_cast) continue;
    int col = table.find_column(cond.column.name);
    if (col < 0) continue;
    if (table.inferred_types[col] != ColumnType::Text) continue;
    bool numeric_literal = false;
    for (const auto& value : cond.values) {
      if (value.is_number()) numeric_literal = true;
    }
    if (!numeric_literal) continue;
    // leave the condition on its string semantics when extraction is hopeless
    if (extraction_rate(table, col) >= 0.5) add_cast(cond.column);
  }

  std::function<void(SelectExpr&)> visit = [&](SelectExpr& expr) {
    if (auto* agg = std::get_if<SelectExpr::Agg>(&expr.node)) {
      if (agg->star || agg->ref.numeric_cast) return;
      if (agg->fn != sql::AggFn::Sum && agg->fn != sql::AggFn::Avg) return;
      int col = table.find_column(agg->ref.name);
      if (col < 0 || table.inferred_types[col] != ColumnType::Text) return;
      if (extraction_rate(table, col) < 0.5) {
        throw Error(ErrorKind::TypeMismatch,
                    std::string(sql::agg_fn_name(agg->fn)) + " over text column '" +
                        agg->ref.name + "'");
      }
      add_cast(agg->ref);
    } else if (auto* arith = std::get_if<SelectExpr::Arith>(&expr.node)) {
      visit(*arith->lhs);
      visit(*arith->rhs);
    }
  };
  for (auto& expr : repaired.select) visit(expr);

  return {std::move(repaired), std::move(edits)};
}

RepairReport repair_query(const std::string& sql_text, const TableData& table) {
  RepairReport report;
  report.original_sql = sql_text;
  SqlQuery query = sql::parse_sql(sql_text);

  auto [with_columns, column_edits] = repair_columns(query, table);
  auto [with_literals, literal_edits] = repair_literals(with_columns, table);
  auto [with_types, type_edits] = repair_types(with_literals, table);

  report.edits = std::move(column_edits);
  report.edits.insert(report.edits.end(), literal_edits.begin(), literal_edits.end());
  report.edits.insert(report.edits.end(), type_edits.begin(), type_edits.end());
  report.repaired_sql = report.edits.empty() ? sql_text : sql::print_sql(with_types);
  return report;
}

}  // namespace syntqa
