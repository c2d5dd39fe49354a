#include "syntqa/sql/executor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa::sql {

namespace {

struct BoundColumn {
  int index = -1;
  bool numeric_cast = false;
};

class Executor {
 public:
  Executor(const SqlQuery& query, const TableData& table) : query_(query), table_(table) {}

  std::vector<CellValue> run() {
    validate_columns();
    std::vector<std::size_t> rows = filter_rows();
    if (query_.group_by) return run_grouped(rows);

    bool any_scalar = false, any_column = false;
    for (const auto& expr : query_.select) {
      (expr.is_scalar() ? any_scalar : any_column) = true;
    }
    if (any_scalar && any_column) {
      throw Error(ErrorKind::TypeMismatch,
                  "cannot mix aggregates and plain columns without GROUP BY");
    }
    if (any_scalar) {
      std::vector<CellValue> out;
      for (const auto& expr : query_.select) out.push_back(eval_scalar(expr, rows));
      return out;
    }
    return run_projection(rows);
  }

 private:
  BoundColumn bind(const ColumnRef& ref) const {
    int idx = table_.find_column(ref.name);
    if (idx < 0) {
      throw Error(ErrorKind::UnknownColumn, "no column '" + ref.name + "' in table '" +
                                                table_.id + "'");
    }
    return BoundColumn{idx, ref.numeric_cast};
  }

  void visit_refs(const SelectExpr& expr, const std::function<void(const ColumnRef&)>& fn) const {
    if (const auto* col = std::get_if<SelectExpr::Column>(&expr.node)) {
      fn(col->ref);
    } else if (const auto* agg = std::get_if<SelectExpr::Agg>(&expr.node)) {
      if (!agg->star) fn(agg->ref);
    } else {
      const auto& arith = std::get<SelectExpr::Arith>(expr.node);
      visit_refs(*arith.lhs, fn);
      visit_refs(*arith.rhs, fn);
    }
  }

  void validate_columns() const {
    auto check = [&](const ColumnRef& ref) { bind(ref); };
    for (const auto& expr : query_.select) visit_refs(expr, check);
    for (const auto& cond : query_.where) check(cond.column);
    if (query_.group_by) check(ColumnRef{*query_.group_by, false});
    if (query_.order_by) check(query_.order_by->column);
  }

  CellValue cell_at(std::size_t row, const BoundColumn& col) const {
    const CellValue& cell = table_.rows[row][col.index];
    if (!col.numeric_cast) return cell;
    if (cell.is_empty()) return cell;
    if (cell.is_number()) return cell;
    if (auto num = leading_number(cell.text_value())) return CellValue::number(*num);
    return CellValue::empty();
  }

  std::vector<std::size_t> filter_rows() const {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < table_.n_rows(); ++r) {
      bool keep = true;
      for (const auto& cond : query_.where) {
        BoundColumn col = bind(cond.column);
        CellValue cell = cell_at(r, col);
        bool match = false;
        if (cond.op == CmpOp::In) {
          for (const auto& value : cond.values) {
            if (cell_matches(cell, CmpOp::Eq, value)) {
              match = true;
              break;
            }
          }
        } else {
          match = cell_matches(cell, cond.op, cond.value());
        }
        if (!match) {
          keep = false;
          break;
        }
      }
      if (keep) rows.push_back(r);
    }
    return rows;
  }

  CellValue eval_agg(const SelectExpr::Agg& agg, const std::vector<std::size_t>& rows) const {
    if (agg.star) {
      return CellValue::number(static_cast<double>(rows.size()));
    }
    BoundColumn col = bind(agg.ref);
    std::vector<CellValue> cells;
    for (std::size_t r : rows) {
      CellValue cell = cell_at(r, col);
      if (!cell.is_empty()) cells.push_back(std::move(cell));
    }
    if (agg.fn == AggFn::Count) {
      return CellValue::number(static_cast<double>(cells.size()));
    }
    if (cells.empty()) {
      throw Error(ErrorKind::EmptyAggregate,
                  std::string(agg_fn_name(agg.fn)) + " over no values");
    }
    if (agg.fn == AggFn::Sum || agg.fn == AggFn::Avg) {
      double sum = 0.0;
      for (const auto& cell : cells) {
        auto num = cell_as_number(cell);
        if (!num) {
          throw Error(ErrorKind::TypeMismatch, std::string(agg_fn_name(agg.fn)) +
                                                   " over non-numeric column '" + agg.ref.name +
                                                   "'");
        }
        sum += *num;
      }
      double value = agg.fn == AggFn::Sum ? sum : sum / static_cast<double>(cells.size());
      return CellValue::number(value);
    }
    // MIN / MAX: numeric when every value reads as a number, else by
    // case-insensitive text; first occurrence wins ties.
    bool all_numeric = true;
    for (const auto& cell : cells) {
      if (!cell_as_number(cell)) {
        all_numeric = false;
        break;
      }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      int cmp;
      if (all_numeric) {
        double a = *cell_as_number(cells[i]);
        double b = *cell_as_number(cells[best]);
        cmp = a < b ? -1 : (a > b ? 1 : 0);
      } else {
        std::string a = to_lower(trim(cells[i].display()));
        std::string b = to_lower(trim(cells[best].display()));
        cmp = a.compare(b);
        cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
      }
      if ((agg.fn == AggFn::Min && cmp < 0) || (agg.fn == AggFn::Max && cmp > 0)) best = i;
    }
    return cells[best];
  }

  double eval_scalar_number(const SelectExpr& expr, const std::vector<std::size_t>& rows) const {
    CellValue value = eval_scalar(expr, rows);
    if (!value.is_number()) {
      throw Error(ErrorKind::TypeMismatch, "arithmetic over non-numeric value");
    }
    return value.number_value();
  }

  CellValue eval_scalar(const SelectExpr& expr, const std::vector<std::size_t>& rows) const {
    if (const auto* agg = std::get_if<SelectExpr::Agg>(&expr.node)) {
      return eval_agg(*agg, rows);
    }
    if (const auto* arith = std::get_if<SelectExpr::Arith>(&expr.node)) {
      double lhs = eval_scalar_number(*arith->lhs, rows);
      double rhs = eval_scalar_number(*arith->rhs, rows);
      double value = 0.0;
      switch (arith->op) {
        case ArithOp::Add: value = lhs + rhs; break;
        case ArithOp::Sub: value = lhs - rhs; break;
        case ArithOp::Mul: value = lhs * rhs; break;
        case ArithOp::Div:
          if (rhs == 0.0) throw Error(ErrorKind::DivideByZero, "division by zero");
          value = lhs / rhs;
          break;
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorKind::TypeMismatch, "non-finite arithmetic result");
      }
      return CellValue::number(value);
    }
    throw Error(ErrorKind::TypeMismatch, "bare column is not a scalar");
  }

  // Empty cells sort last regardless of direction; numbers sort before text.
  bool row_less(std::size_t a, std::size_t b, const BoundColumn& col, SortDir dir) const {
    CellValue ca = cell_at(a, col), cb = cell_at(b, col);
    if (ca.is_empty() || cb.is_empty()) return !ca.is_empty() && cb.is_empty();
    auto na = cell_as_number(ca), nb = cell_as_number(cb);
    int cmp;
    if (na && nb) {
      cmp = *na < *nb ? -1 : (*na > *nb ? 1 : 0);
    } else if (!na && !nb) {
      std::string sa = to_lower(trim(ca.display()));
      std::string sb = to_lower(trim(cb.display()));
      int c = sa.compare(sb);
      cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
    } else {
      cmp = na ? -1 : 1;
    }
    if (dir == SortDir::Desc) cmp = -cmp;
    return cmp < 0;
  }

  std::vector<CellValue> run_projection(std::vector<std::size_t> rows) const {
    if (query_.order_by) {
      BoundColumn col = bind(query_.order_by->column);
      SortDir dir = query_.order_by->dir;
      std::stable_sort(rows.begin(), rows.end(),
                       [&](std::size_t a, std::size_t b) { return row_less(a, b, col, dir); });
    }
    if (query_.limit && rows.size() > static_cast<std::size_t>(*query_.limit)) {
      rows.resize(static_cast<std::size_t>(*query_.limit));
    }
    std::vector<CellValue> out;
    for (std::size_t r : rows) {
      for (const auto& expr : query_.select) {
        const auto& col = std::get<SelectExpr::Column>(expr.node);
        out.push_back(cell_at(r, bind(col.ref)));
      }
    }
    return out;
  }

  static std::string group_key(const CellValue& cell) {
    switch (cell.kind()) {
      case CellValue::Kind::Empty: return "e:";
      case CellValue::Kind::Number: return "n:" + format_number(cell.number_value());
      case CellValue::Kind::Text: return "t:" + to_lower(trim(cell.text_value()));
    }
    return "e:";
  }

  std::vector<CellValue> run_grouped(const std::vector<std::size_t>& rows) const {
    BoundColumn group_col = bind(ColumnRef{*query_.group_by, false});
    std::string group_name = normalize_name(*query_.group_by);

    std::vector<std::string> keys;                  // first-occurrence order
    std::vector<std::vector<std::size_t>> groups;   // row indices per key
    for (std::size_t r : rows) {
      std::string key = group_key(table_.rows[r][group_col.index]);
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(key);
        groups.emplace_back();
        groups.back().push_back(r);
      } else {
        groups[static_cast<std::size_t>(it - keys.begin())].push_back(r);
      }
    }

    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    if (query_.order_by) {
      if (normalize_name(query_.order_by->column.name) != group_name) {
        throw Error(ErrorKind::TypeMismatch,
                    "ORDER BY under GROUP BY must use the grouped column");
      }
      BoundColumn col = bind(query_.order_by->column);
      SortDir dir = query_.order_by->dir;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return row_less(groups[a].front(), groups[b].front(), col, dir);
      });
    }
    if (query_.limit && order.size() > static_cast<std::size_t>(*query_.limit)) {
      order.resize(static_cast<std::size_t>(*query_.limit));
    }

    std::vector<CellValue> out;
    for (std::size_t g : order) {
      for (const auto& expr : query_.select) {
        if (const auto* col = std::get_if<SelectExpr::Column>(&expr.node)) {
          if (normalize_name(col->ref.name) != group_name) {
            throw Error(ErrorKind::TypeMismatch,
                        "plain column under GROUP BY must be the grouped column");
          }
          out.push_back(cell_at(groups[g].front(), bind(col->ref)));
        } else {
          out.push_back(eval_scalar(expr, groups[g]));
        }
      }
    }
    return out;
  }

  const SqlQuery& query_;
  const TableData& table_;
};

}  // namespace

std::optional<double> cell_as_number(const CellValue& cell) {
  if (cell.is_number()) return cell.number_value();
  if (cell.is_text()) return parse_number(cell.text_value());
  return std::nullopt;
}

bool cell_matches(const CellValue& cell, CmpOp op, const CellValue& literal) {
  if (cell.is_empty()) return false;
  if (op == CmpOp::Like) {
    return like_match(literal.display(), trim(cell.display()));
  }
  auto cn = cell_as_number(cell);
  auto ln = cell_as_number(literal);
  int cmp;
  if (cn && ln) {
    cmp = *cn < *ln ? -1 : (*cn > *ln ? 1 : 0);
  } else {
    std::string cs = to_lower(trim(cell.display()));
    std::string ls = to_lower(trim(literal.display()));
    int c = cs.compare(ls);
    cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op) {
    case CmpOp::Eq: return cmp == 0;
    case CmpOp::Ne: return cmp != 0;
    case CmpOp::Lt: return cmp < 0;
    case CmpOp::Le: return cmp <= 0;
    case CmpOp::Gt: return cmp > 0;
    case CmpOp::Ge: return cmp >= 0;
    default: return false;
  }
}

std::vector<CellValue> execute(const SqlQuery& query, const TableData& table) {
  if (query.select.empty()) {
    throw Error(ErrorKind::TypeMismatch, "query has no select expressions");
  }
  return Executor(query, table).run();
}

}  // namespace syntqa::sql
