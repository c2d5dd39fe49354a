#include "syntqa/sql/ast.hpp"

#include <cctype>

#include "syntqa/text.hpp"

namespace syntqa::sql {

std::string_view agg_fn_name(AggFn fn) {
  switch (fn) {
    case AggFn::Count: return "COUNT";
    case AggFn::Sum: return "SUM";
    case AggFn::Avg: return "AVG";
    case AggFn::Min: return "MIN";
    case AggFn::Max: return "MAX";
  }
  return "COUNT";
}

std::string_view cmp_op_name(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Like: return "LIKE";
    case CmpOp::In: return "IN";
  }
  return "=";
}

char arith_op_char(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return '+';
    case ArithOp::Sub: return '-';
    case ArithOp::Mul: return '*';
    case ArithOp::Div: return '/';
  }
  return '+';
}

namespace {

std::variant<SelectExpr::Column, SelectExpr::Agg, SelectExpr::Arith> clone_node(
    const std::variant<SelectExpr::Column, SelectExpr::Agg, SelectExpr::Arith>& node) {
  if (const auto* col = std::get_if<SelectExpr::Column>(&node)) return *col;
  if (const auto* agg = std::get_if<SelectExpr::Agg>(&node)) return *agg;
  const auto& arith = std::get<SelectExpr::Arith>(node);
  SelectExpr::Arith copy;
  copy.op = arith.op;
  copy.lhs = std::make_unique<SelectExpr>(*arith.lhs);
  copy.rhs = std::make_unique<SelectExpr>(*arith.rhs);
  return copy;
}

}  // namespace

SelectExpr::SelectExpr(const SelectExpr& other) : node(clone_node(other.node)) {}

SelectExpr& SelectExpr::operator=(const SelectExpr& other) {
  if (this != &other) node = clone_node(other.node);
  return *this;
}

bool SelectExpr::operator==(const SelectExpr& other) const {
  if (node.index() != other.node.index()) return false;
  if (const auto* col = std::get_if<Column>(&node)) {
    return *col == std::get<Column>(other.node);
  }
  if (const auto* agg = std::get_if<Agg>(&node)) {
    return *agg == std::get<Agg>(other.node);
  }
  const auto& a = std::get<Arith>(node);
  const auto& b = std::get<Arith>(other.node);
  return a.op == b.op && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}

namespace {

bool is_bare_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  static const char* kKeywords[] = {
      "select", "from", "where", "and", "group", "by",   "order",  "asc",  "desc", "limit",
      "in",     "like", "count", "sum", "avg",   "min",  "max",    "cast", "as",   "number",
      "numeric", "real",
  };
  std::string lower = to_lower(name);
  for (const char* kw : kKeywords) {
    if (lower == kw) return false;
  }
  return true;
}

std::string print_identifier(const std::string& name) {
  if (is_bare_identifier(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string print_column(const ColumnRef& ref) {
  if (ref.numeric_cast) return "CAST(" + print_identifier(ref.name) + " AS NUMBER)";
  return print_identifier(ref.name);
}

std::string print_literal(const CellValue& value) {
  if (value.is_number()) return format_number(value.number_value());
  std::string out = "'";
  for (char c : value.display()) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string print_expr(const SelectExpr& expr) {
  if (const auto* col = std::get_if<SelectExpr::Column>(&expr.node)) {
    return print_column(col->ref);
  }
  if (const auto* agg = std::get_if<SelectExpr::Agg>(&expr.node)) {
    std::string inner = agg->star ? "*" : print_column(agg->ref);
    return std::string(agg_fn_name(agg->fn)) + "(" + inner + ")";
  }
  const auto& arith = std::get<SelectExpr::Arith>(expr.node);
  auto operand = [](const SelectExpr& e) {
    std::string s = print_expr(e);
    if (e.is_arith()) return "(" + s + ")";
    return s;
  };
  return operand(*arith.lhs) + " " + arith_op_char(arith.op) + " " + operand(*arith.rhs);
}

}  // namespace

std::string print_sql(const SqlQuery& query) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < query.select.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_expr(query.select[i]);
  }
  out += " FROM " + print_identifier(query.from_table);
  if (!query.where.empty()) {
    out += " WHERE ";
    for (std::size_t i = 0; i < query.where.size(); ++i) {
      if (i > 0) out += " AND ";
      const Condition& cond = query.where[i];
      out += print_column(cond.column);
      if (cond.op == CmpOp::In) {
        out += " IN (";
        for (std::size_t j = 0; j < cond.values.size(); ++j) {
          if (j > 0) out += ", ";
          out += print_literal(cond.values[j]);
        }
        out += ")";
      } else {
        out += " " + std::string(cmp_op_name(cond.op)) + " " + print_literal(cond.value());
      }
    }
  }
  if (query.group_by) {
    out += " GROUP BY " + print_identifier(*query.group_by);
  }
  if (query.order_by) {
    out += " ORDER BY " + print_column(query.order_by->column);
    out += query.order_by->dir == SortDir::Desc ? " DESC" : " ASC";
  }
  if (query.limit) {
    out += " LIMIT " + std::to_string(*query.limit);
  }
  return out;
}

}  // namespace syntqa::sql
