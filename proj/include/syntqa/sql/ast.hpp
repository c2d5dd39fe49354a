#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "syntqa/cell_value.hpp"

namespace syntqa::sql {

enum class AggFn { Count, Sum, Avg, Min, Max };
enum class ArithOp { Add, Sub, Mul, Div };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge, Like, In };
enum class SortDir { Asc, Desc };

std::string_view agg_fn_name(AggFn fn);
std::string_view cmp_op_name(CmpOp op);
char arith_op_char(ArithOp op);

/// A column reference; `numeric_cast` marks CAST(col AS NUMBER), which makes
/// the executor read cells through leading-number extraction.
struct ColumnRef {
  std::string name;
  bool numeric_cast = false;

  bool operator==(const ColumnRef&) const = default;
};

struct SelectExpr {
  struct Column {
    ColumnRef ref;
    bool operator==(const Column&) const = default;
  };
  struct Agg {
    AggFn fn = AggFn::Count;
    bool star = false;  ///< COUNT(*) only
    ColumnRef ref;      ///< unused when star
    bool operator==(const Agg&) const = default;
  };
  struct Arith {
    ArithOp op = ArithOp::Add;
    std::unique_ptr<SelectExpr> lhs;
    std::unique_ptr<SelectExpr> rhs;
  };

  std::variant<Column, Agg, Arith> node;

  SelectExpr() : node(Column{}) {}
  explicit SelectExpr(Column c) : node(std::move(c)) {}
  explicit SelectExpr(Agg a) : node(std::move(a)) {}
  explicit SelectExpr(Arith a) : node(std::move(a)) {}

  SelectExpr(const SelectExpr& other);
  SelectExpr& operator=(const SelectExpr& other);
  SelectExpr(SelectExpr&&) = default;
  SelectExpr& operator=(SelectExpr&&) = default;

  bool is_column() const { return std::holds_alternative<Column>(node); }
  bool is_agg() const { return std::holds_alternative<Agg>(node); }
  bool is_arith() const { return std::holds_alternative<Arith>(node); }
  /// Aggregates and arithmetic yield one value per row group.
  bool is_scalar() const { return !is_column(); }

  bool operator==(const SelectExpr& other) const;
};

struct Condition {
  ColumnRef column;
  CmpOp op = CmpOp::Eq;
  std::vector<CellValue> values;  ///< exactly one except for IN

  const CellValue& value() const { return values.front(); }
  bool operator==(const Condition&) const = default;
};

struct OrderBy {
  ColumnRef column;
  SortDir dir = SortDir::Asc;
  bool operator==(const OrderBy&) const = default;
};

struct SqlQuery {
  std::vector<SelectExpr> select;
  std::string from_table = "t";
  std::vector<Condition> where;  ///< AND-joined
  std::optional<std::string> group_by;
  std::optional<OrderBy> order_by;
  std::optional<long long> limit;

  bool operator==(const SqlQuery&) const = default;
};

/// Canonical rendering; parse_sql(print_sql(q)) == q.
std::string print_sql(const SqlQuery& query);

}  // namespace syntqa::sql
