#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "syntqa/sql/ast.hpp"

namespace syntqa::sql {

/// Parses the single-table subset: SELECT exprs FROM name [WHERE cond AND
/// ...] [GROUP BY col] [ORDER BY col [ASC|DESC]] [LIMIT n]. Throws
/// Error(ParseError) with position and expectation on bad input.
SqlQuery parse_sql(std::string_view text);

/// Non-throwing variant; `error` (when given) receives the failure message.
std::optional<SqlQuery> try_parse_sql(std::string_view text, std::string* error = nullptr);

/// Occurrences of identifier tokens carrying one of the preprocessed-column
/// suffixes (_parsed, _first, _list); string literals are skipped.
int count_preprocessed_columns(std::string_view sql_text);

}  // namespace syntqa::sql
