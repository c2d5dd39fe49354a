#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syntqa {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Collapses runs of internal whitespace to single spaces (also trims).
std::string collapse_whitespace(std::string_view s);

/// Strips one layer of matching surrounding quotes ("..." or '...').
std::string strip_surrounding_quotes(std::string_view s);

/// Lowercase + trim; identity used for column-name matching.
std::string normalize_name(std::string_view s);

/// Lowercase + trim + collapse internal whitespace; used for fuzzy matching
/// and answer comparison.
std::string normalize_loose(std::string_view s);

/// Whitespace split, lowercase, punctuation stripped at token edges.
/// Empty tokens are dropped.
std::vector<std::string> tokenize(std::string_view s);

/// Edge-punctuation strip + lowercase for a single token.
std::string normalize_token(std::string_view token);

/// Strict numeric parse: trims, drops thousands separators (commas) and one
/// trailing percent sign, then requires the whole remainder to parse as a
/// finite decimal.
std::optional<double> parse_number(std::string_view s);

/// Longest numeric prefix after skipping leading whitespace and a currency
/// symbol ($, two byte signs are handled as raw UTF-8). "3rd" -> 3,
/// "$2,300 total" -> 2300, "abc" -> nullopt.
std::optional<double> leading_number(std::string_view s);

/// Shortest round-trip formatting; parse_number(format_number(x)) == x.
std::string format_number(double value);

/// True for integer, decimal, or ordinal ("3rd") tokens.
bool is_numeric_token(std::string_view token);

/// Byte-level Levenshtein distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Case-insensitive '%'-wildcard match (no single-char wildcard).
bool like_match(std::string_view pattern, std::string_view text);

}  // namespace syntqa
