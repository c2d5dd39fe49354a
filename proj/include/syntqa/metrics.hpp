#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace syntqa {

inline constexpr double kNumericMatchTolerance = 1e-6;

/// Lowercase, trim, strip one layer of surrounding quotes, collapse internal
/// whitespace; numeric strings additionally canonicalize ("2,300" -> "2300").
std::string normalize_answer(std::string_view answer);

/// Multiset equality of answer lists after normalization; values parsing as
/// numbers compare numerically within tolerance.
bool exact_match(const std::vector<std::string>& predicted,
                 const std::vector<std::string>& gold);

/// Same comparison without the non-empty-gold precondition; used for
/// agreement checks between two predictions.
bool answers_agree(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Canonical key for an answer list: normalized answers, multiset-sorted,
/// joined with an unprintable separator. Equal keys imply exact_match.
std::string answer_list_key(const std::vector<std::string>& answers);

}  // namespace syntqa
