#include "syntqa/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

#include "syntqa/errors.hpp"

namespace syntqa {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::DuplicateColumn: return "DuplicateColumn";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::UnknownTable: return "UnknownTable";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::InvalidRecord: return "InvalidRecord";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::EmptyAggregate: return "EmptyAggregate";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::MismatchedIds: return "MismatchedIds";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::UnscriptedModule: return "UnscriptedModule";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::TemplateMissing: return "TemplateMissing";
    case ErrorKind::MissingInstance: return "MissingInstance";
    case ErrorKind::MissingPrediction: return "MissingPrediction";
    case ErrorKind::UnpairedInstance: return "UnpairedInstance";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
  }
  return "Error";
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_ws = true;  // swallow leading whitespace
  for (char c : s) {
    if (is_space(c)) {
      in_ws = true;
    } else {
      if (in_ws && !out.empty()) out.push_back(' ');
      out.push_back(c);
      in_ws = false;
    }
  }
  return out;
}

std::string strip_surrounding_quotes(std::string_view s) {
  if (s.size() >= 2) {
    char f = s.front(), b = s.back();
    if ((f == '"' && b == '"') || (f == '\'' && b == '\'')) {
      return std::string(s.substr(1, s.size() - 2));
    }
  }
  return std::string(s);
}

std::string normalize_name(std::string_view s) { return to_lower(trim(s)); }

std::string normalize_loose(std::string_view s) { return to_lower(collapse_whitespace(s)); }

std::string normalize_token(std::string_view token) {
  std::size_t b = 0, e = token.size();
  while (b < e && is_punct(token[b])) ++b;
  while (e > b && is_punct(token[e - 1])) --e;
  return to_lower(token.substr(b, e - b));
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) {
      std::string t = normalize_token(s.substr(start, i - start));
      if (!t.empty()) tokens.push_back(std::move(t));
    }
  }
  return tokens;
}

std::optional<double> parse_number(std::string_view s) {
  std::string cleaned = trim(s);
  if (cleaned.empty()) return std::nullopt;
  // thousands separators
  cleaned.erase(std::remove(cleaned.begin(), cleaned.end(), ','), cleaned.end());
  // one trailing percent sign
  if (!cleaned.empty() && cleaned.back() == '%') {
    cleaned.pop_back();
    cleaned = trim(cleaned);
  }
  if (cleaned.empty()) return std::nullopt;
  // from_chars does not accept a leading '+'
  std::size_t off = cleaned[0] == '+' ? 1 : 0;
  if (off >= cleaned.size()) return std::nullopt;
  // reject inf/nan spellings up front; from_chars would accept them
  char first = cleaned[off] == '-' && off + 1 < cleaned.size() ? cleaned[off + 1] : cleaned[off];
  if (!is_digit(first) && first != '.') return std::nullopt;
  double value = 0;
  const char* begin = cleaned.data() + off;
  const char* end = cleaned.data() + cleaned.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<double> leading_number(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  // currency symbols: '$' plus the UTF-8 encodings of a few common signs
  static const char* kCurrency[] = {"$", "\xC2\xA3", "\xC2\xA5", "\xE2\x82\xAC"};
  for (const char* sym : kCurrency) {
    std::size_t n = std::strlen(sym);
    if (s.size() - i >= n && s.substr(i, n) == sym) {
      i += n;
      break;
    }
  }
  while (i < s.size() && is_space(s[i])) ++i;
  std::size_t start = i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  bool seen_dot = false;
  std::string prefix;
  if (i > start && s[start] == '-') prefix.push_back('-');
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (is_digit(c)) {
      prefix.push_back(c);
      ++digits;
    } else if (c == ',' && digits > 0) {
      continue;  // thousands separator inside the prefix
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
      prefix.push_back(c);
    } else {
      break;
    }
  }
  if (digits == 0) return std::nullopt;
  if (!prefix.empty() && prefix.back() == '.') prefix.pop_back();
  return parse_number(prefix);
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

bool is_numeric_token(std::string_view token) {
  if (parse_number(token)) return true;
  // ordinals: digits followed by st/nd/rd/th
  std::size_t i = 0;
  while (i < token.size() && is_digit(token[i])) ++i;
  if (i == 0 || token.size() - i != 2) return false;
  std::string suffix = to_lower(token.substr(i));
  return suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th";
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool like_match(std::string_view pattern, std::string_view text) {
  std::string p = to_lower(pattern);
  std::string t = to_lower(text);
  // iterative wildcard match with backtracking over the last '%'
  std::size_t pi = 0, ti = 0;
  std::size_t star = std::string::npos, match = 0;
  while (ti < t.size()) {
    if (pi < p.size() && (p[pi] == t[ti])) {
      ++pi;
      ++ti;
    } else if (pi < p.size() && p[pi] == '%') {
      star = pi++;
      match = ti;
    } else if (star != std::string::npos) {
      pi = star + 1;
      ti = ++match;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '%') ++pi;
  return pi == p.size();
}

}  // namespace syntqa
