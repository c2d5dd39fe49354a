#include "syntqa/sql/parser.hpp"

#include <cctype>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa::sql {

namespace {

enum class TokKind {
  Ident,        // bare or quoted identifier (quoted never keyword-folds)
  Keyword,      // lowercased keyword text in `text`
  String,       // contents in `text`
  Number,       // value in `number`
  Punct,        // operator/punct in `text`
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

bool is_keyword(const std::string& lower) {
  static const char* kKeywords[] = {
      "select", "from", "where", "and", "group", "by",   "order",  "asc",  "desc", "limit",
      "in",     "like", "count", "sum", "avg",   "min",  "max",    "cast", "as",   "number",
      "numeric", "real",
  };
  for (const char* kw : kKeywords) {
    if (lower == kw) return true;
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_ = {TokKind::End, "", 0.0, pos_};
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      std::string lower = to_lower(word);
      if (is_keyword(lower)) {
        current_ = {TokKind::Keyword, lower, 0.0, start};
      } else {
        current_ = {TokKind::Ident, word, 0.0, start};
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
              text_[pos_] == 'e' || text_[pos_] == 'E' ||
              ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      auto value = parse_number(text_.substr(start, pos_ - start));
      if (!value) {
        throw Error(ErrorKind::ParseError, "bad numeric literal", start, "number");
      }
      current_ = {TokKind::Number, std::string(text_.substr(start, pos_ - start)), *value, start};
      return;
    }
    if (c == '\'') {
      std::size_t start = pos_++;
      std::string contents;
      while (true) {
        if (pos_ >= text_.size()) {
          throw Error(ErrorKind::ParseError, "unterminated string literal", start, "'");
        }
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            contents.push_back('\'');
            pos_ += 2;
          } else {
            ++pos_;
            break;
          }
        } else {
          contents.push_back(text_[pos_++]);
        }
      }
      current_ = {TokKind::String, std::move(contents), 0.0, start};
      return;
    }
    if (c == '"' || c == '`') {
      char quote = c;
      std::size_t start = pos_++;
      std::string contents;
      while (true) {
        if (pos_ >= text_.size()) {
          throw Error(ErrorKind::ParseError, "unterminated quoted identifier", start,
                      std::string(1, quote));
        }
        if (text_[pos_] == quote) {
          if (quote == '"' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            contents.push_back('"');
            pos_ += 2;
          } else {
            ++pos_;
            break;
          }
        } else {
          contents.push_back(text_[pos_++]);
        }
      }
      current_ = {TokKind::Ident, std::move(contents), 0.0, start};
      return;
    }
    // operators and punctuation
    std::size_t start = pos_;
    auto two = text_.substr(pos_, 2);
    if (two == "!=" || two == "<=" || two == ">=" || two == "<>") {
      pos_ += 2;
      current_ = {TokKind::Punct, two == "<>" ? "!=" : std::string(two), 0.0, start};
      return;
    }
    static const std::string kSingles = "(),*+-/=<>";
    if (kSingles.find(c) != std::string::npos) {
      ++pos_;
      current_ = {TokKind::Punct, std::string(1, c), 0.0, start};
      return;
    }
    throw Error(ErrorKind::ParseError, "unexpected character '" + std::string(1, c) + "'", start,
                "token");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {}

  SqlQuery parse() {
    expect_keyword("select");
    SqlQuery query;
    query.select.push_back(parse_expr());
    while (accept_punct(",")) query.select.push_back(parse_expr());
    expect_keyword("from");
    query.from_table = expect_identifier("table name");
    if (accept_keyword("where")) {
      query.where.push_back(parse_condition());
      while (accept_keyword("and")) query.where.push_back(parse_condition());
    }
    if (accept_keyword("group")) {
      expect_keyword("by");
      query.group_by = expect_identifier("column name");
    }
    if (accept_keyword("order")) {
      expect_keyword("by");
      OrderBy order;
      order.column = parse_column_ref();
      if (accept_keyword("desc")) order.dir = SortDir::Desc;
      else if (accept_keyword("asc")) order.dir = SortDir::Asc;
      query.order_by = order;
    }
    if (accept_keyword("limit")) {
      const Token& tok = lexer_.peek();
      if (tok.kind != TokKind::Number || tok.number <= 0 ||
          tok.number != static_cast<double>(static_cast<long long>(tok.number))) {
        fail("LIMIT needs a positive integer", "positive integer");
      }
      query.limit = static_cast<long long>(lexer_.take().number);
    }
    if (lexer_.peek().kind != TokKind::End) {
      fail("trailing input after query", "end of input");
    }
    return query;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const std::string& expected) {
    throw Error(ErrorKind::ParseError, message, lexer_.peek().pos, expected);
  }

  bool accept_keyword(std::string_view kw) {
    if (lexer_.peek().kind == TokKind::Keyword && lexer_.peek().text == kw) {
      lexer_.take();
      return true;
    }
    return false;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) {
      fail("unexpected token '" + lexer_.peek().text + "'", std::string(kw));
    }
  }

  bool accept_punct(std::string_view p) {
    if (lexer_.peek().kind == TokKind::Punct && lexer_.peek().text == p) {
      lexer_.take();
      return true;
    }
    return false;
  }

  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) {
      fail("unexpected token '" + lexer_.peek().text + "'", std::string(p));
    }
  }

  std::string expect_identifier(const std::string& what) {
    if (lexer_.peek().kind != TokKind::Ident) {
      fail("unexpected token '" + lexer_.peek().text + "'", what);
    }
    return lexer_.take().text;
  }

  std::optional<AggFn> peek_agg_fn() {
    if (lexer_.peek().kind != TokKind::Keyword) return std::nullopt;
    const std::string& kw = lexer_.peek().text;
    if (kw == "count") return AggFn::Count;
    if (kw == "sum") return AggFn::Sum;
    if (kw == "avg") return AggFn::Avg;
    if (kw == "min") return AggFn::Min;
    if (kw == "max") return AggFn::Max;
    return std::nullopt;
  }

  ColumnRef parse_column_ref() {
    if (accept_keyword("cast")) {
      expect_punct("(");
      std::string name = expect_identifier("column name");
      expect_keyword("as");
      if (!(accept_keyword("number") || accept_keyword("numeric") || accept_keyword("real"))) {
        fail("unsupported cast target", "NUMBER");
      }
      expect_punct(")");
      return ColumnRef{std::move(name), true};
    }
    return ColumnRef{expect_identifier("column name"), false};
  }

  SelectExpr parse_factor() {
    if (accept_punct("(")) {
      SelectExpr inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (auto fn = peek_agg_fn()) {
      std::size_t pos = lexer_.peek().pos;
      lexer_.take();
      expect_punct("(");
      SelectExpr::Agg agg;
      agg.fn = *fn;
      if (accept_punct("*")) {
        if (*fn != AggFn::Count) {
          throw Error(ErrorKind::ParseError, "'*' is only valid in COUNT", pos, "column name");
        }
        agg.star = true;
      } else {
        agg.ref = parse_column_ref();
      }
      expect_punct(")");
      return SelectExpr(std::move(agg));
    }
    return SelectExpr(SelectExpr::Column{parse_column_ref()});
  }

  SelectExpr combine(SelectExpr lhs, ArithOp op, SelectExpr rhs, std::size_t pos) {
    if (!lhs.is_scalar() || !rhs.is_scalar()) {
      throw Error(ErrorKind::ParseError,
                  "arithmetic operands must be aggregates or arithmetic results", pos,
                  "scalar operand");
    }
    SelectExpr::Arith arith;
    arith.op = op;
    arith.lhs = std::make_unique<SelectExpr>(std::move(lhs));
    arith.rhs = std::make_unique<SelectExpr>(std::move(rhs));
    return SelectExpr(std::move(arith));
  }

  SelectExpr parse_term() {
    SelectExpr lhs = parse_factor();
    while (lexer_.peek().kind == TokKind::Punct &&
           (lexer_.peek().text == "*" || lexer_.peek().text == "/")) {
      std::size_t pos = lexer_.peek().pos;
      ArithOp op = lexer_.take().text == "*" ? ArithOp::Mul : ArithOp::Div;
      lhs = combine(std::move(lhs), op, parse_factor(), pos);
    }
    return lhs;
  }

  SelectExpr parse_expr() {
    SelectExpr lhs = parse_term();
    while (lexer_.peek().kind == TokKind::Punct &&
           (lexer_.peek().text == "+" || lexer_.peek().text == "-")) {
      std::size_t pos = lexer_.peek().pos;
      ArithOp op = lexer_.take().text == "+" ? ArithOp::Add : ArithOp::Sub;
      lhs = combine(std::move(lhs), op, parse_term(), pos);
    }
    return lhs;
  }

  CellValue parse_literal() {
    bool negative = false;
    if (lexer_.peek().kind == TokKind::Punct && lexer_.peek().text == "-") {
      lexer_.take();
      negative = true;
    }
    const Token& tok = lexer_.peek();
    if (tok.kind == TokKind::Number) {
      double value = lexer_.take().number;
      return CellValue::number(negative ? -value : value);
    }
    if (negative) fail("expected number after '-'", "number");
    if (tok.kind == TokKind::String) {
      std::size_t pos = tok.pos;
      std::string contents = lexer_.take().text;
      if (trim(contents).empty()) {
        throw Error(ErrorKind::ParseError, "empty string literals are not supported", pos,
                    "non-empty string");
      }
      return CellValue::text(std::move(contents));
    }
    fail("expected literal", "number or string");
  }

  Condition parse_condition() {
    Condition cond;
    cond.column = parse_column_ref();
    const Token& tok = lexer_.peek();
    if (tok.kind == TokKind::Keyword && tok.text == "like") {
      std::size_t pos = tok.pos;
      lexer_.take();
      cond.op = CmpOp::Like;
      CellValue pattern = parse_literal();
      if (!pattern.is_text()) {
        throw Error(ErrorKind::ParseError, "LIKE needs a string pattern", pos, "string");
      }
      cond.values.push_back(std::move(pattern));
      return cond;
    }
    if (tok.kind == TokKind::Keyword && tok.text == "in") {
      lexer_.take();
      cond.op = CmpOp::In;
      expect_punct("(");
      cond.values.push_back(parse_literal());
      while (accept_punct(",")) cond.values.push_back(parse_literal());
      expect_punct(")");
      return cond;
    }
    if (tok.kind == TokKind::Punct) {
      if (tok.text == "=") cond.op = CmpOp::Eq;
      else if (tok.text == "!=") cond.op = CmpOp::Ne;
      else if (tok.text == "<") cond.op = CmpOp::Lt;
      else if (tok.text == "<=") cond.op = CmpOp::Le;
      else if (tok.text == ">") cond.op = CmpOp::Gt;
      else if (tok.text == ">=") cond.op = CmpOp::Ge;
      else fail("expected comparison operator", "comparison operator");
      lexer_.take();
      cond.values.push_back(parse_literal());
      return cond;
    }
    fail("expected comparison operator", "comparison operator");
  }

  Lexer lexer_;
};

}  // namespace

SqlQuery parse_sql(std::string_view text) {
  if (trim(text).empty()) {
    throw Error(ErrorKind::ParseError, "empty query", 0, "SELECT");
  }
  return Parser(text).parse();
}

std::optional<SqlQuery> try_parse_sql(std::string_view text, std::string* error) {
  try {
    return parse_sql(text);
  } catch (const Error& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

int count_preprocessed_columns(std::string_view sql_text) {
  static const std::string_view kSuffixes[] = {"_parsed", "_first", "_list"};
  int count = 0;
  std::size_t i = 0;
  auto check = [&](std::string_view word) {
    for (auto suffix : kSuffixes) {
      if (word.size() >= suffix.size() &&
          word.substr(word.size() - suffix.size()) == suffix) {
        ++count;
        return;
      }
    }
  };
  while (i < sql_text.size()) {
    char c = sql_text[i];
    if (c == '\'') {
      ++i;
      while (i < sql_text.size()) {
        if (sql_text[i] == '\'' && i + 1 < sql_text.size() && sql_text[i + 1] == '\'') i += 2;
        else if (sql_text[i] == '\'') { ++i; break; }
        else ++i;
      }
    } else if (c == '"' || c == '`') {
      char quote = c;
      std::size_t start = ++i;
      while (i < sql_text.size() && sql_text[i] != quote) ++i;
      check(sql_text.substr(start, i - start));
      if (i < sql_text.size()) ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < sql_text.size() &&
             (std::isalnum(static_cast<unsigned char>(sql_text[i])) || sql_text[i] == '_')) {
        ++i;
      }
      check(sql_text.substr(start, i - start));
    } else {
      ++i;
    }
  }
  return count;
}

}  // namespace syntqa::sql
