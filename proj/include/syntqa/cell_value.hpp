#pragma once

#include <string>
#include <string_view>

namespace syntqa {

/// A typed table cell: empty, a finite decimal, or non-empty text.
class CellValue {
 public:
  enum class Kind { Empty, Number, Text };

  CellValue() = default;

  static CellValue empty();
  static CellValue number(double value);
  static CellValue text(std::string value);

  /// Parses a raw cell string: trims, empty -> Empty, numeric (with
  /// thousands separators and trailing '%' stripped) -> Number, else Text.
  static CellValue from_raw(std::string_view raw);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_text() const { return kind_ == Kind::Text; }

  double number_value() const { return number_; }
  const std::string& text_value() const { return text_; }

  /// Canonical string form; Empty renders as "".
  std::string display() const;

  bool operator==(const CellValue& other) const;
  bool operator!=(const CellValue& other) const { return !(*this == other); }

 private:
  Kind kind_ = Kind::Empty;
  double number_ = 0.0;
  std::string text_;
};

}  // namespace syntqa
