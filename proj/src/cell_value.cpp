#include "syntqa/cell_value.hpp"

#include <cassert>
#include <cmath>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

CellValue CellValue::empty() { return CellValue(); }

CellValue CellValue::number(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidRecord, "cell number must be finite");
  }
  CellValue v;
  v.kind_ = Kind::Number;
  v.number_ = value;
  return v;
}

CellValue CellValue::text(std::string value) {
  if (value.empty()) {
    throw Error(ErrorKind::InvalidRecord, "cell text must be non-empty");
  }
  CellValue v;
  v.kind_ = Kind::Text;
  v.text_ = std::move(value);
  return v;
}

CellValue CellValue::from_raw(std::string_view raw) {
  std::string trimmed = trim(raw);
  if (trimmed.empty()) return empty();
  if (auto num = parse_number(trimmed)) return number(*num);
  return text(std::move(trimmed));
}

std::string CellValue::display() const {
  switch (kind_) {
    case Kind::Empty: return "";
    case Kind::Number: return format_number(number_);
    case Kind::Text: return text_;
  }
  return "";
}

bool CellValue::operator==(const CellValue& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Empty: return true;
    case Kind::Number: return number_ == other.number_;
    case Kind::Text: return text_ == other.text_;
  }
  return false;
}

}  // namespace syntqa
