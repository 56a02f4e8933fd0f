#include "gdtt/errors.hpp"

namespace gdtt {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::UnboundVariable: return "UnboundVariable";
    case ErrKind::UnboundClock: return "UnboundClock";
    case ErrKind::UniverseEscape: return "UniverseEscape";
    case ErrKind::ClockNotFresh: return "ClockNotFresh";
    case ErrKind::NotLaterTyped: return "NotLaterTyped";
    case ErrKind::DSubstMismatch: return "DSubstMismatch";
    case ErrKind::ConversionFailed: return "ConversionFailed";
    case ErrKind::FuelExhausted: return "FuelExhausted";
    case ErrKind::ReflectionRefused: return "ReflectionRefused";
  }
  return "TypeError";
}

TypeError::TypeError(ErrKind k, std::string rule_, std::string detail_,
                     std::string expected_, std::string actual_)
    : kind(k),
      rule(std::move(rule_)),
      expected(std::move(expected_)),
      actual(std::move(actual_)),
      detail(std::move(detail_)) {
  message = std::string(err_kind_name(kind)) + " [" + rule + "]";
  if (!detail.empty()) message += " " + detail;
  if (!expected.empty()) message += " expected " + expected;
  if (!actual.empty()) message += " got " + actual;
}

ParseError::ParseError(int line_, int col_, std::string detail_)
    : line(line_), col(col_), detail(std::move(detail_)) {
  message = "parse error at " + std::to_string(line) + ":" +
            std::to_string(col) + ": " + detail;
}

}  // namespace gdtt
