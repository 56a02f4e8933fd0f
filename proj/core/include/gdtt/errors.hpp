#pragma once

#include <exception>
#include <string>

namespace gdtt {

enum class ErrKind {
  UnboundVariable,
  UnboundClock,
  UniverseEscape,
  ClockNotFresh,
  NotLaterTyped,
  DSubstMismatch,
  ConversionFailed,
  FuelExhausted,
  ReflectionRefused,
};

const char* err_kind_name(ErrKind k);

struct TypeError : std::exception {
  ErrKind kind;
  std::string rule;      // name of the failing rule
  std::string expected;  // printed expected type (may be empty)
  std::string actual;    // printed actual type (may be empty)
  std::string detail;
  std::string message;

  TypeError(ErrKind k, std::string rule_, std::string detail_ = "",
            std::string expected_ = "", std::string actual_ = "");

  const char* what() const noexcept override { return message.c_str(); }
};

struct FuelExhaustedError : TypeError {
  FuelExhaustedError()
      : TypeError(ErrKind::FuelExhausted, "Fuel",
                  "fix unfolding budget exhausted") {}
};

struct ParseError : std::exception {
  int line, col;
  std::string detail;
  std::string message;
  ParseError(int line_, int col_, std::string detail_);
  const char* what() const noexcept override { return message.c_str(); }
};

// Fuel bounds the number of fix unfoldings (and reflection rewrites) per
// kernel query.
struct Fuel {
  int remaining;
  void spend() {
    if (remaining <= 0) throw FuelExhaustedError{};
    --remaining;
  }
};

}  // namespace gdtt
