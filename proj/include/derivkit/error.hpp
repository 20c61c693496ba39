#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derivkit {

/// Operands live over different variable lists and neither is a constant.
struct VariableMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was asked to handle an input shape it does not support.
struct UnsupportedShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested decision is not available for the recognized family.
struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Stable-ideal verification only handles (g) and (y, p(x)).
struct UnsupportedIdealShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " at column " + std::to_string(column)),
        column_(column) {}

  /// 1-based column of the offending character.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace derivkit
