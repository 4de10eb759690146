#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mloop {

enum class ErrorKind {
  BadDimension,
  NotLatinSquare,
  NoIdentity,
  ParseError,
  CrossLoop,
  OrderOverflow,
  NotNormal,
  NotNested,
  NotCML,
  NotASubloop,
  TrivialLoop,
  DegreeMismatch,
  NotNilpotent,
  NotSubgroup,
  ChainStalled,
  NotCommutative,
  BadGeneratorSpec,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the engine. what() starts with the kind name so
// CLI messages read e.g. "NotLatinSquare row=1 value=1 columns=0,1".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail.empty() ? std::string(to_string(kind))
                                          : std::string(to_string(kind)) + " " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mloop
