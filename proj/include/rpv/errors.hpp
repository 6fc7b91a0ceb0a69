#pragma once

#include <stdexcept>
#include <string>

namespace rpv {

// Every failure raised by the library derives from Error so callers can catch
// one type; the concrete type names the contract that was violated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RPV_DEFINE_ERROR(Name)                     \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Error(std::string(#Name ": ") + what) {} \
  };

RPV_DEFINE_ERROR(ContextError)
RPV_DEFINE_ERROR(DivisionByZero)
RPV_DEFINE_ERROR(BudgetExceeded)
RPV_DEFINE_ERROR(ParseError)
RPV_DEFINE_ERROR(IncompatibleDerivation)
RPV_DEFINE_ERROR(ModeError)
RPV_DEFINE_ERROR(EmptyInput)
RPV_DEFINE_ERROR(UnsupportedEquation)
RPV_DEFINE_ERROR(NotPV)
RPV_DEFINE_ERROR(StabilizationError)
RPV_DEFINE_ERROR(BadIdeal)
RPV_DEFINE_ERROR(NotInGroup)
RPV_DEFINE_ERROR(WitnessNotFound)
RPV_DEFINE_ERROR(Unsupported)
RPV_DEFINE_ERROR(BadField)

#undef RPV_DEFINE_ERROR

}  // namespace rpv
