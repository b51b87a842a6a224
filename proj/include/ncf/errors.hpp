#pragma once

#include <stdexcept>
#include <string>

namespace ncf {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in JSON reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define NCF_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

NCF_DEFINE_ERROR(DegreeOverflow);
NCF_DEFINE_ERROR(InconsistentPresentation);
NCF_DEFINE_ERROR(UnknownGenerator);
NCF_DEFINE_ERROR(JacobiFailure);
NCF_DEFINE_ERROR(NotCentralExtension);
NCF_DEFINE_ERROR(PreimageMismatch);
NCF_DEFINE_ERROR(LiftInconsistent);
NCF_DEFINE_ERROR(NotFiltered);
NCF_DEFINE_ERROR(ZeroSymbol);
NCF_DEFINE_ERROR(HypothesisFailure);
NCF_DEFINE_ERROR(GroupMismatch);
NCF_DEFINE_ERROR(NotClosed);
NCF_DEFINE_ERROR(NotAModule);
NCF_DEFINE_ERROR(ZeroModulus);
NCF_DEFINE_ERROR(BudgetExceeded);
NCF_DEFINE_ERROR(InvalidArgument);

#undef NCF_DEFINE_ERROR

/// Syntax error in one of the text DSLs; carries a 1-based location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("ParseError", what + " at " + std::to_string(line) + ":" +
                                std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ncf
