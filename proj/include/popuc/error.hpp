#ifndef POPUC_ERROR_HPP
#define POPUC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace popuc {

enum class ErrorKind {
  NotUnimodular,
  OutsideDisk,
  BoundaryAmbiguous,
  DuplicatePoint,
  SharedPoint,
  SizeMismatch,
  InvalidArgument,
  NotUnitary,
  NotRankOne,
  ZeroDifference,
  PreconditionViolation,
  NumericalFailure,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace popuc

#endif  // POPUC_ERROR_HPP
