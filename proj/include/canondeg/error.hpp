#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace canondeg {

enum class ErrorKind {
  InvalidInput,
  NotSquarefree,
  NotDivisor,
  NotCoprime,
  InvalidDiscriminant,
  InternalInconsistency,
  NotTorsionFree,
  InvalidDomain,
  ShapeMismatch,
  ZeroInput,
  EmptyProduct,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotTorsionFree: return "NotTorsionFree";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::EmptyProduct: return "EmptyProduct";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// InternalInconsistency means a formula bug, not bad input.
#define CANONDEG_CHECK(cond, kind, msg)            \
  do {                                             \
    if (!(cond)) throw ::canondeg::Error(kind, msg); \
  } while (0)

}  // namespace canondeg
