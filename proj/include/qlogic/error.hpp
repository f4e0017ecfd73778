#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlogic {

enum class ErrorKind {
  Parse,
  UnknownLabel,
  NotAPoset,
  NotALattice,
  BadPerp,
  BudgetExceeded,
  NotOrthomodular,
  InvalidBlock,
  AmalgamationConflict,
  MixedBase,
  DimMismatch,
  NotAProjection,
  NotHermitian,
  ToleranceViolated,
  NotOrthogonal,
  NotCommuting,
  PreconditionViolated,
  NotInContext,
  InvalidState,
};

std::string_view to_string(ErrorKind kind);

/// Domain error. `witness()` holds the labels (or short descriptions) of the
/// concrete objects that violate the law named in the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail,
        std::vector<std::string> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace qlogic
