#include "qlogic/error.hpp"

namespace qlogic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::BadPerp: return "BadPerp";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotOrthomodular: return "NotOrthomodular";
    case ErrorKind::InvalidBlock: return "InvalidBlock";
    case ErrorKind::AmalgamationConflict: return "AmalgamationConflict";
    case ErrorKind::MixedBase: return "MixedBase";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotAProjection: return "NotAProjection";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ToleranceViolated: return "ToleranceViolated";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotInContext: return "NotInContext";
    case ErrorKind::InvalidState: return "InvalidState";
  }
  return "Error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& detail,
                    const std::vector<std::string>& witness) {
  std::string msg{to_string(kind)};
  msg += ": ";
  msg += detail;
  if (!witness.empty()) {
    msg += " [witness:";
    for (const auto& w : witness) {
      msg += ' ';
      msg += w;
    }
    msg += ']';
  }
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& detail,
             std::vector<std::string> witness)
    : std::runtime_error(compose(kind, detail, witness)),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace qlogic
