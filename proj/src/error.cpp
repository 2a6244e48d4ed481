#include "nmds/error.hpp"

namespace nmds {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::UndefinedCharacterArgument: return "UndefinedCharacterArgument";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::NonResidue: return "NonResidue";
    case Errc::InvalidSubfield: return "InvalidSubfield";
    case Errc::InvalidFieldSpec: return "InvalidFieldSpec";
    case Errc::InvalidElement: return "InvalidElement";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotEnoughPoints: return "NotEnoughPoints";
    case Errc::ZeroMultiplier: return "ZeroMultiplier";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::InvalidWitness: return "InvalidWitness";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::CombinatorialBudgetExceeded: return "CombinatorialBudgetExceeded";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::SumNotZero: return "SumNotZero";
    case Errc::NonUniformCharacter: return "NonUniformCharacter";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::CosetCollision: return "CosetCollision";
    case Errc::WitnessCheckFailed: return "WitnessCheckFailed";
    case Errc::RepresentativePairingImpossible: return "RepresentativePairingImpossible";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace nmds
