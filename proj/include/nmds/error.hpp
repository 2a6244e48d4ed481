#pragma once

#include <stdexcept>
#include <string>

namespace nmds {

enum class Errc {
  // field arithmetic
  DivisionByZero,
  UndefinedCharacterArgument,
  UnsupportedField,
  NonResidue,
  InvalidSubfield,
  InvalidFieldSpec,
  InvalidElement,
  // linear algebra
  DimensionMismatch,
  // codes
  NotEnoughPoints,
  ZeroMultiplier,
  DuplicatePoint,
  InvalidWitness,
  BudgetExceeded,
  CombinatorialBudgetExceeded,
  SearchBudgetExceeded,
  // multiplier solver
  SumNotZero,
  NonUniformCharacter,
  VerificationFailed,
  // constructions
  InvalidParams,
  ParityViolation,
  CosetCollision,
  WitnessCheckFailed,
  RepresentativePairingImpossible,
  // documents
  MalformedInput,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nmds
