#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padspec {

/// Failure kinds raised by the library. Certified negative answers (a matrix
/// that is not unitarily diagonalisable, a residue matrix that does not
/// split) are returned as values, never thrown.
enum class Errc {
  InvalidArgument,
  DenominatorZero,
  DivisionByZero,
  TowerMismatch,
  NormNotLessThanOne,
  NormExceedsOne,
  NormNotOne,
  EvenPrime,
  NotUnit,
  ImpreciseValue,
  ImpreciseEntry,
  PrecisionExhausted,
  ZeroPolynomial,
  FieldTooLarge,
  DuplicateEigenvalue,
  Singular,
  NotStable,
  ZeroMatrix,
  NotApproxIdempotent,
  ReductionNotDiagonalisable,
  NotNaive,
  NotNaiveAtLevel,
  NotUnitarilyDiagonalisable,
  WrongShape,
  SpectrumNotCovered,
  OverlappingPieces,
  WindowTooNarrow,
  ZeroState,
  NotNormal,
  BadLiteral,
  DigitOutOfRange,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace padspec
