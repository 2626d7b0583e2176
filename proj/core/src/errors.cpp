#include "padspec/errors.hpp"

namespace padspec {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DenominatorZero: return "DenominatorZero";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::TowerMismatch: return "TowerMismatch";
    case Errc::NormNotLessThanOne: return "NormNotLessThanOne";
    case Errc::NormExceedsOne: return "NormExceedsOne";
    case Errc::NormNotOne: return "NormNotOne";
    case Errc::EvenPrime: return "EvenPrime";
    case Errc::NotUnit: return "NotUnit";
    case Errc::ImpreciseValue: return "ImpreciseValue";
    case Errc::ImpreciseEntry: return "ImpreciseEntry";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::DuplicateEigenvalue: return "DuplicateEigenvalue";
    case Errc::Singular: return "Singular";
    case Errc::NotStable: return "NotStable";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::NotApproxIdempotent: return "NotApproxIdempotent";
    case Errc::ReductionNotDiagonalisable: return "ReductionNotDiagonalisable";
    case Errc::NotNaive: return "NotNaive";
    case Errc::NotNaiveAtLevel: return "NotNaiveAtLevel";
    case Errc::NotUnitarilyDiagonalisable: return "NotUnitarilyDiagonalisable";
    case Errc::WrongShape: return "WrongShape";
    case Errc::SpectrumNotCovered: return "SpectrumNotCovered";
    case Errc::OverlappingPieces: return "OverlappingPieces";
    case Errc::WindowTooNarrow: return "WindowTooNarrow";
    case Errc::ZeroState: return "ZeroState";
    case Errc::NotNormal: return "NotNormal";
    case Errc::BadLiteral: return "BadLiteral";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
  }
  return "Unknown";
}

}  // namespace padspec
