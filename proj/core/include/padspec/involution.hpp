#pragma once

#include <optional>
#include <string>

#include "padspec/pmatrix.hpp"

namespace padspec {

enum class InvolutionKind { Symmetric, StarSymmetric, GaloisSymmetric };

std::string_view involution_name(InvolutionKind k);

enum class Prediction { Diagonalisable, NotDiagonalisable, Undetermined };

std::string_view prediction_name(Prediction p);

/// Closed-form data for a 2x2 matrix invariant under one of the involutions
///   symmetric:  M = M^t
///   star:       M = [[a, b], [p b, c]] over the ramified tower k(sqrt p)
///   galois:     M = conj(M)^t over Q_p(i), p = 3 mod 4, f = 2
struct InvolutionReport {
  InvolutionKind kind = InvolutionKind::Symmetric;
  Prediction prediction = Prediction::Undetermined;
  PadicScalar discriminant;
  /// Filled when the discriminant has a square root in the tower.
  std::optional<PadicScalar> lambda_plus, lambda_minus;
  /// Columns f+ = (-2b, (a-c) - sqrt(disc)), f- = (-2b, (a-c) + sqrt(disc)).
  std::optional<PMatrix> eigenvectors;
  /// Whether the normalised eigenvectors are orthonormal.
  std::optional<bool> eigenvectors_orthonormal;
  std::string note;
};

InvolutionReport involution_criteria(const PMatrix& m, InvolutionKind kind);

/// Image of x in a larger unramified tower with the same p, N and
/// ramification; the source degree must divide the target degree.
PadicScalar embed(const PadicScalar& x, const TowerRef& target);
PMatrix embed(const PMatrix& m, const TowerRef& target);

}  // namespace padspec
