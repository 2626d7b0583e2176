#pragma once

#include <string>
#include <vector>

#include "padspec/pmatrix.hpp"
#include "padspec/residue.hpp"

namespace padspec {

struct ReductiveSpectrum {
  int normalizer = 0;  // k with |pi^k| = ||A||
  ResidueMatrix reduction;
  /// Roots of the characteristic polynomial of the reduction, with algebraic
  /// multiplicity (only those lying in the residue field).
  std::vector<std::pair<Fq, int>> eigenvalues;
  ResidueDiagOutcome outcome;
};

ReductiveSpectrum reductive_spectrum(const PMatrix& a);

/// Iterates x -> 3x^2 - 2x^3 until x^2 - x vanishes at working precision.
PMatrix lift_idempotent(const PMatrix& p0, int* iterations = nullptr);

/// sum c_k A^k followed by lift_idempotent.
PMatrix idempotent_from_lift(const PMatrix& a, const std::vector<PadicScalar>& coeffs);

struct SpectralClass {
  Fq lambda;
  PMatrix projection;
  std::size_t rank = 0;
};

struct PartitionOfUnity {
  std::vector<SpectralClass> classes;  // sorted by lambda
  PMatrix source;
  /// Doubled digits to which sum = I, idempotence, orthogonality and
  /// commutation were verified.
  int certified_v2 = 0;
};

/// One projection per residue eigenvalue of A (||A|| = 1).
PartitionOfUnity partition_of_unity(const PMatrix& a);

struct SigmaClass {
  Fq lambda;
  PMatrix projection;
  std::size_t dimension = 0;
  int normalizer = 0;
};

/// Classes of the normalised reduction of M; no shift is applied here.
std::vector<SigmaClass> sigma_classes(const PMatrix& m);

}  // namespace padspec
