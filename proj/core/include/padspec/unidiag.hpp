#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padspec/pmatrix.hpp"
#include "padspec/residue.hpp"
#include "padspec/spectral.hpp"

namespace padspec {

/// One recursion call of the diagonaliser.
struct ClassNode {
  int depth = 0;
  PadicScalar shift;             // the (1,1) entry subtracted at this block
  int normalizer = 0;            // k in B = pi^(-k) (R - shift); 0 for scalar leaves
  std::optional<Fq> label;       // residue class this block was cut out by
  std::size_t dimension = 0;
  bool scalar_leaf = false;  // block already diagonal at working precision
  std::vector<ClassNode> children;
};

struct TrailStep {
  PadicScalar shift;
  int normalizer = 0;
  std::optional<Fq> label;  // class chosen to descend; empty at the failing level
};

struct FailureCertificate {
  int depth = 0;
  int input_normalizer = 0;
  std::vector<TrailStep> trail;
  ResidueMatrix offending;
  ResidueFailure reason = ResidueFailure::NotSemisimple;
  ResiduePoly witness;
};

struct UnidiagOutcome {
  bool success = false;
  PMatrix u;
  std::vector<PadicScalar> d;
  ClassNode class_tree;
  /// Verified digits of ||MU - UD|| / ||M||.
  int certified_precision = 0;
  int certified_v2 = 0;
  int depth = 0;  // splitting levels used
  std::optional<FailureCertificate> certificate;
};

/// Decides unitary diagonalisability of a square matrix by recursive
/// shift, rescale, reduce and split. Slack < 0 selects ceil(log_p n) + 2.
UnidiagOutcome unitary_diagonalise(const PMatrix& m, int slack = -1);

/// Replays the trail of a certificate on M and returns the residue matrix
/// reached at the failing level.
ResidueMatrix replay_certificate(const PMatrix& m, const FailureCertificate& cert, int slack = -1);

/// Eigenvalues of M; NotUnitarilyDiagonalisable otherwise.
std::vector<PadicScalar> spectrum_kvalued(const PMatrix& m, int slack = -1);

struct NaiveLevel {
  PMatrix p;
  PMatrix r;
};

/// P_0 .. P_levels and r_i = P_i A. An intermediate r_i below `floor_v2`
/// (default: ||A|| p^(-(N - s))), lowered by the rescaling of r_(i-1),
/// counts as zero. NotNaiveAtLevel when a normalised r_i has a
/// non-diagonalisable reduction.
std::vector<NaiveLevel> naive_sequence(const PMatrix& a, int levels, int slack = -1,
                                       std::optional<int> floor_v2 = std::nullopt);
NaiveLevel naive_maps(const PMatrix& a, int level, int slack = -1);

/// Default zero floor for r_i: ||A|| p^(-(N - s)), as doubled digits.
int naive_floor(const PMatrix& a, int slack = -1);
/// (P_{level+1}, r_{level+1}) from (P_level, r_level).
NaiveLevel naive_step(const PMatrix& a, const NaiveLevel& cur, int level, int floor_v2);
/// Zero floor for r_{level+1}: rescaling r_level up to the size of A
/// magnifies rounding in the next projection by the same factor.
int naive_next_floor(const PMatrix& a, const NaiveLevel& cur, int floor_v2);

}  // namespace padspec
