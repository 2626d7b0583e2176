#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padspec/pmatrix.hpp"

namespace padspec {

/// Closed disc {x : |x - center| <= p^(-radius_v2 / 2)}.
struct PDisc {
  PadicScalar center;
  int radius_v2 = 0;

  /// Radius p^(-r) for an integer digit exponent r.
  static PDisc with_exponent(PadicScalar center, int r) { return {std::move(center), 2 * r}; }
  bool contains(const PadicScalar& x) const;
  /// Ultrametric discs either nest or are disjoint.
  bool meets(const PDisc& o) const;
};

struct Piece {
  PDisc disc;
  PadicScalar value;
};

/// Finite list of disjoint discs with a value on each; OverlappingPieces otherwise.
class LocallyConstantFn {
 public:
  LocallyConstantFn() = default;
  explicit LocallyConstantFn(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  /// Index of the piece containing x.
  std::optional<std::size_t> locate(const PadicScalar& x) const;
  std::optional<PadicScalar> operator()(const PadicScalar& x) const;

  LocallyConstantFn scaled(const PadicScalar& g) const;
  /// Pieces on pairwise intersections, values added or multiplied (digits
  /// of the values are taken as exact).
  static LocallyConstantFn refine(const LocallyConstantFn& a, const LocallyConstantFn& b, bool multiply);

 private:
  std::vector<Piece> pieces_;
};

/// Which projection represented an eigenvalue cluster.
struct LevelChoice {
  PadicScalar lambda;
  int level = 0;
  Norm radius;  // ||r_level(A - lambda)||
  std::size_t piece = 0;
};

/// c(A) = sum c(lambda) P_i(A - lambda) over a disjoint subcover of the
/// spectrum, i the least level with ||r_i(A - lambda)|| inside the piece.
PMatrix apply_locally_constant(const LocallyConstantFn& c, const PMatrix& a, int slack = -1,
                               std::vector<LevelChoice>* trace = nullptr);

/// U diag(c(lambda_1), ..., c(lambda_n)) U^-1.
PMatrix apply_via_diagonalisation(const LocallyConstantFn& c, const PMatrix& a, int slack = -1);

struct IsometryReport {
  bool ok = true;
  std::vector<std::string> failures;  // identity name and residual norm
};

/// Norm identity for c, c', c + c' and c c', and the ring-map identities on
/// the common refinement, checked to p^(-(N - s)) relative to the operand norms.
IsometryReport calculus_isometry_check(const LocallyConstantFn& c, const LocallyConstantFn& c2, const PMatrix& a,
                                       int slack = -1);

}  // namespace padspec
