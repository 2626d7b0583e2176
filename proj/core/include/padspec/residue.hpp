#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padspec/scalar.hpp"
#include "padspec/tower.hpp"

namespace padspec {

/// Polynomial over the residue field, coefficients low to high, no trailing
/// zeros (the zero polynomial has no coefficients).
class ResiduePoly {
 public:
  ResiduePoly() = default;
  ResiduePoly(TowerRef tower, std::vector<Fq> coeffs);
  static ResiduePoly constant(TowerRef tower, const Fq& c);
  /// T - root
  static ResiduePoly linear(TowerRef tower, const Fq& root);

  const TowerRef& tower() const { return tower_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Fq& lead() const { return c_.back(); }
  Fq operator()(const Fq& x) const;

  ResiduePoly monic() const;
  ResiduePoly derivative() const;

  friend ResiduePoly operator+(const ResiduePoly& a, const ResiduePoly& b);
  friend ResiduePoly operator-(const ResiduePoly& a, const ResiduePoly& b);
  friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b);
  ResiduePoly scaled(const Fq& k) const;
  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<ResiduePoly, ResiduePoly> divmod(const ResiduePoly& d) const;
  friend bool operator==(const ResiduePoly& a, const ResiduePoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  TowerRef tower_;
  std::vector<Fq> c_;
};

ResiduePoly poly_gcd(ResiduePoly a, ResiduePoly b);

/// Dense matrix over the residue field.
class ResidueMatrix {
 public:
  ResidueMatrix() = default;
  ResidueMatrix(TowerRef tower, std::size_t rows, std::size_t cols);
  static ResidueMatrix identity(TowerRef tower, std::size_t n);

  const TowerRef& tower() const { return tower_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fq& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Fq& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b);
  friend ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b);
  friend ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b);
  ResidueMatrix scaled(const Fq& k) const;
  friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  bool is_zero() const;
  bool is_diagonal() const;
  bool is_scalar() const;
  std::vector<Fq> column(std::size_t j) const;

  std::string to_string() const;

 private:
  TowerRef tower_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fq> a_;
};

/// Reduced row echelon form and pivot columns.
std::pair<ResidueMatrix, std::vector<std::size_t>> rref(ResidueMatrix m);
std::size_t rank(const ResidueMatrix& m);
/// Columns form a basis of the right kernel.
ResidueMatrix kernel_basis(const ResidueMatrix& m);
std::optional<ResidueMatrix> inverse(const ResidueMatrix& m);
/// P(M) by Horner.
ResidueMatrix evaluate(const ResiduePoly& p, const ResidueMatrix& m);

/// Roots in F_q with multiplicities, sorted by the residue-field order.
std::vector<std::pair<Fq, int>> roots_in_field(const ResiduePoly& p);
bool is_squarefree(const ResiduePoly& p);
ResiduePoly minimal_polynomial(const ResidueMatrix& m);
/// det(T I - M) by the division-free Berkowitz recurrence.
ResiduePoly characteristic_polynomial(const ResidueMatrix& m);

enum class ResidueFailure { NotSplit, NotSemisimple };
std::string_view failure_name(ResidueFailure r);

struct ResidueDiagOutcome {
  bool diagonalisable = false;
  std::vector<std::pair<Fq, int>> eigenvalues;  // sorted, with multiplicity
  ResidueMatrix basis;                          // eigenvector columns, grouped
  ResidueFailure reason = ResidueFailure::NotSplit;
  ResiduePoly witness;
};

ResidueDiagOutcome diagonalise_residue(const ResidueMatrix& m);

/// e_mu with e_mu(mu) = 1 and e_mu(nu) = 0 at the other nodes.
std::vector<ResiduePoly> lagrange_idempotents(const TowerRef& tower, const std::vector<Fq>& nodes);

}  // namespace padspec
