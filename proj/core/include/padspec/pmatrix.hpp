#pragma once

#include <string>
#include <vector>

#include "padspec/residue.hpp"
#include "padspec/scalar.hpp"

namespace padspec {

/// Dense matrix over a tower, acting on k^n with the max-coordinate norm.
class PMatrix {
 public:
  PMatrix() = default;
  PMatrix(TowerRef tower, std::size_t rows, std::size_t cols);
  static PMatrix identity(TowerRef tower, std::size_t n);
  static PMatrix from_ints(TowerRef tower, const std::vector<std::vector<long long>>& rows);
  static PMatrix diagonal(TowerRef tower, const std::vector<PadicScalar>& d);

  const TowerRef& tower() const { return tower_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  PadicScalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const PadicScalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<PadicScalar>& entries() const { return a_; }

  PMatrix column(std::size_t j) const;
  PMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const PMatrix& b);
  PMatrix transpose() const;
  std::vector<PadicScalar> diagonal_entries() const;

  friend PMatrix operator+(const PMatrix& a, const PMatrix& b);
  friend PMatrix operator-(const PMatrix& a, const PMatrix& b);
  friend PMatrix operator*(const PMatrix& a, const PMatrix& b);
  PMatrix scaled(const PadicScalar& k) const;
  /// Multiply every entry by pi^k.
  PMatrix shifted(int k) const;
  /// M - lambda I
  PMatrix minus_scalar(const PadicScalar& lambda) const;
  PMatrix promote() const;

  /// Entrywise representation equality.
  friend bool operator==(const PMatrix& a, const PMatrix& b);

  std::string debug_string() const;

 private:
  void check_same(const PMatrix& o) const;
  TowerRef tower_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<PadicScalar> a_;
};

/// max |M_ij|; ImpreciseEntry when an ImpreciseZero might be the maximum.
Norm sup_norm(const PMatrix& m);
/// An upper bound for sup_norm that never throws.
Norm norm_bound(const PMatrix& m);
/// Every entry certainly has norm <= p^(-k2/2).
bool negligible(const PMatrix& m, int k2);
bool congruent(const PMatrix& a, const PMatrix& b, int k2);
/// Largest k2 (capped) such that a - b is negligible at k2.
int agreement_v2(const PMatrix& a, const PMatrix& b, int cap);

/// pi^(-k) M with norm one; k returned through `shift`.
PMatrix normalized(const PMatrix& m, int* shift = nullptr);

ResidueMatrix matrix_reduction(const PMatrix& m);

/// Gauss-Jordan elimination with max-norm pivoting.
PMatrix inverse(const PMatrix& m);

struct UnitarityReport {
  bool unitary = false;
  /// "ok", "norm exceeds one" or "reduction singular".
  std::string clause;
};
/// |U| <= 1 and the reduction of U is invertible over the residue field.
UnitarityReport is_unitary(const PMatrix& u);

/// Orthonormal columns spanning the column space of `vectors`. Columns whose
/// remainder is below p^(-(N - slack)) after elimination count as dependent.
PMatrix orthonormal_basis_of_span(const PMatrix& vectors, int slack = -1);

/// R with M C = C R, for C with orthonormal columns spanning an M-stable space.
PMatrix restriction_matrix(const PMatrix& m, const PMatrix& c, int slack = -1);

/// Residual tolerance in doubled digits, 2 (N - s).
int tolerance_v2(const FieldTower& t, std::size_t n, int slack = -1);

}  // namespace padspec
