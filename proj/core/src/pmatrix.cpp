#include "padspec/pmatrix.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace padspec {

PMatrix::PMatrix(TowerRef tower, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols), a_(rows * cols, PadicScalar::zero(tower_)) {}

PMatrix PMatrix::identity(TowerRef tower, std::size_t n) {
  PMatrix m(tower, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicScalar::one(tower);
  return m;
}

PMatrix PMatrix::from_ints(TowerRef tower, const std::vector<std::vector<long long>>& rows) {
  PMatrix m(tower, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) fail(Errc::WrongShape, "ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = PadicScalar::from_int(rows[i][j], tower);
  }
  return m;
}

PMatrix PMatrix::diagonal(TowerRef tower, const std::vector<PadicScalar>& d) {
  PMatrix m(std::move(tower), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

void PMatrix::check_same(const PMatrix& o) const {
  if (tower_ != o.tower_ && !tower_->same_as(*o.tower_)) fail(Errc::TowerMismatch, "matrices over different towers");
}

PMatrix PMatrix::column(std::size_t j) const { return block(0, j, rows_, 1); }

PMatrix PMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(Errc::WrongShape, "block out of range");
  PMatrix b(tower_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void PMatrix::set_block(std::size_t r0, std::size_t c0, const PMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) fail(Errc::WrongShape, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

PMatrix PMatrix::transpose() const {
  PMatrix t(tower_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<PadicScalar> PMatrix::diagonal_entries() const {
  std::vector<PadicScalar> d;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
  return d;
}

PMatrix operator+(const PMatrix& a, const PMatrix& b) {
  a.check_same(b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::WrongShape, "sum shape mismatch");
  PMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

PMatrix operator-(const PMatrix& a, const PMatrix& b) {
  a.check_same(b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::WrongShape, "difference shape mismatch");
  PMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

PMatrix operator*(const PMatrix& a, const PMatrix& b) {
  a.check_same(b);
  if (a.cols_ != b.rows_) fail(Errc::WrongShape, "product shape mismatch");
  PMatrix r(a.tower_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const PadicScalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const PadicScalar& y = b(k, j);
        if (!y.is_zero()) r(i, j) += x * y;
      }
    }
  return r;
}

PMatrix PMatrix::scaled(const PadicScalar& k) const {
  PMatrix r = *this;
  for (auto& x : r.a_) x = x * k;
  return r;
}

PMatrix PMatrix::shifted(int k) const {
  PMatrix r = *this;
  for (auto& x : r.a_) x = x.shifted(k);
  return r;
}

PMatrix PMatrix::minus_scalar(const PadicScalar& lambda) const {
  if (!square()) fail(Errc::WrongShape, "M - lambda I needs a square matrix");
  PMatrix r = *this;
  for (std::size_t i = 0; i < rows_; ++i) r(i, i) -= lambda;
  return r;
}

PMatrix PMatrix::promote() const {
  PMatrix r = *this;
  for (auto& x : r.a_) x = x.promote();
  return r;
}

bool operator==(const PMatrix& a, const PMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::string PMatrix::debug_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).debug_string();
    os << "]\n";
  }
  return os.str();
}

namespace {

struct EntryScan {
  int min_unit = std::numeric_limits<int>::max();
  int min_imprecise = std::numeric_limits<int>::max();
};

template <class Range>
EntryScan scan(const Range& xs) {
  EntryScan s;
  for (const PadicScalar& x : xs) {
    if (x.is_unit_state()) s.min_unit = std::min(s.min_unit, x.v2());
    else if (x.is_imprecise()) s.min_imprecise = std::min(s.min_imprecise, x.abs_v2());
  }
  return s;
}

}  // namespace

Norm sup_norm(const PMatrix& m) {
  const EntryScan s = scan(m.entries());
  if (s.min_imprecise <= s.min_unit && s.min_imprecise != std::numeric_limits<int>::max()) {
    fail(Errc::ImpreciseEntry, "an imprecise entry may carry the maximum norm");
  }
  if (s.min_unit == std::numeric_limits<int>::max()) return Norm::null();
  return Norm::of_v2(s.min_unit);
}

Norm norm_bound(const PMatrix& m) {
  const EntryScan s = scan(m.entries());
  const int b = std::min(s.min_unit, s.min_imprecise);
  if (b == std::numeric_limits<int>::max()) return Norm::null();
  return Norm::of_v2(b);
}

bool negligible(const PMatrix& m, int k2) {
  return std::all_of(m.entries().begin(), m.entries().end(), [k2](const PadicScalar& x) { return x.negligible(k2); });
}

bool congruent(const PMatrix& a, const PMatrix& b, int k2) { return negligible(a - b, k2); }

int agreement_v2(const PMatrix& a, const PMatrix& b, int cap) {
  const Norm n = norm_bound(a - b);
  return n.zero ? cap : std::min(cap, n.v2);
}

PMatrix normalized(const PMatrix& m, int* shift) {
  const Norm n = sup_norm(m);
  if (n.zero) fail(Errc::ZeroMatrix, "cannot normalise the zero matrix");
  const int k = m.tower()->uniformiser_units(n.v2);
  if (shift) *shift = k;
  return m.shifted(-k);
}

ResidueMatrix matrix_reduction(const PMatrix& m) {
  ResidueMatrix r(m.tower(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_scalar(m(i, j));
  return r;
}

PMatrix inverse(const PMatrix& m) {
  if (!m.square()) fail(Errc::WrongShape, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  PMatrix a = m;
  PMatrix b = PMatrix::identity(m.tower(), n);
  auto swap_rows = [n](PMatrix& x, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(x(r1, j), x(r2, j));
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r) {
      if (!a(r, c).is_unit_state()) continue;
      if (piv == n || a(r, c).v2() < a(piv, c).v2()) piv = r;
    }
    if (piv == n) fail(Errc::Singular, "no pivot of certified nonzero norm in column " + std::to_string(c));
    swap_rows(a, piv, c);
    swap_rows(b, piv, c);
    const PadicScalar inv = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * inv;
      b(c, j) = b(c, j) * inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const PadicScalar f = a(r, c);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        b(r, j) -= f * b(c, j);
      }
      a(r, c) = PadicScalar::zero(m.tower());
    }
  }
  return b;
}

UnitarityReport is_unitary(const PMatrix& u) {
  if (!u.square()) fail(Errc::WrongShape, "unitarity of a non-square matrix");
  for (const auto& x : u.entries()) {
    if (x.is_zero()) continue;
    if (x.is_imprecise()) {
      if (x.abs_v2() <= 0) fail(Errc::ImpreciseEntry, "entry of unknown norm");
      continue;
    }
    if (x.v2() < 0) return {false, "norm exceeds one"};
  }
  if (rank(matrix_reduction(u)) < u.rows()) return {false, "reduction singular"};
  return {true, "ok"};
}

int tolerance_v2(const FieldTower& t, std::size_t n, int slack) {
  const int s = slack < 0 ? default_slack(t.p(), n) : slack;
  return 2 * (t.precision() - s);
}

PMatrix orthonormal_basis_of_span(const PMatrix& vectors, int slack) {
  const TowerRef& tower = vectors.tower();
  const std::size_t n = vectors.rows();
  const int tol = tolerance_v2(*tower, n, slack);
  std::vector<std::vector<PadicScalar>> basis;
  std::vector<std::size_t> pivot_rows;
  const PadicScalar zero = PadicScalar::zero(tower);
  bool any_nonzero = false;

  auto normalise = [&](std::vector<PadicScalar>& c) -> bool {
    const EntryScan s = scan(c);
    if (s.min_unit >= tol && s.min_imprecise >= tol) return false;
    if (s.min_imprecise <= s.min_unit) {
      fail(Errc::PrecisionExhausted, "column norm undecidable at this precision");
    }
    const int k = tower->uniformiser_units(s.min_unit);
    for (auto& x : c) x = x.shifted(-k);
    return true;
  };

  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    std::vector<PadicScalar> c(n, zero);
    for (std::size_t i = 0; i < n; ++i) c[i] = vectors(i, j);
    if (!normalise(c)) continue;
    any_nonzero = true;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const PadicScalar coef = c[pivot_rows[k]];
      if (coef.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) c[i] -= coef * basis[k][i];
      c[pivot_rows[k]] = zero;
    }
    if (!normalise(c)) continue;
    std::size_t r = 0;
    while (r < n && !(c[r].is_unit_state() && c[r].v2() == 0)) ++r;
    const PadicScalar inv = c[r].inverse();
    for (auto& x : c) x = x * inv;
    c[r] = PadicScalar::one(tower);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const PadicScalar coef = basis[k][r];
      if (coef.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) basis[k][i] -= coef * c[i];
      basis[k][r] = zero;
    }
    basis.push_back(std::move(c));
    pivot_rows.push_back(r);
  }
  if (!any_nonzero) fail(Errc::ZeroMatrix, "all vectors vanish");
  PMatrix out(tower, n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) out(i, k) = basis[k][i];
  return out;
}

PMatrix restriction_matrix(const PMatrix& m, const PMatrix& c, int slack) {
  if (!m.square() || m.rows() != c.rows()) fail(Errc::WrongShape, "restriction shape mismatch");
  const TowerRef& tower = m.tower();
  const std::size_t n = m.rows();
  const std::size_t d = c.cols();
  auto [echelon, rows] = rref(matrix_reduction(c.transpose()));
  (void)echelon;
  if (rows.size() < d) fail(Errc::InvalidArgument, "columns are not orthonormal");
  PMatrix cr(tower, d, d);
  PMatrix mc = m * c;
  PMatrix mcr(tower, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cr(i, j) = c(rows[i], j);
      mcr(i, j) = mc(rows[i], j);
    }
  PMatrix r = inverse(cr) * mcr;
  const Norm mn = norm_bound(m);
  if (mn.zero) return r;
  const PMatrix residual = mc - c * r;
  const int k2 = mn.v2 + tolerance_v2(*tower, n, slack);
  if (!negligible(residual, k2)) {
    const Norm rn = norm_bound(residual);
    fail(Errc::NotStable, "residual " + rn.to_string() + " exceeds tolerance");
  }
  return r;
}

}  // namespace padspec
