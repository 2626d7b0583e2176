#include "padspec/residue.hpp"

#include <algorithm>
#include <sstream>

#include "padspec/errors.hpp"

namespace padspec {

ResiduePoly::ResiduePoly(TowerRef tower, std::vector<Fq> coeffs) : tower_(std::move(tower)), c_(std::move(coeffs)) {
  trim();
}

ResiduePoly ResiduePoly::constant(TowerRef tower, const Fq& c) { return ResiduePoly(std::move(tower), {c}); }

ResiduePoly ResiduePoly::linear(TowerRef tower, const Fq& root) {
  const Fq neg = tower->fq_neg(root);
  const Fq one = tower->fq_one();
  return ResiduePoly(std::move(tower), {neg, one});
}

void ResiduePoly::trim() {
  while (!c_.empty() && c_.back() == Fq{}) c_.pop_back();
}

Fq ResiduePoly::operator()(const Fq& x) const {
  Fq acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = tower_->fq_add(tower_->fq_mul(acc, x), *it);
  return acc;
}

ResiduePoly ResiduePoly::monic() const {
  if (is_zero()) fail(Errc::ZeroPolynomial, "monic of the zero polynomial");
  return scaled(tower_->fq_inv(lead()));
}

ResiduePoly ResiduePoly::derivative() const {
  std::vector<Fq> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(tower_->fq_mul(tower_->fq_from_int(static_cast<long long>(i)), c_[i]));
  return ResiduePoly(tower_, std::move(d));
}

ResiduePoly operator+(const ResiduePoly& a, const ResiduePoly& b) {
  const TowerRef& t = a.tower_ ? a.tower_ : b.tower_;
  std::vector<Fq> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Fq x = i < a.c_.size() ? a.c_[i] : Fq{};
    const Fq y = i < b.c_.size() ? b.c_[i] : Fq{};
    r[i] = t->fq_add(x, y);
  }
  return ResiduePoly(t, std::move(r));
}

ResiduePoly operator-(const ResiduePoly& a, const ResiduePoly& b) {
  const TowerRef& t = a.tower_ ? a.tower_ : b.tower_;
  return a + b.scaled(t->fq_neg(t->fq_one()));
}

ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
  const TowerRef& t = a.tower_ ? a.tower_ : b.tower_;
  if (a.is_zero() || b.is_zero()) return ResiduePoly(t, {});
  std::vector<Fq> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = t->fq_add(r[i + j], t->fq_mul(a.c_[i], b.c_[j]));
  return ResiduePoly(t, std::move(r));
}

ResiduePoly ResiduePoly::scaled(const Fq& k) const {
  std::vector<Fq> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = tower_->fq_mul(c_[i], k);
  return ResiduePoly(tower_, std::move(r));
}

std::pair<ResiduePoly, ResiduePoly> ResiduePoly::divmod(const ResiduePoly& d) const {
  if (d.is_zero()) fail(Errc::ZeroPolynomial, "division by the zero polynomial");
  const FieldTower& t = *tower_;
  std::vector<Fq> rem = c_;
  const int dd = d.degree();
  std::vector<Fq> quo(std::max<int>(degree() - dd + 1, 0));
  const Fq inv = t.fq_inv(d.lead());
  for (int k = degree(); k >= dd; --k) {
    const Fq coef = t.fq_mul(rem[k], inv);
    quo[k - dd] = coef;
    if (coef == Fq{}) continue;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] = t.fq_sub(rem[k - dd + j], t.fq_mul(coef, d.c_[j]));
  }
  return {ResiduePoly(tower_, std::move(quo)), ResiduePoly(tower_, std::move(rem))};
}

std::string ResiduePoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c_[k] == Fq{}) continue;
    if (!first) os << " + ";
    first = false;
    const bool one = c_[k] == tower_->fq_one();
    if (!one || k == 0) os << tower_->fq_to_string(c_[k]);
    if (k > 0) os << (one ? "" : "*") << "T" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

ResiduePoly poly_gcd(ResiduePoly a, ResiduePoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

ResidueMatrix::ResidueMatrix(TowerRef tower, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols), a_(rows * cols) {}

ResidueMatrix ResidueMatrix::identity(TowerRef tower, std::size_t n) {
  ResidueMatrix m(tower, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = tower->fq_one();
  return m;
}

ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.cols_ != b.rows_) fail(Errc::WrongShape, "residue matrix product shape mismatch");
  const FieldTower& t = *a.tower_;
  ResidueMatrix r(a.tower_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Fq x = a(i, k);
      if (x == Fq{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = t.fq_add(r(i, j), t.fq_mul(x, b(k, j)));
    }
  return r;
}

ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::WrongShape, "residue matrix sum shape mismatch");
  ResidueMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.tower_->fq_add(a.a_[i], b.a_[i]);
  return r;
}

ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::WrongShape, "residue matrix difference shape mismatch");
  ResidueMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.tower_->fq_sub(a.a_[i], b.a_[i]);
  return r;
}

ResidueMatrix ResidueMatrix::scaled(const Fq& k) const {
  ResidueMatrix r = *this;
  for (auto& x : r.a_) x = tower_->fq_mul(x, k);
  return r;
}

bool ResidueMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Fq& x) { return x == Fq{}; });
}

bool ResidueMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != Fq{}) return false;
  return true;
}

bool ResidueMatrix::is_scalar() const {
  if (!is_diagonal()) return false;
  for (std::size_t i = 1; i < std::min(rows_, cols_); ++i)
    if ((*this)(i, i) != (*this)(0, 0)) return false;
  return true;
}

std::vector<Fq> ResidueMatrix::column(std::size_t j) const {
  std::vector<Fq> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::string ResidueMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << tower_->fq_to_string((*this)(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

std::pair<ResidueMatrix, std::vector<std::size_t>> rref(ResidueMatrix m) {
  const FieldTower& t = *m.tower();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c) == Fq{}) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Fq inv = t.fq_inv(m(row, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = t.fq_mul(m(row, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == Fq{}) continue;
      const Fq k = m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = t.fq_sub(m(r, j), t.fq_mul(k, m(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const ResidueMatrix& m) { return rref(m).second.size(); }

ResidueMatrix kernel_basis(const ResidueMatrix& m) {
  const FieldTower& t = *m.tower();
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  ResidueMatrix k(m.tower(), m.cols(), m.cols() - pivots.size());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(free, out) = t.fq_one();
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], out) = t.fq_neg(r(i, free));
    ++out;
  }
  return k;
}

std::optional<ResidueMatrix> inverse(const ResidueMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::WrongShape, "inverse of a non-square residue matrix");
  const std::size_t n = m.rows();
  ResidueMatrix aug(m.tower(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.tower()->fq_one();
  }
  auto [r, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
  ResidueMatrix inv(m.tower(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

ResidueMatrix evaluate(const ResiduePoly& p, const ResidueMatrix& m) {
  const TowerRef& t = m.tower();
  ResidueMatrix acc(t, m.rows(), m.cols());
  const ResidueMatrix id = ResidueMatrix::identity(t, m.rows());
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + id.scaled(*it);
  return acc;
}

std::vector<std::pair<Fq, int>> roots_in_field(const ResiduePoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "roots of the zero polynomial");
  const TowerRef& tower = p.tower();
  const FieldTower& t = *tower;
  const std::uint64_t q = t.enumerable_order();
  std::vector<std::pair<Fq, int>> out;
  ResiduePoly rest = p;
  for (std::uint64_t i = 0; i < q && rest.degree() > 0; ++i) {
    const Fq x = t.fq_from_index(i);
    if (rest(x) != Fq{}) continue;
    int mult = 0;
    const ResiduePoly lin = ResiduePoly::linear(tower, x);
    while (rest.degree() > 0 && rest(x) == Fq{}) {
      rest = rest.divmod(lin).first;
      ++mult;
    }
    out.emplace_back(x, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_squarefree(const ResiduePoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "squarefreeness of the zero polynomial");
  return poly_gcd(p, p.derivative()).degree() == 0;
}

namespace {

// Monic polynomial of least degree with poly(M) v = 0.
ResiduePoly local_minimal_polynomial(const ResidueMatrix& m, const std::vector<Fq>& v) {
  const TowerRef& tower = m.tower();
  const FieldTower& t = *tower;
  const std::size_t n = m.rows();
  std::vector<std::vector<Fq>> krylov{v};
  while (true) {
    const std::size_t k = krylov.size();
    ResidueMatrix cols(tower, n, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) cols(i, j) = krylov[j][i];
    ResidueMatrix ker = kernel_basis(cols);
    if (ker.cols() > 0) {
      std::vector<Fq> c = ker.column(0);
      const Fq inv = t.fq_inv(c[k - 1]);
      for (auto& x : c) x = t.fq_mul(x, inv);
      return ResiduePoly(tower, std::move(c));
    }
    std::vector<Fq> next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i] = t.fq_add(next[i], t.fq_mul(m(i, j), krylov.back()[j]));
    krylov.push_back(std::move(next));
  }
}

ResiduePoly poly_lcm(const ResiduePoly& a, const ResiduePoly& b) {
  const ResiduePoly g = poly_gcd(a, b);
  return (a.divmod(g).first * b).monic();
}

}  // namespace

ResiduePoly minimal_polynomial(const ResidueMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::WrongShape, "minimal polynomial of a non-square matrix");
  const TowerRef& tower = m.tower();
  ResiduePoly acc = ResiduePoly::constant(tower, tower->fq_one());
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Fq> e(n);
    e[i] = tower->fq_one();
    acc = poly_lcm(acc, local_minimal_polynomial(m, e));
    if (acc.degree() == static_cast<int>(n)) break;
  }
  return acc;
}

ResiduePoly characteristic_polynomial(const ResidueMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::WrongShape, "characteristic polynomial of a non-square matrix");
  const TowerRef& tower = m.tower();
  const FieldTower& t = *tower;
  const std::size_t n = m.rows();
  // Berkowitz: vector of coefficients, high degree first.
  std::vector<Fq> c{t.fq_one(), t.fq_neg(n ? m(0, 0) : Fq{})};
  if (n == 0) return ResiduePoly::constant(tower, t.fq_one());
  for (std::size_t r = 1; r < n; ++r) {
    // A = m[0..r-1][0..r-1], R = m[r][0..r-1], C = m[0..r-1][r], a = m[r][r]
    std::vector<Fq> toeplitz_col(r + 2);
    toeplitz_col[0] = t.fq_one();
    toeplitz_col[1] = t.fq_neg(m(r, r));
    std::vector<Fq> vec(r);
    for (std::size_t i = 0; i < r; ++i) vec[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Fq dot{};
      for (std::size_t i = 0; i < r; ++i) dot = t.fq_add(dot, t.fq_mul(m(r, i), vec[i]));
      toeplitz_col[k + 2] = t.fq_neg(dot);
      std::vector<Fq> nv(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nv[i] = t.fq_add(nv[i], t.fq_mul(m(i, j), vec[j]));
      vec = std::move(nv);
    }
    std::vector<Fq> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j < c.size() && j <= i; ++j) next[i] = t.fq_add(next[i], t.fq_mul(toeplitz_col[i - j], c[j]));
    c = std::move(next);
  }
  std::reverse(c.begin(), c.end());
  return ResiduePoly(tower, std::move(c));
}

std::string_view failure_name(ResidueFailure r) {
  return r == ResidueFailure::NotSplit ? "NotSplit" : "NotSemisimple";
}

ResidueDiagOutcome diagonalise_residue(const ResidueMatrix& m) {
  const TowerRef& tower = m.tower();
  ResidueDiagOutcome out;
  const ResiduePoly mp = minimal_polynomial(m);
  if (!is_squarefree(mp)) {
    out.reason = ResidueFailure::NotSemisimple;
    out.witness = mp;
    return out;
  }
  const auto roots = roots_in_field(mp);
  if (static_cast<int>(roots.size()) != mp.degree()) {
    out.reason = ResidueFailure::NotSplit;
    out.witness = mp;
    return out;
  }
  const std::size_t n = m.rows();
  out.basis = ResidueMatrix(tower, n, n);
  std::size_t col = 0;
  for (const auto& [lambda, one] : roots) {
    (void)one;
    const ResidueMatrix shifted = m - ResidueMatrix::identity(tower, n).scaled(lambda);
    const ResidueMatrix ker = kernel_basis(shifted);
    for (std::size_t j = 0; j < ker.cols(); ++j, ++col)
      for (std::size_t i = 0; i < n; ++i) out.basis(i, col) = ker(i, j);
    out.eigenvalues.emplace_back(lambda, static_cast<int>(ker.cols()));
  }
  out.diagonalisable = true;
  return out;
}

std::vector<ResiduePoly> lagrange_idempotents(const TowerRef& tower, const std::vector<Fq>& nodes) {
  const FieldTower& t = *tower;
  if (nodes.empty()) fail(Errc::InvalidArgument, "no interpolation nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) fail(Errc::DuplicateEigenvalue, "node " + t.fq_to_string(nodes[i]) + " repeats");
  std::vector<ResiduePoly> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ResiduePoly e = ResiduePoly::constant(tower, t.fq_one());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      const Fq inv = t.fq_inv(t.fq_sub(nodes[i], nodes[j]));
      e = e * ResiduePoly::linear(tower, nodes[j]).scaled(inv);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace padspec
