#include "padspec/involution.hpp"

#include "padspec/residue.hpp"

namespace padspec {

std::string_view involution_name(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Symmetric: return "symmetric";
    case InvolutionKind::StarSymmetric: return "star";
    case InvolutionKind::GaloisSymmetric: return "galois";
  }
  return "?";
}

std::string_view prediction_name(Prediction p) {
  switch (p) {
    case Prediction::Diagonalisable: return "diagonalisable";
    case Prediction::NotDiagonalisable: return "not-diagonalisable";
    case Prediction::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

bool same(const PadicScalar& x, const PadicScalar& y, int tol) { return congruent(x, y, tol); }

// Normalises each column and checks that the reductions are independent.
bool columns_orthonormal(const PMatrix& f) {
  PMatrix g = f;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    const PMatrix c = normalized(f.column(j));
    g.set_block(0, j, c);
  }
  return is_unitary(g).unitary;
}

void fill_eigen(InvolutionReport& out, const PadicScalar& a, const PadicScalar& b, const PadicScalar& c) {
  const TowerRef& tower = a.tower();
  const auto sq = sqrt_in_tower(out.discriminant);
  if (!sq) {
    out.note = "the discriminant has no square root in this tower";
    return;
  }
  const PadicScalar half = from_rational(1, 2, tower);
  out.lambda_plus = (a + c + *sq) * half;
  out.lambda_minus = (a + c - *sq) * half;
  PMatrix f(tower, 2, 2);
  const PadicScalar two_b = b * PadicScalar::from_int(2, tower);
  f(0, 0) = -two_b;
  f(1, 0) = (a - c) - *sq;
  f(0, 1) = -two_b;
  f(1, 1) = (a - c) + *sq;
  out.eigenvectors = f;
  try {
    out.eigenvectors_orthonormal = columns_orthonormal(f);
  } catch (const Error&) {
    out.note = "eigenvector norms undecidable at this precision";
  }
}

}  // namespace

InvolutionReport involution_criteria(const PMatrix& m, InvolutionKind kind) {
  if (m.rows() != 2 || m.cols() != 2) fail(Errc::WrongShape, "involution criteria need a 2x2 matrix");
  const TowerRef& tower = m.tower();
  const int tol = tolerance_v2(*tower, 2);
  const std::uint32_t p = tower->p();
  if (p == 2) fail(Errc::EvenPrime, "involution criteria need p odd");
  const PadicScalar a = m(0, 0), b = m(0, 1), c = m(1, 1);
  const PadicScalar four = PadicScalar::from_int(4, tower);
  InvolutionReport out;
  out.kind = kind;

  switch (kind) {
    case InvolutionKind::Symmetric: {
      if (!same(m(1, 0), b, tol)) fail(Errc::WrongShape, "matrix is not symmetric");
      out.discriminant = (a - c) * (a - c) + four * b * b;
      if (b.negligible(tol)) {
        out.prediction = Prediction::Diagonalisable;
        out.note = "diagonal";
      } else if (out.discriminant.negligible(tol)) {
        out.prediction = Prediction::NotDiagonalisable;
        out.note = "vanishing discriminant with b != 0: a single eigenvalue and a nonzero nilpotent part";
      } else if (p % 4 == 3 && tower->degree() == 1) {
        out.prediction = Prediction::Diagonalisable;
        out.note = "p = 3 mod 4 with residue field F_p";
      } else {
        out.note = "-1 is a square in the residue field; no closed-form verdict";
      }
      break;
    }
    case InvolutionKind::StarSymmetric: {
      if (!tower->ramified() || tower->degree() != 1) fail(Errc::TowerMismatch, "star criterion runs over Q_p(sqrt p)");
      const PadicScalar pi = PadicScalar::from_int(p, tower);
      if (!same(m(1, 0), pi * b, tol)) fail(Errc::WrongShape, "matrix is not star-symmetric (M21 != p M12)");
      out.discriminant = (a - c) * (a - c) + pi * four * b * b;
      const Norm nd = (a - c).norm_bound();
      const Norm nb = b.norm_bound();
      const bool b_zero = b.negligible(tol);
      out.prediction = (b_zero || nd >= nb) ? Prediction::Diagonalisable : Prediction::NotDiagonalisable;
      out.note = b_zero ? "b = 0" : "|a - c| >= |b| decides";
      break;
    }
    case InvolutionKind::GaloisSymmetric: {
      if (tower->ramified() || tower->degree() != 2 || p % 4 != 3)
        fail(Errc::TowerMismatch, "galois criterion runs over Q_p(i) with p = 3 mod 4");
      const auto& g = tower->modulus();
      if (!(g[0] == 1 && g[1] == 0)) fail(Errc::TowerMismatch, "tower modulus is not x^2 + 1");
      if (!same(m(1, 0), b.conjugate(), tol) || !same(a, a.conjugate(), tol) || !same(c, c.conjugate(), tol))
        fail(Errc::WrongShape, "matrix is not conjugate-transpose invariant");
      out.discriminant = (a - c) * (a - c) + four * b * b.conjugate();
      out.prediction = Prediction::Diagonalisable;
      out.note = "closed form claims a unitary conjugator over an unramified quadratic extension";
      break;
    }
  }
  fill_eigen(out, a, b, c);
  return out;
}

namespace {

// Root in `target` of the source tower's defining polynomial, by Newton's method.
PadicScalar generator_image(const FieldTower& src, const TowerRef& target) {
  const auto& g = src.modulus();
  std::vector<Fq> coeffs;
  for (std::uint32_t x : g) coeffs.push_back(Fq{{x, 0, 0, 0}});
  const auto roots = roots_in_field(ResiduePoly(target, coeffs));
  if (roots.empty()) fail(Errc::TowerMismatch, "defining polynomial has no root in the target tower");
  auto eval = [&](const PadicScalar& y, bool deriv) {
    PadicScalar acc = PadicScalar::zero(target);
    for (std::size_t k = g.size(); k-- > 0;) {
      if (deriv && k == 0) break;
      acc = acc * y + PadicScalar::from_int(deriv ? static_cast<long long>(g[k]) * static_cast<long long>(k) : g[k], target);
    }
    return acc;
  };
  PadicScalar y = PadicScalar::lift(roots.front().first, target);
  for (int it = 0; it < 64; ++it) {
    const PadicScalar v = eval(y, false);
    if (v.is_zero() || v.negligible(target->cap_v2())) return y.promote();
    y = (y - v / eval(y, true)).promote();
  }
  fail(Errc::PrecisionExhausted, "Newton lift of the generator did not settle");
}

void check_embeddable(const FieldTower& src, const FieldTower& target) {
  if (src.p() != target.p() || src.ramified() != target.ramified() || src.precision() != target.precision() ||
      target.degree() % src.degree() != 0)
    fail(Errc::TowerMismatch, "cannot embed " + src.describe() + " into " + target.describe());
}

PadicScalar embed_with(const PadicScalar& x, const TowerRef& target, const PadicScalar& t) {
  const FieldTower& src = *x.tower();
  if (x.is_zero()) return PadicScalar::zero(target);
  if (x.is_imprecise()) return PadicScalar::imprecise(x.abs_v2(), target);
  const PadicScalar::Expanded e = x.expand();
  const int f = static_cast<int>(src.degree());
  auto part = [&](int off) {
    PadicScalar acc = PadicScalar::zero(target);
    for (int j = f; j-- > 0;) acc = acc * t + PadicScalar::from_mpz(e.comps[off + j], target);
    return acc;
  };
  PadicScalar y = part(0);
  if (src.ramified()) y = y + PadicScalar::root_p(target) * part(f);
  y = y.shifted(e.p_exp * (src.ramified() ? 2 : 1)).promote();
  return y + PadicScalar::imprecise(x.abs_v2(), target);
}

}  // namespace

PadicScalar embed(const PadicScalar& x, const TowerRef& target) {
  const FieldTower& src = *x.tower();
  if (src.same_as(*target)) return x;
  check_embeddable(src, *target);
  const PadicScalar t = src.degree() == 1 ? PadicScalar::zero(target) : generator_image(src, target);
  return embed_with(x, target, t);
}

PMatrix embed(const PMatrix& m, const TowerRef& target) {
  const FieldTower& src = *m.tower();
  if (src.same_as(*target)) return m;
  check_embeddable(src, *target);
  const PadicScalar t = src.degree() == 1 ? PadicScalar::zero(target) : generator_image(src, target);
  PMatrix out(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = embed_with(m(i, j), target, t);
  return out;
}

}  // namespace padspec
