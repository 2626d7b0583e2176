#include "padspec/spectral.hpp"

#include <algorithm>

namespace padspec {

ReductiveSpectrum reductive_spectrum(const PMatrix& a) {
  if (!a.square()) fail(Errc::WrongShape, "spectrum of a non-square matrix");
  ReductiveSpectrum out;
  const PMatrix b = normalized(a, &out.normalizer);
  out.reduction = matrix_reduction(b);
  out.eigenvalues = roots_in_field(characteristic_polynomial(out.reduction));
  out.outcome = diagonalise_residue(out.reduction);
  return out;
}

namespace {

bool idempotent_enough(const PMatrix& e, int cap) {
  return std::all_of(e.entries().begin(), e.entries().end(), [cap](const PadicScalar& x) {
    return x.is_zero() || x.is_imprecise() || x.v2() >= cap;
  });
}

int ceil_log2(int n) {
  int e = 0;
  while ((1 << e) < n) ++e;
  return e;
}

}  // namespace

PMatrix lift_idempotent(const PMatrix& p0, int* iterations) {
  if (!p0.square()) fail(Errc::WrongShape, "idempotent lifting needs a square matrix");
  const TowerRef& tower = p0.tower();
  const Norm nb = norm_bound(p0);
  if (!nb.zero && nb.v2 < 0) fail(Errc::NotApproxIdempotent, "entries outside the unit ball");
  const Norm defect = norm_bound(p0 * p0 - p0);
  if (!defect.zero && defect.v2 <= 0) fail(Errc::NotApproxIdempotent, "||P^2 - P|| is not below one");
  const int cap = tower->cap_v2();
  const int max_iter = ceil_log2(tower->precision()) + 4;
  const PadicScalar three = PadicScalar::from_int(3, tower);
  const PadicScalar two = PadicScalar::from_int(2, tower);
  PMatrix x = p0;
  for (int it = 0;; ++it) {
    const PMatrix x2 = x * x;
    if (idempotent_enough(x2 - x, cap)) {
      if (iterations) *iterations = it;
      return x;
    }
    if (it == max_iter) fail(Errc::NotApproxIdempotent, "no convergence within the iteration cap");
    x = x2.scaled(three) - (x2 * x).scaled(two);
  }
}

PMatrix idempotent_from_lift(const PMatrix& a, const std::vector<PadicScalar>& coeffs) {
  const TowerRef& tower = a.tower();
  const std::size_t n = a.rows();
  PMatrix acc(tower, n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return lift_idempotent(acc);
}

PartitionOfUnity partition_of_unity(const PMatrix& a) {
  if (!a.square()) fail(Errc::WrongShape, "partition of a non-square matrix");
  const TowerRef& tower = a.tower();
  const std::size_t n = a.rows();
  const Norm norm = sup_norm(a);
  if (norm.zero || norm.v2 != 0) fail(Errc::NormNotOne, "partition of unity needs ||A|| = 1");
  const ResidueMatrix red = matrix_reduction(a);
  const ResidueDiagOutcome diag = diagonalise_residue(red);
  if (!diag.diagonalisable) {
    fail(Errc::ReductionNotDiagonalisable, std::string(failure_name(diag.reason)) + ", minimal polynomial " +
                                               diag.witness.to_string() + ", reduction " + red.to_string());
  }
  PartitionOfUnity out;
  out.source = a;
  const int cap = tower->cap_v2();
  if (diag.eigenvalues.size() == 1) {
    out.classes.push_back({diag.eigenvalues[0].first, PMatrix::identity(tower, n), n});
    out.certified_v2 = cap;
    return out;
  }
  std::vector<Fq> nodes;
  for (const auto& e : diag.eigenvalues) nodes.push_back(e.first);
  const auto idempotents = lagrange_idempotents(tower, nodes);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    std::vector<PadicScalar> coeffs;
    for (const Fq& c : idempotents[k].coeffs()) coeffs.push_back(PadicScalar::lift(c, tower));
    PMatrix p = idempotent_from_lift(a, coeffs);
    const std::size_t r = rank(matrix_reduction(p));
    out.classes.push_back({nodes[k], std::move(p), r});
  }
  int cert = cap;
  PMatrix sum(tower, n, n);
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    const PMatrix& pi = out.classes[i].projection;
    sum = sum + pi;
    cert = std::min(cert, agreement_v2(pi * pi, pi, cap));
    cert = std::min(cert, agreement_v2(pi * a, a * pi, cap));
    for (std::size_t j = 0; j < i; ++j) cert = std::min(cert, agreement_v2(pi * out.classes[j].projection, PMatrix(tower, n, n), cap));
  }
  cert = std::min(cert, agreement_v2(sum, PMatrix::identity(tower, n), cap));
  out.certified_v2 = cert;
  return out;
}

std::vector<SigmaClass> sigma_classes(const PMatrix& m) {
  int k = 0;
  const PMatrix b = normalized(m, &k);
  const PartitionOfUnity pu = partition_of_unity(b);
  std::vector<SigmaClass> out;
  for (const auto& c : pu.classes) out.push_back({c.lambda, c.projection, c.rank, k});
  return out;
}

}  // namespace padspec
