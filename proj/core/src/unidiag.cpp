#include "padspec/unidiag.hpp"

#include <algorithm>

namespace padspec {

namespace {

struct Context {
  TowerRef tower;
  int slack = 0;
  int tol = 0;  // doubled digits below which a normalised quantity is zero
};

struct Failure {
  FailureCertificate cert;
};

struct BlockResult {
  PMatrix u;
  std::vector<PadicScalar> d;
  ClassNode node;
  int depth = 0;
};

PMatrix normalized_or_exhausted(const PMatrix& m, int* k) {
  try {
    return normalized(m, k);
  } catch (const Error& e) {
    if (e.code() == Errc::ImpreciseEntry) fail(Errc::PrecisionExhausted, "block norm undecidable at this precision");
    throw;
  }
}

// Orthonormal basis of the range of a projection, starting from the columns
// whose reductions are independent.
PMatrix class_basis(const PMatrix& proj, int slack) {
  const auto pivots = rref(matrix_reduction(proj)).second;
  PMatrix cols(proj.tower(), proj.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) cols.set_block(0, k, proj.column(pivots[k]));
  return orthonormal_basis_of_span(cols, slack).promote();
}

BlockResult diagonalise_block(const Context& ctx, const PMatrix& r, int depth, std::optional<Fq> label,
                              std::vector<TrailStep>& trail) {
  const std::size_t n = r.rows();
  BlockResult out;
  out.node.depth = depth;
  out.node.label = label;
  out.node.dimension = n;
  if (n <= 1) {
    out.u = PMatrix::identity(ctx.tower, n);
    out.d = r.diagonal_entries();
    if (n == 1) out.node.shift = r(0, 0);
    out.node.scalar_leaf = true;
    return out;
  }
  const PadicScalar shift = r(0, 0);
  out.node.shift = shift;
  const PMatrix shifted = r.minus_scalar(shift);
  bool diagonal = true;
  for (std::size_t i = 0; i < n && diagonal; ++i)
    for (std::size_t j = 0; j < n && diagonal; ++j)
      if (i != j && !r(i, j).negligible(ctx.tol)) diagonal = false;
  if (diagonal) {
    out.u = PMatrix::identity(ctx.tower, n);
    out.d = r.diagonal_entries();
    out.node.scalar_leaf = true;
    return out;
  }
  int k = 0;
  const PMatrix b = normalized_or_exhausted(shifted, &k);
  out.node.normalizer = k;
  const ResidueMatrix red = matrix_reduction(b);
  const ResidueDiagOutcome diag = diagonalise_residue(red);

  auto certificate = [&](ResidueFailure reason, const ResiduePoly& witness) {
    Failure f;
    f.cert.depth = depth;
    f.cert.trail = trail;
    f.cert.trail.push_back({shift, k, std::nullopt});
    f.cert.offending = red;
    f.cert.reason = reason;
    f.cert.witness = witness;
    return f;
  };
  if (!diag.diagonalisable) throw certificate(diag.reason, diag.witness);
  if (diag.eigenvalues.size() < 2) throw certificate(ResidueFailure::NotSemisimple, minimal_polynomial(red));

  const PartitionOfUnity pu = partition_of_unity(b);
  PMatrix u(ctx.tower, n, n);
  std::size_t col = 0;
  for (const SpectralClass& cls : pu.classes) {
    const PMatrix c = class_basis(cls.projection, ctx.slack);
    if (c.cols() != cls.rank) {
      fail(Errc::PrecisionExhausted, "class of rank " + std::to_string(cls.rank) + " spans " +
                                         std::to_string(c.cols()) + " columns at this precision");
    }
    const PMatrix sub = restriction_matrix(r, c, ctx.slack);
    trail.push_back({shift, k, cls.lambda});
    BlockResult child = diagonalise_block(ctx, sub, depth + 1, cls.lambda, trail);
    trail.pop_back();
    u.set_block(0, col, c * child.u);
    col += c.cols();
    out.d.insert(out.d.end(), child.d.begin(), child.d.end());
    out.depth = std::max(out.depth, child.depth + 1);
    out.node.children.push_back(std::move(child.node));
  }
  out.u = std::move(u);
  return out;
}

}  // namespace

UnidiagOutcome unitary_diagonalise(const PMatrix& m, int slack) {
  if (!m.square()) fail(Errc::WrongShape, "unitary diagonalisation of a non-square matrix");
  const TowerRef& tower = m.tower();
  const std::size_t n = m.rows();
  const int s = slack < 0 ? default_slack(tower->p(), n) : slack;
  const int big_n = tower->precision();
  if (big_n < static_cast<int>(n) * s + 4) {
    fail(Errc::PrecisionExhausted, "N = " + std::to_string(big_n) + " is below n*s + 4 = " +
                                       std::to_string(static_cast<int>(n) * s + 4));
  }
  UnidiagOutcome out;
  out.class_tree.dimension = n;
  if (norm_bound(m).zero) {
    out.success = true;
    out.u = PMatrix::identity(tower, n);
    out.d.assign(n, PadicScalar::zero(tower));
    out.class_tree.scalar_leaf = true;
    out.certified_precision = big_n;
    out.certified_v2 = tower->cap_v2();
    return out;
  }
  int k0 = 0;
  const PMatrix mn = normalized_or_exhausted(m, &k0);
  const Context ctx{tower, s, tolerance_v2(*tower, n, s)};
  std::vector<TrailStep> trail;
  BlockResult res;
  try {
    res = diagonalise_block(ctx, mn, 0, std::nullopt, trail);
  } catch (Failure& f) {
    f.cert.input_normalizer = k0;
    out.success = false;
    out.certificate = std::move(f.cert);
    return out;
  }
  const PMatrix u = res.u.promote();
  std::vector<PadicScalar> d;
  for (const auto& x : res.d) d.push_back(x.promote());
  if (!is_unitary(u).unitary) fail(Errc::PrecisionExhausted, "assembled conjugator is not unitary");
  const PMatrix residual = mn * u - u * PMatrix::diagonal(tower, d);
  const Norm rb = norm_bound(residual);
  const int cap = tower->cap_v2();
  const int measured = rb.zero ? cap : std::min(cap, rb.v2);
  const int promised = big_n - res.depth * s;
  if (measured < 2 * promised) {
    fail(Errc::PrecisionExhausted, "residual " + rb.to_string() + " above p^-" + std::to_string(promised));
  }
  out.success = true;
  out.u = u;
  for (auto& x : d) x = x.shifted(k0);
  out.d = std::move(d);
  out.class_tree = std::move(res.node);
  out.depth = res.depth;
  out.certified_precision = promised;
  out.certified_v2 = measured;
  return out;
}

ResidueMatrix replay_certificate(const PMatrix& m, const FailureCertificate& cert, int slack) {
  if (cert.trail.empty()) fail(Errc::InvalidArgument, "empty certificate trail");
  const TowerRef& tower = m.tower();
  const std::size_t n = m.rows();
  const int s = slack < 0 ? default_slack(tower->p(), n) : slack;
  PMatrix r = m.shifted(-cert.input_normalizer);
  for (std::size_t i = 0; i + 1 < cert.trail.size(); ++i) {
    const TrailStep& step = cert.trail[i];
    if (!step.label) fail(Errc::InvalidArgument, "trail step without a class label");
    const PMatrix b = r.minus_scalar(step.shift).shifted(-step.normalizer);
    const PartitionOfUnity pu = partition_of_unity(b);
    const auto it = std::find_if(pu.classes.begin(), pu.classes.end(),
                                 [&](const SpectralClass& c) { return c.lambda == *step.label; });
    if (it == pu.classes.end()) fail(Errc::InvalidArgument, "trail class not present on replay");
    const PMatrix c = class_basis(it->projection, s);
    r = restriction_matrix(r, c, s);
  }
  const TrailStep& last = cert.trail.back();
  return matrix_reduction(r.minus_scalar(last.shift).shifted(-last.normalizer));
}

std::vector<PadicScalar> spectrum_kvalued(const PMatrix& m, int slack) {
  const UnidiagOutcome o = unitary_diagonalise(m, slack);
  if (!o.success) {
    const auto& c = *o.certificate;
    fail(Errc::NotUnitarilyDiagonalisable, std::string(failure_name(c.reason)) + " at depth " +
                                               std::to_string(c.depth) + ", witness " + c.witness.to_string());
  }
  return o.d;
}

int naive_floor(const PMatrix& a, int slack) {
  const Norm na = norm_bound(a);
  return (na.zero ? 0 : na.v2) + tolerance_v2(*a.tower(), a.rows(), slack);
}

NaiveLevel naive_step(const PMatrix& a, const NaiveLevel& cur, int level, int floor_v2) {
  const TowerRef& tower = a.tower();
  const std::size_t n = a.rows();
  const PMatrix zero(tower, n, n);
  if (negligible(cur.r, floor_v2)) return {zero, zero};
  const PMatrix b = normalized_or_exhausted(cur.r, nullptr);
  PMatrix q = zero;
  try {
    const PartitionOfUnity pu = partition_of_unity(b);
    for (const auto& c : pu.classes)
      if (c.lambda == Fq{}) q = c.projection;
  } catch (const Error& e) {
    if (e.code() != Errc::ReductionNotDiagonalisable) throw;
    fail(Errc::NotNaiveAtLevel, "level " + std::to_string(level) + ": " + e.what());
  }
  PMatrix p = (q * cur.p).promote();
  PMatrix r = p * a;
  return {std::move(p), std::move(r)};
}

int naive_next_floor(const PMatrix& a, const NaiveLevel& cur, int floor_v2) {
  const Norm na = norm_bound(a), nr = norm_bound(cur.r);
  if (na.zero || nr.zero) return floor_v2;
  return floor_v2 - (nr.v2 - na.v2);
}

std::vector<NaiveLevel> naive_sequence(const PMatrix& a, int levels, int slack, std::optional<int> floor_v2) {
  if (!a.square()) fail(Errc::WrongShape, "naive maps of a non-square matrix");
  if (levels < 0) fail(Errc::InvalidArgument, "negative level");
  const int floor = floor_v2 ? *floor_v2 : naive_floor(a, slack);
  std::vector<NaiveLevel> out;
  out.push_back({PMatrix::identity(a.tower(), a.rows()), a});
  int current = floor;
  for (int i = 0; i < levels; ++i) {
    NaiveLevel next = naive_step(a, out.back(), i, current);
    current = naive_next_floor(a, out.back(), floor);
    out.push_back(std::move(next));
  }
  return out;
}

NaiveLevel naive_maps(const PMatrix& a, int level, int slack) { return naive_sequence(a, level, slack).back(); }

}  // namespace padspec
