#include "padspec/funcalc.hpp"

#include <algorithm>

#include "padspec/unidiag.hpp"

namespace padspec {

bool PDisc::contains(const PadicScalar& x) const { return (x - center).negligible(radius_v2); }

bool PDisc::meets(const PDisc& o) const {
  const PadicScalar d = center - o.center;
  return !(d.is_unit_state() && d.v2() < std::min(radius_v2, o.radius_v2));
}

LocallyConstantFn::LocallyConstantFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (pieces_[i].disc.meets(pieces_[j].disc))
        fail(Errc::OverlappingPieces, "pieces " + std::to_string(j) + " and " + std::to_string(i) + " intersect");
}

std::optional<std::size_t> LocallyConstantFn::locate(const PadicScalar& x) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].disc.contains(x)) return i;
  return std::nullopt;
}

std::optional<PadicScalar> LocallyConstantFn::operator()(const PadicScalar& x) const {
  const auto i = locate(x);
  if (!i) return std::nullopt;
  return pieces_[*i].value;
}

LocallyConstantFn LocallyConstantFn::scaled(const PadicScalar& g) const {
  std::vector<Piece> out = pieces_;
  for (auto& pc : out) pc.value = pc.value * g;
  return LocallyConstantFn(std::move(out));
}

LocallyConstantFn LocallyConstantFn::refine(const LocallyConstantFn& a, const LocallyConstantFn& b, bool multiply) {
  std::vector<Piece> out;
  for (const auto& x : a.pieces_)
    for (const auto& y : b.pieces_) {
      if (!x.disc.meets(y.disc)) continue;
      const PDisc& small = x.disc.radius_v2 >= y.disc.radius_v2 ? x.disc : y.disc;
      out.push_back({small, (multiply ? x.value * y.value : x.value + y.value).promote()});
    }
  return LocallyConstantFn(std::move(out));
}

namespace {

std::vector<PadicScalar> checked_spectrum(const PMatrix& a, int slack, int* certified_v2) {
  const UnidiagOutcome o = unitary_diagonalise(a, slack);
  if (!o.success) {
    const auto& c = *o.certificate;
    fail(Errc::NotNaive, std::string(failure_name(c.reason)) + " at depth " + std::to_string(c.depth) +
                             ", witness " + c.witness.to_string() + ", reduction " + c.offending.to_string());
  }
  if (certified_v2) *certified_v2 = 2 * o.certified_precision;
  return o.d;
}

std::size_t piece_of(const LocallyConstantFn& c, const PadicScalar& lambda) {
  const auto i = c.locate(lambda);
  if (!i) fail(Errc::SpectrumNotCovered, "eigenvalue " + lambda.debug_string() + " lies in no piece");
  return *i;
}

}  // namespace

PMatrix apply_locally_constant(const LocallyConstantFn& c, const PMatrix& a, int slack,
                               std::vector<LevelChoice>* trace) {
  if (!a.square()) fail(Errc::WrongShape, "functional calculus of a non-square matrix");
  const TowerRef& tower = a.tower();
  const std::size_t n = a.rows();
  int cert = 0;
  const std::vector<PadicScalar> spectrum = checked_spectrum(a, slack, &cert);
  const Norm na = norm_bound(a);
  const int floor = naive_floor(a, slack);
  const int same_v2 = (na.zero ? 0 : na.v2) + cert;

  std::vector<PadicScalar> distinct;
  for (const auto& l : spectrum)
    if (std::none_of(distinct.begin(), distinct.end(), [&](const PadicScalar& d) { return congruent(d, l, same_v2); }))
      distinct.push_back(l);

  struct Candidate {
    LevelChoice choice;
    PMatrix projection;
  };
  std::vector<Candidate> cands;
  const int max_levels = tower->cap_v2() + 4;
  for (const auto& lambda : distinct) {
    const std::size_t k = piece_of(c, lambda);
    const int target = std::min(c.pieces()[k].disc.radius_v2, floor);
    const PMatrix shifted = a.minus_scalar(lambda);
    NaiveLevel cur{PMatrix::identity(tower, n), shifted};
    int level = 0;
    int current = floor;
    while (!negligible(cur.r, target)) {
      if (level == max_levels) fail(Errc::PrecisionExhausted, "naive levels did not reach the piece radius");
      NaiveLevel next = naive_step(shifted, cur, level, current);
      current = naive_next_floor(shifted, cur, floor);
      cur = std::move(next);
      ++level;
    }
    cands.push_back({{lambda, level, norm_bound(cur.r), k}, std::move(cur.p)});
  }
  // Larger clusters first; a cluster swallows every eigenvalue within its radius.
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) { return x.choice.radius > y.choice.radius; });
  PMatrix out(tower, n, n);
  std::vector<const Candidate*> chosen;
  for (const auto& cand : cands) {
    const bool covered = std::any_of(chosen.begin(), chosen.end(), [&](const Candidate* s) {
      const Norm gap = (cand.choice.lambda - s->choice.lambda).norm_bound();
      return gap <= s->choice.radius;
    });
    if (covered) continue;
    chosen.push_back(&cand);
    out = out + cand.projection.scaled(c.pieces()[cand.choice.piece].value);
    if (trace) trace->push_back(cand.choice);
  }
  return out;
}

PMatrix apply_via_diagonalisation(const LocallyConstantFn& c, const PMatrix& a, int slack) {
  if (!a.square()) fail(Errc::WrongShape, "functional calculus of a non-square matrix");
  const UnidiagOutcome o = unitary_diagonalise(a, slack);
  if (!o.success) checked_spectrum(a, slack, nullptr);
  std::vector<PadicScalar> vals;
  for (const auto& l : o.d) vals.push_back(c.pieces()[piece_of(c, l)].value);
  return o.u * PMatrix::diagonal(a.tower(), vals) * inverse(o.u);
}

IsometryReport calculus_isometry_check(const LocallyConstantFn& c, const LocallyConstantFn& c2, const PMatrix& a,
                                       int slack) {
  IsometryReport rep;
  const TowerRef& tower = a.tower();
  const int tol = tolerance_v2(*tower, a.rows(), slack);
  const std::vector<PadicScalar> spectrum = checked_spectrum(a, slack, nullptr);
  auto note = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  auto check_norm = [&](const char* name, const LocallyConstantFn& f, const PMatrix& fa) {
    Norm want = Norm::null();
    for (const auto& l : spectrum) want = std::max(want, f.pieces()[piece_of(f, l)].value.norm_bound());
    try {
      const Norm got = sup_norm(fa);
      if (!(got == want)) note(std::string(name) + ": norm " + got.to_string() + " != " + want.to_string());
    } catch (const Error& e) {
      if (!want.zero || !negligible(fa, tol)) note(std::string(name) + ": " + e.what());
    }
  };
  // relative to the size of the operands: digits below it were never known
  auto check_equal = [&](const char* name, const PMatrix& x, const PMatrix& y, Norm scale) {
    const int k2 = tol + (scale.zero ? 0 : scale.v2);
    if (!congruent(x, y, k2)) note(std::string(name) + ": residual " + norm_bound(x - y).to_string());
  };
  const LocallyConstantFn sum = LocallyConstantFn::refine(c, c2, false);
  const LocallyConstantFn prod = LocallyConstantFn::refine(c, c2, true);
  const PMatrix ca = apply_locally_constant(c, a, slack);
  const PMatrix c2a = apply_locally_constant(c2, a, slack);
  const PMatrix suma = apply_locally_constant(sum, a, slack);
  const PMatrix proda = apply_locally_constant(prod, a, slack);
  check_norm("c", c, ca);
  check_norm("c'", c2, c2a);
  check_norm("c + c'", sum, suma);
  check_norm("c c'", prod, proda);
  const Norm nc = norm_bound(ca), nc2 = norm_bound(c2a);
  check_equal("(c + c')(A) = c(A) + c'(A)", suma, ca + c2a, std::max(nc, nc2));
  check_equal("(c c')(A) = c(A) c'(A)", proda, ca * c2a, nc * nc2);
  return rep;
}

}  // namespace padspec
