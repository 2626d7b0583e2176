#include "padspec/born.hpp"

#include <algorithm>
#include <cmath>

#include "padspec/unidiag.hpp"

namespace padspec {

StateVector::StateVector(TowerRef tower, std::vector<PadicScalar> coords) : tower_(std::move(tower)), c_(std::move(coords)) {
  if (c_.empty()) fail(Errc::ZeroState, "state with no coordinates");
}

Norm StateVector::norm() const {
  Norm out = Norm::null();
  for (const auto& x : c_)
    if (!x.is_imprecise()) out = std::max(out, x.norm());
  return out;
}

StateVector StateVector::scaled(const PadicScalar& g) const {
  std::vector<PadicScalar> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x * g);
  return StateVector(tower_, std::move(out));
}

StateVector StateVector::normalized() const {
  const Norm n = norm();
  if (n.zero) fail(Errc::ZeroState, "the zero vector is not a state");
  for (const auto& x : c_)
    if (!x.is_imprecise() && x.norm() == n) return scaled(x.inverse());
  return *this;
}

MeasurableSet::MeasurableSet(std::vector<PDisc> discs) : discs_(std::move(discs)) {
  for (std::size_t i = 0; i < discs_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (discs_[i].meets(discs_[j]))
        fail(Errc::OverlappingPieces, "discs " + std::to_string(j) + " and " + std::to_string(i) + " intersect");
}

bool MeasurableSet::contains(const PadicScalar& x) const {
  return std::any_of(discs_.begin(), discs_.end(), [&](const PDisc& d) { return d.contains(x); });
}

namespace {

bool disc_inside(const PDisc& a, const PDisc& b) { return a.radius_v2 >= b.radius_v2 && b.contains(a.center); }

}  // namespace

bool MeasurableSet::subset_of(const MeasurableSet& o) const {
  return std::all_of(discs_.begin(), discs_.end(), [&](const PDisc& d) {
    return std::any_of(o.discs_.begin(), o.discs_.end(), [&](const PDisc& e) { return disc_inside(d, e); });
  });
}

bool MeasurableSet::disjoint_from(const MeasurableSet& o) const {
  for (const auto& d : discs_)
    for (const auto& e : o.discs_)
      if (d.meets(e)) return false;
  return true;
}

MeasurableSet MeasurableSet::unite(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<PDisc> all = a.discs_;
  all.insert(all.end(), b.discs_.begin(), b.discs_.end());
  std::vector<PDisc> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dropped = false;
    for (std::size_t j = 0; j < all.size() && !dropped; ++j) {
      if (i == j || !disc_inside(all[i], all[j])) continue;
      // equal discs: keep the first copy
      dropped = !disc_inside(all[j], all[i]) || j < i;
    }
    if (!dropped) out.push_back(all[i]);
  }
  return MeasurableSet(std::move(out));
}

MeasurableSet MeasurableSet::covering(const PMatrix& a) {
  const Norm n = norm_bound(a);
  return MeasurableSet({PDisc{PadicScalar::zero(a.tower()), n.zero ? 0 : std::min(0, n.v2)}});
}

PMatrix spectral_indicator(const PMatrix& a, const MeasurableSet& s, int slack) {
  if (!a.square()) fail(Errc::WrongShape, "observable must be square");
  const TowerRef& tower = a.tower();
  const UnidiagOutcome o = unitary_diagonalise(a, slack);
  if (!o.success) {
    const auto& c = *o.certificate;
    fail(Errc::NotNormal, std::string(failure_name(c.reason)) + " at depth " + std::to_string(c.depth) +
                              ", reduction " + c.offending.to_string());
  }
  std::vector<PadicScalar> outside;
  for (const auto& l : o.d)
    if (!s.contains(l)) outside.push_back(l);
  const Norm na = norm_bound(a);
  int r = na.zero ? 0 : na.v2;
  for (const auto& l : outside)
    for (const auto& d : s.discs()) {
      const Norm gap = (l - d.center).norm_bound();
      if (!gap.zero) r = std::max(r, gap.v2 + 1);
    }
  std::vector<Piece> pieces;
  for (const auto& d : s.discs()) pieces.push_back({d, PadicScalar::one(tower)});
  std::vector<PDisc> rest;
  for (const auto& l : outside) {
    if (std::any_of(rest.begin(), rest.end(), [&](const PDisc& d) { return d.contains(l); })) continue;
    rest.push_back({l, r});
    pieces.push_back({rest.back(), PadicScalar::zero(tower)});
  }
  try {
    return apply_locally_constant(LocallyConstantFn(std::move(pieces)), a, slack);
  } catch (const Error& e) {
    if (e.code() == Errc::NotNaive) fail(Errc::NotNormal, e.what());
    throw;
  }
}

Norm born_probability(const PMatrix& a, const StateVector& psi, const MeasurableSet& s, int slack) {
  if (psi.size() != a.rows()) fail(Errc::WrongShape, "state and observable dimensions differ");
  const StateVector phi = psi.normalized();
  const PMatrix ind = spectral_indicator(a, s, slack);
  const int tol = tolerance_v2(*a.tower(), a.rows(), slack);
  Norm out = Norm::null();
  for (std::size_t i = 0; i < ind.rows(); ++i) {
    PadicScalar acc = PadicScalar::zero(a.tower());
    for (std::size_t j = 0; j < ind.cols(); ++j) acc = acc + ind(i, j) * phi.coords()[j];
    if (acc.negligible(tol)) continue;
    out = std::max(out, acc.norm_bound());
  }
  return out;
}

double probability_value(const Norm& p, std::uint32_t prime) {
  if (p.zero) return 0.0;
  return std::pow(static_cast<double>(prime), -p.v2 / 2.0);
}

AxiomReport check_probability_axioms(const PMatrix& a, const StateVector& psi, const MeasurableSet& s,
                                     const MeasurableSet& s2, int slack) {
  AxiomReport rep;
  auto note = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  const Norm empty = born_probability(a, psi, MeasurableSet(), slack);
  if (!empty.zero) note("P(empty) = " + empty.to_string());
  const Norm full = born_probability(a, psi, MeasurableSet::covering(a), slack);
  if (!(full == Norm::of_v2(0))) note("P(spectrum) = " + full.to_string());
  rep.p_s = born_probability(a, psi, s, slack);
  rep.p_s2 = born_probability(a, psi, s2, slack);
  rep.p_union = born_probability(a, psi, MeasurableSet::unite(s, s2), slack);
  const Norm mx = std::max(rep.p_s, rep.p_s2);
  if (rep.p_union > mx) note("P(S u S') = " + rep.p_union.to_string() + " > max " + mx.to_string());
  if (s.subset_of(s2) && rep.p_s > rep.p_s2) note("monotonicity: P(S) > P(S')");
  if (s2.subset_of(s) && rep.p_s2 > rep.p_s) note("monotonicity: P(S') > P(S)");
  if (s.disjoint_from(s2) && !(rep.p_union == mx))
    note("orthogonality: P(S u S') = " + rep.p_union.to_string() + " != max " + mx.to_string());
  return rep;
}

}  // namespace padspec
