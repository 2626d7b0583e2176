#pragma once

#include <string>
#include <vector>

#include "padspec/funcalc.hpp"

namespace padspec {

/// Nonzero vector of k^n with the max-coordinate norm.
class StateVector {
 public:
  StateVector() = default;
  StateVector(TowerRef tower, std::vector<PadicScalar> coords);

  const TowerRef& tower() const { return tower_; }
  const std::vector<PadicScalar>& coords() const { return c_; }
  std::size_t size() const { return c_.size(); }
  Norm norm() const;
  StateVector scaled(const PadicScalar& g) const;
  /// Divided by a coordinate of maximal norm, so the result has norm one.
  StateVector normalized() const;

 private:
  TowerRef tower_;
  std::vector<PadicScalar> c_;
};

/// Finite union of pairwise disjoint discs.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  explicit MeasurableSet(std::vector<PDisc> discs);

  const std::vector<PDisc>& discs() const { return discs_; }
  bool empty() const { return discs_.empty(); }
  bool contains(const PadicScalar& x) const;
  bool subset_of(const MeasurableSet& o) const;
  bool disjoint_from(const MeasurableSet& o) const;
  /// Union; a disc inside another disc of the union is dropped.
  static MeasurableSet unite(const MeasurableSet& a, const MeasurableSet& b);
  /// A single disc around 0 holding every eigenvalue of A.
  static MeasurableSet covering(const PMatrix& a);

 private:
  std::vector<PDisc> discs_;
};

/// iota_A(1_S). Spectral points outside S get value 0 on discs of a common
/// radius chosen to miss S.
PMatrix spectral_indicator(const PMatrix& a, const MeasurableSet& s, int slack = -1);

/// ||iota_A(1_S) psi|| for psi normalized; p^(-m/2) or 0. Coordinates below the
/// working tolerance count as 0. NotNormal when A is not unitarily
/// diagonalisable, ZeroState for psi = 0.
Norm born_probability(const PMatrix& a, const StateVector& psi, const MeasurableSet& s, int slack = -1);

/// Decimal rendering of an exact probability.
double probability_value(const Norm& p, std::uint32_t prime);

struct AxiomReport {
  bool ok = true;
  Norm p_s, p_s2, p_union;
  std::vector<std::string> failures;  // axiom and the offending values
};

/// Checks P(empty) = 0, P(spectrum) = 1, P(S u S') <= max, monotonicity when
/// one set contains the other, and P(S u S') = max for disjoint S, S'.
AxiomReport check_probability_axioms(const PMatrix& a, const StateVector& psi, const MeasurableSet& s,
                                     const MeasurableSet& s2, int slack = -1);

}  // namespace padspec
