#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

#include "padspec/errors.hpp"
#include "padspec/tower.hpp"

namespace padspec {

using ResidueScalar = Fq;

/// |x| = p^(-v2/2), or 0.
struct Norm {
  bool zero = true;
  int v2 = 0;

  static Norm of_v2(int v2) { return Norm{false, v2}; }
  static Norm null() { return Norm{}; }

  /// Ordered by size: zero < p^-big < ... < 1 < p < ...
  friend std::strong_ordering operator<=>(const Norm& a, const Norm& b) {
    if (a.zero || b.zero) return static_cast<int>(!a.zero) <=> static_cast<int>(!b.zero);
    return b.v2 <=> a.v2;
  }
  friend bool operator==(const Norm& a, const Norm& b) { return (a <=> b) == 0; }

  Norm operator*(const Norm& o) const {
    if (zero || o.zero) return null();
    return of_v2(v2 + o.v2);
  }
  std::string to_string() const;
};

/// An element of the tower at working precision N.
///
/// Three states: exact zero; ImpreciseZero(a), meaning "some element of norm at
/// most p^(-a/2) whose digits were lost to cancellation"; and a unit times a
/// uniformiser power, value = pi^k * u with k = v2 (ramified, pi = rt) or v2/2
/// (pi = p). The unit is known to `rel2` doubled digits; digits beyond that are
/// stored as zero.
class PadicScalar {
 public:
  enum class State : std::uint8_t { Zero, Imprecise, Unit };

  PadicScalar() = default;
  explicit PadicScalar(TowerRef tower);

  static PadicScalar zero(TowerRef tower) { return PadicScalar(std::move(tower)); }
  static PadicScalar one(TowerRef tower);
  static PadicScalar from_int(long long v, TowerRef tower);
  static PadicScalar from_mpz(const mpz_class& v, TowerRef tower);
  static PadicScalar imprecise(int abs_v2, TowerRef tower);
  /// pi^k, exact.
  static PadicScalar uniformiser_pow(int k, TowerRef tower);
  /// pi^shift * raw, where raw need not be a unit; rel2 caps the known digits
  /// of raw (counted from pi^0 of raw).
  static PadicScalar from_integral(const Integral& raw, int shift_v2, int rel2, TowerRef tower);
  /// Exact lift of a residue digit vector (each coefficient in [0, p)).
  static PadicScalar lift(const ResidueScalar& r, TowerRef tower);
  /// s^j for the unramified generator, exact (j >= 0).
  static PadicScalar generator_pow(int j, TowerRef tower);
  /// rt, the square root of p (ramified towers only).
  static PadicScalar root_p(TowerRef tower);

  const TowerRef& tower() const { return tower_; }
  State state() const { return state_; }
  bool is_zero() const { return state_ == State::Zero; }
  bool is_imprecise() const { return state_ == State::Imprecise; }
  bool is_unit_state() const { return state_ == State::Unit; }

  /// Doubled valuation; ImpreciseValue unless in the Unit state.
  int v2() const;
  /// Doubled absolute precision: the value is known modulo p^(abs/2).
  int abs_v2() const;
  int rel2() const { return state_ == State::Unit ? rel2_ : 0; }
  const Integral& unit() const { return unit_; }

  /// Exact norm; ImpreciseValue for an ImpreciseZero.
  Norm norm() const;
  /// An upper bound for the norm that is always available.
  Norm norm_bound() const;

  /// True when x is certainly of norm <= p^(-k2/2).
  bool negligible(int k2) const;

  PadicScalar operator-() const;
  PadicScalar inverse() const;
  /// Multiply by pi^k (k may be negative).
  PadicScalar shifted(int k) const;
  /// Unit digits treated as exact; ImpreciseZero becomes zero.
  PadicScalar promote() const;
  /// Galois conjugation of the unramified quadratic part.
  PadicScalar conjugate() const;

  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
  PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
  PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }

  /// Representation equality (state, valuation, precision and digits).
  friend bool operator==(const PadicScalar& a, const PadicScalar& b);

  /// value = p^p_exp * (sum comps[j] s^j + rt * sum comps[f + j] s^j), with
  /// each component the signed representative of its known digits.
  struct Expanded {
    int p_exp = 0;
    std::vector<mpz_class> comps;
  };
  Expanded expand() const;

  std::string debug_string() const;

 private:
  void check_same(const PadicScalar& o) const;
  void canonicalise();

  TowerRef tower_;
  State state_ = State::Zero;
  int v2_ = 0;    // valuation (Unit) or absolute bound (Imprecise)
  int rel2_ = 0;  // known doubled digits of the unit
  Integral unit_;
};

PadicScalar from_rational(const mpz_class& num, const mpz_class& den, const TowerRef& tower);
PadicScalar from_rational(long long num, long long den, const TowerRef& tower);

/// (1 - m)^(-1) as the truncated geometric series; requires |m| < 1.
PadicScalar geometric_inverse(const PadicScalar& m);

/// Square root of a unit by Newton iteration from the least residue root.
/// nullopt when the residue is not a square.
std::optional<PadicScalar> hensel_sqrt(const PadicScalar& a);

/// Square root of an arbitrary element: pi^(k/2) * hensel_sqrt(unit) when the
/// uniformiser exponent k is even; nullopt otherwise.
std::optional<PadicScalar> sqrt_in_tower(const PadicScalar& a);

ResidueScalar reduce_scalar(const PadicScalar& x);

/// x - y is certainly of norm <= p^(-k2/2).
bool congruent(const PadicScalar& x, const PadicScalar& y, int k2);

/// Largest k2 with congruent(x, y, k2), capped at `cap`.
int agreement_v2(const PadicScalar& x, const PadicScalar& y, int cap);

/// Default residual slack: ceil(log_p n) + 2 digits.
int default_slack(std::uint32_t p, std::size_t n);

}  // namespace padspec
