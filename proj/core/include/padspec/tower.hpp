#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace padspec {

/// Residue field element of F_{p^f}, coefficients of 1, s, ..., s^{f-1} reduced
/// modulo the tower modulus. Ordering is lexicographic starting at the constant
/// coefficient; that order is what every "sorted eigenvalue" output follows.
struct Fq {
  std::array<std::uint32_t, 4> c{};

  friend bool operator==(const Fq&, const Fq&) = default;
  friend auto operator<=>(const Fq&, const Fq&) = default;
};

class FieldTower;
using TowerRef = std::shared_ptr<const FieldTower>;

/// An element of the integer ring O_K truncated modulo p^N. The first f
/// coefficients are the unramified part in the basis 1, s, ..., s^{f-1}; a
/// ramified tower appends f more for the coefficient of rt (rt^2 = p).
using Integral = std::vector<mpz_class>;

inline constexpr int kInfiniteValuation = 1 << 29;

/// Q_p, then an unramified extension of degree f presented by a monic lift of
/// an irreducible residue polynomial, then optionally rt = sqrt(p).
///
/// Valuations are carried doubled ("v2") so that the ramified step has integer
/// exponents; one uniformiser is `step()` v2-units. Working precision is N
/// base-p digits of relative precision for every scalar.
class FieldTower {
 public:
  static constexpr std::uint64_t kMaxEnumerable = std::uint64_t{1} << 20;

  /// Builds a tower with the default modulus: x^2 + 1 when f = 2 and
  /// p = 3 mod 4, otherwise the least irreducible monic polynomial of degree f
  /// (coefficients read as a base-p integer, constant term least significant).
  static TowerRef make(std::uint32_t p, int f = 1, bool ramified = false, int precision = 20);

  std::uint32_t p() const { return p_; }
  int degree() const { return f_; }
  bool ramified() const { return ramified_; }
  int precision() const { return n_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  int step() const { return ramified_ ? 1 : 2; }
  int rank() const { return ramified_ ? 2 * f_ : f_; }
  int cap_v2() const { return 2 * n_; }
  int uniformiser_units(int v2) const { return ramified_ ? v2 : v2 / 2; }

  const mpz_class& p_pow_n() const { return ppow_.back(); }
  const mpz_class& p_pow(int k) const;

  bool same_as(const FieldTower& other) const noexcept;
  std::string describe() const;

  // Residue field F_q.
  unsigned __int128 residue_order() const;
  /// q as an integer; throws FieldTooLarge when q exceeds 2^20.
  std::uint64_t enumerable_order() const;
  Fq fq_zero() const { return Fq{}; }
  Fq fq_one() const;
  Fq fq_from_int(long long v) const;
  Fq fq_from_index(std::uint64_t index) const;
  std::uint64_t fq_index(const Fq& a) const;
  bool fq_is_zero(const Fq& a) const { return a == Fq{}; }
  Fq fq_add(const Fq& a, const Fq& b) const;
  Fq fq_sub(const Fq& a, const Fq& b) const;
  Fq fq_neg(const Fq& a) const;
  Fq fq_mul(const Fq& a, const Fq& b) const;
  Fq fq_inv(const Fq& a) const;
  Fq fq_pow(Fq a, unsigned __int128 e) const;
  std::string fq_to_string(const Fq& a) const;

  // Integer ring modulo p^N.
  Integral int_zero() const;
  Integral int_one() const;
  Integral int_from_mpz(const mpz_class& v) const;
  Integral int_lift(const Fq& a) const;
  Integral int_add(const Integral& a, const Integral& b) const;
  Integral int_sub(const Integral& a, const Integral& b) const;
  Integral int_neg(const Integral& a) const;
  Integral int_mul(const Integral& a, const Integral& b) const;
  Integral int_scale(const Integral& a, const mpz_class& k) const;
  /// Multiplies by pi^k (k >= 0), pi = p or rt.
  Integral int_mul_uniformiser_pow(const Integral& a, int k) const;
  /// Exact division by pi^k; requires int_valuation(a) >= k.
  Integral int_div_uniformiser_pow(const Integral& a, int k) const;
  /// Valuation in uniformiser units, kInfiniteValuation when a = 0 mod p^N.
  int int_valuation(const Integral& a) const;
  Fq int_residue(const Integral& a) const;
  Integral int_unit_inverse(const Integral& a) const;
  /// Non-trivial automorphism of the unramified quadratic part (f = 2 only);
  /// rt is fixed.
  Integral int_galois_conjugate(const Integral& a) const;
  bool int_equal(const Integral& a, const Integral& b) const;

 private:
  FieldTower() = default;

  Integral unram_mul(const mpz_class* a, const mpz_class* b) const;
  void reduce_mod(mpz_class& v) const;

  std::uint32_t p_ = 0;
  int f_ = 1;
  bool ramified_ = false;
  int n_ = 0;
  std::vector<std::uint32_t> modulus_;  // monic, low to high, size f + 1
  std::vector<mpz_class> ppow_;         // p^0 .. p^N
};

/// True iff `g` (monic, low to high) is irreducible over F_p.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& g, std::uint32_t p);
bool is_prime(std::uint64_t n);

}  // namespace padspec
