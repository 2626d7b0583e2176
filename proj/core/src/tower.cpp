#include "padspec/tower.hpp"

#include <algorithm>
#include <sstream>

#include "padspec/errors.hpp"

namespace padspec {

namespace {

using Poly = std::vector<std::uint64_t>;  // F_p[x], low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const std::uint64_t t = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = (a[shift + j] + p - mulmod(t, m[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m
Poly frobenius_power(const Poly& m, std::uint64_t p, int k) {
  Poly x{0, 1};
  Poly r = poly_mod(x, m, p);
  for (int i = 0; i < k; ++i) r = poly_powmod(r, p, m, p);
  return r;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int d = 2; d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& g, std::uint32_t p) {
  Poly m(g.begin(), g.end());
  trim(m);
  if (m.size() < 2) return false;
  const int n = static_cast<int>(m.size()) - 1;
  if (n == 1) return true;
  // Rabin: x^(p^n) = x mod g, and gcd(x^(p^(n/d)) - x, g) = 1 for each prime d | n.
  Poly x = poly_mod(Poly{0, 1}, m, p);
  if (frobenius_power(m, p, n) != x) return false;
  for (int d : prime_divisors(n)) {
    Poly h = frobenius_power(m, p, n / d);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Poly g2 = poly_gcd(m, h, p);
    if (g2.size() != 1) return false;
  }
  return true;
}

TowerRef FieldTower::make(std::uint32_t p, int f, bool ramified, int precision) {
  if (!is_prime(p)) fail(Errc::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) fail(Errc::InvalidArgument, "p must be below 2^31");
  if (f != 1 && f != 2 && f != 4) fail(Errc::InvalidArgument, "unramified degree must be 1, 2 or 4");
  if (precision < 4) fail(Errc::InvalidArgument, "precision N must be at least 4");

  auto tower = std::shared_ptr<FieldTower>(new FieldTower());
  tower->p_ = p;
  tower->f_ = f;
  tower->ramified_ = ramified;
  tower->n_ = precision;
  tower->ppow_.resize(precision + 1);
  tower->ppow_[0] = 1;
  for (int i = 1; i <= precision; ++i) tower->ppow_[i] = tower->ppow_[i - 1] * p;

  if (f == 1) {
    tower->modulus_ = {0, 1};
  } else if (f == 2 && p % 4 == 3) {
    tower->modulus_ = {1, 0, 1};
  } else {
    std::uint64_t count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> g(f + 1, 0);
      std::uint64_t t = idx;
      for (int i = 0; i < f; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[f] = 1;
      if (g[0] == 0) continue;
      if (is_irreducible_mod_p(g, p)) {
        tower->modulus_ = g;
        break;
      }
    }
    if (tower->modulus_.empty()) fail(Errc::InvalidArgument, "no irreducible modulus found");
  }
  return tower;
}

const mpz_class& FieldTower::p_pow(int k) const {
  if (k < 0 || k > n_) fail(Errc::InvalidArgument, "p_pow exponent out of range");
  return ppow_[k];
}

bool FieldTower::same_as(const FieldTower& other) const noexcept {
  return this == &other || (p_ == other.p_ && f_ == other.f_ && ramified_ == other.ramified_ &&
                            n_ == other.n_ && modulus_ == other.modulus_);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (f_ > 1) os << "(s), deg " << f_;
  if (ramified_) os << "(rt)";
  os << " @ N=" << n_;
  return os.str();
}

unsigned __int128 FieldTower::residue_order() const {
  unsigned __int128 q = 1;
  for (int i = 0; i < f_; ++i) q *= p_;
  return q;
}

std::uint64_t FieldTower::enumerable_order() const {
  const auto q = residue_order();
  if (q > kMaxEnumerable) fail(Errc::FieldTooLarge, "residue field too large for exhaustive search");
  return static_cast<std::uint64_t>(q);
}

Fq FieldTower::fq_one() const {
  Fq r;
  r.c[0] = 1;
  return r;
}

Fq FieldTower::fq_from_int(long long v) const {
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += p_;
  Fq r;
  r.c[0] = static_cast<std::uint32_t>(m);
  return r;
}

Fq FieldTower::fq_from_index(std::uint64_t index) const {
  Fq r;
  for (int i = 0; i < f_; ++i) {
    r.c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return r;
}

std::uint64_t FieldTower::fq_index(const Fq& a) const {
  std::uint64_t idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
  return idx;
}

Fq FieldTower::fq_add(const Fq& a, const Fq& b) const {
  Fq r;
  for (int i = 0; i < f_; ++i) {
    const std::uint64_t s = std::uint64_t{a.c[i]} + b.c[i];
    r.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Fq FieldTower::fq_sub(const Fq& a, const Fq& b) const {
  Fq r;
  for (int i = 0; i < f_; ++i) {
    r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : static_cast<std::uint32_t>(std::uint64_t{a.c[i]} + p_ - b.c[i]);
  }
  return r;
}

Fq FieldTower::fq_neg(const Fq& a) const { return fq_sub(Fq{}, a); }

Fq FieldTower::fq_mul(const Fq& a, const Fq& b) const {
  std::array<std::uint64_t, 8> prod{};
  for (int i = 0; i < f_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < f_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p_;
    }
  }
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    const std::uint64_t t = prod[k];
    if (t == 0) continue;
    prod[k] = 0;
    for (int j = 0; j < f_; ++j) {
      prod[k - f_ + j] = (prod[k - f_ + j] + (p_ - t) * modulus_[j]) % p_;
    }
  }
  Fq r;
  for (int i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

Fq FieldTower::fq_pow(Fq a, unsigned __int128 e) const {
  Fq r = fq_one();
  while (e) {
    if (e & 1) r = fq_mul(r, a);
    a = fq_mul(a, a);
    e >>= 1;
  }
  return r;
}

Fq FieldTower::fq_inv(const Fq& a) const {
  if (fq_is_zero(a)) fail(Errc::DivisionByZero, "inverse of zero in the residue field");
  return fq_pow(a, residue_order() - 2);
}

std::string FieldTower::fq_to_string(const Fq& a) const {
  if (f_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < f_; ++i) os << (i ? "," : "") << a.c[i];
  os << "]";
  return os.str();
}

void FieldTower::reduce_mod(mpz_class& v) const {
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p_pow_n().get_mpz_t());
}

Integral FieldTower::int_zero() const { return Integral(rank(), mpz_class(0)); }

Integral FieldTower::int_one() const {
  Integral r = int_zero();
  r[0] = 1;
  return r;
}

Integral FieldTower::int_from_mpz(const mpz_class& v) const {
  Integral r = int_zero();
  r[0] = v;
  reduce_mod(r[0]);
  return r;
}

Integral FieldTower::int_lift(const Fq& a) const {
  Integral r = int_zero();
  for (int i = 0; i < f_; ++i) r[i] = a.c[i];
  return r;
}

Integral FieldTower::int_add(const Integral& a, const Integral& b) const {
  Integral r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] + b[i];
    if (r[i] >= p_pow_n()) r[i] -= p_pow_n();
  }
  return r;
}

Integral FieldTower::int_sub(const Integral& a, const Integral& b) const {
  Integral r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] - b[i];
    if (r[i] < 0) r[i] += p_pow_n();
  }
  return r;
}

Integral FieldTower::int_neg(const Integral& a) const {
  Integral r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] == 0 ? mpz_class(0) : mpz_class(p_pow_n() - a[i]);
  return r;
}

Integral FieldTower::unram_mul(const mpz_class* a, const mpz_class* b) const {
  std::vector<mpz_class> prod(2 * f_ - 1, mpz_class(0));
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] += a[i] * b[j];
  }
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    if (prod[k] == 0) continue;
    for (int j = 0; j < f_; ++j) {
      if (modulus_[j] != 0) prod[k - f_ + j] -= prod[k] * modulus_[j];
    }
    prod[k] = 0;
  }
  Integral r(prod.begin(), prod.begin() + f_);
  for (auto& v : r) reduce_mod(v);
  return r;
}

Integral FieldTower::int_mul(const Integral& a, const Integral& b) const {
  if (!ramified_) return unram_mul(a.data(), b.data());
  // (x + y rt)(z + w rt) = (xz + p yw) + (xw + yz) rt
  const Integral xz = unram_mul(a.data(), b.data());
  const Integral yw = unram_mul(a.data() + f_, b.data() + f_);
  const Integral xw = unram_mul(a.data(), b.data() + f_);
  const Integral yz = unram_mul(a.data() + f_, b.data());
  Integral r(2 * f_);
  for (int i = 0; i < f_; ++i) {
    r[i] = xz[i] + yw[i] * p_;
    reduce_mod(r[i]);
    r[f_ + i] = xw[i] + yz[i];
    reduce_mod(r[f_ + i]);
  }
  return r;
}

Integral FieldTower::int_scale(const Integral& a, const mpz_class& k) const {
  Integral r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] * k;
    reduce_mod(r[i]);
  }
  return r;
}

Integral FieldTower::int_mul_uniformiser_pow(const Integral& a, int k) const {
  if (k < 0) fail(Errc::InvalidArgument, "negative uniformiser power");
  if (k == 0) return a;
  if (!ramified_) return k >= n_ ? int_zero() : int_scale(a, p_pow(k));
  Integral r = a;
  if (k % 2 == 1) {
    // rt (x + y rt) = p y + x rt
    Integral t(2 * f_);
    for (int i = 0; i < f_; ++i) {
      t[i] = r[f_ + i] * p_;
      reduce_mod(t[i]);
      t[f_ + i] = r[i];
    }
    r = std::move(t);
  }
  const int half = k / 2;
  return half >= n_ ? int_zero() : (half == 0 ? r : int_scale(r, p_pow(half)));
}

Integral FieldTower::int_div_uniformiser_pow(const Integral& a, int k) const {
  if (k == 0) return a;
  Integral r = a;
  int half = k;
  if (ramified_) {
    if (k % 2 == 1) {
      // (x + y rt) / rt = y + (x / p) rt
      Integral t(2 * f_);
      for (int i = 0; i < f_; ++i) {
        t[i] = r[f_ + i];
        mpz_divexact_ui(t[f_ + i].get_mpz_t(), r[i].get_mpz_t(), p_);
      }
      r = std::move(t);
    }
    half = k / 2;
  }
  if (half > 0) {
    const mpz_class& d = p_pow(half);
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

int FieldTower::int_valuation(const Integral& a) const {
  auto part_val = [&](std::size_t from, std::size_t to) {
    int best = kInfiniteValuation;
    mpz_class t;
    for (std::size_t i = from; i < to; ++i) {
      if (a[i] == 0) continue;
      int v = 0;
      t = a[i];
      while (mpz_divisible_ui_p(t.get_mpz_t(), p_)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p_);
        ++v;
      }
      best = std::min(best, v);
    }
    return best;
  };
  if (!ramified_) return part_val(0, f_);
  const int vx = part_val(0, f_);
  const int vy = part_val(f_, 2 * f_);
  const int ex = vx == kInfiniteValuation ? kInfiniteValuation : 2 * vx;
  const int ey = vy == kInfiniteValuation ? kInfiniteValuation : 2 * vy + 1;
  return std::min(ex, ey);
}

Fq FieldTower::int_residue(const Integral& a) const {
  Fq r;
  for (int i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(a[i].get_mpz_t(), p_));
  return r;
}

Integral FieldTower::int_unit_inverse(const Integral& a) const {
  const Fq res = int_residue(a);
  if (fq_is_zero(res)) fail(Errc::NotUnit, "inverse of a non-unit in the integer ring");
  Integral t = int_lift(fq_inv(res));
  const Integral one = int_one();
  for (int iter = 0; iter < 64; ++iter) {
    const Integral e = int_sub(one, int_mul(a, t));
    if (std::all_of(e.begin(), e.end(), [](const mpz_class& v) { return v == 0; })) return t;
    t = int_add(t, int_mul(t, e));
  }
  fail(Errc::PrecisionExhausted, "unit inverse did not converge");
}

Integral FieldTower::int_galois_conjugate(const Integral& a) const {
  if (f_ != 2) fail(Errc::TowerMismatch, "Galois conjugation needs an unramified quadratic tower");
  // s -> s' = -m1 - s for modulus s^2 + m1 s + m0.
  Integral r = a;
  for (int part = 0; part < (ramified_ ? 2 : 1); ++part) {
    const mpz_class& x0 = a[part * 2];
    const mpz_class& x1 = a[part * 2 + 1];
    r[part * 2] = x0 - x1 * modulus_[1];
    reduce_mod(r[part * 2]);
    r[part * 2 + 1] = x1 == 0 ? mpz_class(0) : mpz_class(p_pow_n() - x1);
  }
  return r;
}

bool FieldTower::int_equal(const Integral& a, const Integral& b) const { return a == b; }

}  // namespace padspec
