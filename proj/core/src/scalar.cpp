#include "padspec/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace padspec {

namespace {

int mpz_val(mpz_class& v, std::uint32_t p) {
  int e = 0;
  while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

mpz_class signed_rep(const mpz_class& c, const mpz_class& modulus) {
  mpz_class r = c % modulus;
  if (r < 0) r += modulus;
  if (2 * r > modulus) r -= modulus;
  return r;
}

}  // namespace

std::string Norm::to_string() const {
  if (zero) return "0";
  if (v2 % 2 == 0) return "p^" + std::to_string(-v2 / 2);
  return "p^(" + std::to_string(-v2) + "/2)";
}

PadicScalar::PadicScalar(TowerRef tower) : tower_(std::move(tower)) {
  if (!tower_) fail(Errc::InvalidArgument, "scalar without a tower");
}

PadicScalar PadicScalar::one(TowerRef tower) { return uniformiser_pow(0, std::move(tower)); }

PadicScalar PadicScalar::from_int(long long v, TowerRef tower) {
  return from_rational(mpz_class(std::to_string(v)), mpz_class(1), tower);
}

PadicScalar PadicScalar::from_mpz(const mpz_class& v, TowerRef tower) {
  return from_rational(v, mpz_class(1), tower);
}

PadicScalar PadicScalar::imprecise(int abs_v2, TowerRef tower) {
  PadicScalar r(std::move(tower));
  r.state_ = State::Imprecise;
  r.v2_ = abs_v2;
  return r;
}

PadicScalar PadicScalar::uniformiser_pow(int k, TowerRef tower) {
  PadicScalar r(std::move(tower));
  r.state_ = State::Unit;
  r.v2_ = k * r.tower_->step();
  r.rel2_ = r.tower_->cap_v2();
  r.unit_ = r.tower_->int_one();
  return r;
}

PadicScalar PadicScalar::from_integral(const Integral& raw, int shift_v2, int rel2, TowerRef tower) {
  const FieldTower& t = *tower;
  rel2 = std::min(rel2, t.cap_v2());
  const int val = t.int_valuation(raw);
  if (val == kInfiniteValuation || val * t.step() >= rel2) {
    return imprecise(shift_v2 + std::max(rel2, 0), std::move(tower));
  }
  PadicScalar r(std::move(tower));
  r.state_ = State::Unit;
  r.unit_ = t.int_div_uniformiser_pow(raw, val);
  r.v2_ = shift_v2 + val * t.step();
  r.rel2_ = rel2 - val * t.step();
  r.canonicalise();
  return r;
}

PadicScalar PadicScalar::lift(const ResidueScalar& r, TowerRef tower) {
  if (tower->fq_is_zero(r)) return zero(std::move(tower));
  const Integral raw = tower->int_lift(r);
  const int cap = tower->cap_v2();
  return from_integral(raw, 0, cap, std::move(tower));
}

PadicScalar PadicScalar::generator_pow(int j, TowerRef tower) {
  if (tower->degree() < 2) fail(Errc::InvalidArgument, "the tower has no unramified generator");
  Integral g = tower->int_zero();
  g[1] = 1;
  Integral acc = tower->int_one();
  for (int i = 0; i < j; ++i) acc = tower->int_mul(acc, g);
  const int cap = tower->cap_v2();
  return from_integral(acc, 0, cap, std::move(tower));
}

PadicScalar PadicScalar::root_p(TowerRef tower) {
  if (!tower->ramified()) fail(Errc::TowerMismatch, "rt needs a ramified tower");
  return uniformiser_pow(1, std::move(tower));
}

int PadicScalar::v2() const {
  if (state_ == State::Zero) return kInfiniteValuation;
  if (state_ == State::Imprecise) fail(Errc::ImpreciseValue, "valuation of an imprecise zero");
  return v2_;
}

int PadicScalar::abs_v2() const {
  switch (state_) {
    case State::Zero: return kInfiniteValuation;
    case State::Imprecise: return v2_;
    case State::Unit: return v2_ + rel2_;
  }
  return 0;
}

Norm PadicScalar::norm() const {
  if (state_ == State::Zero) return Norm::null();
  if (state_ == State::Imprecise) fail(Errc::ImpreciseValue, "norm of an imprecise zero");
  return Norm::of_v2(v2_);
}

Norm PadicScalar::norm_bound() const {
  if (state_ == State::Zero) return Norm::null();
  return Norm::of_v2(v2_);
}

bool PadicScalar::negligible(int k2) const { return state_ == State::Zero || v2_ >= k2; }

void PadicScalar::check_same(const PadicScalar& o) const {
  if (!tower_ || !o.tower_) fail(Errc::InvalidArgument, "uninitialised scalar");
  if (tower_ != o.tower_ && !tower_->same_as(*o.tower_)) {
    fail(Errc::TowerMismatch, tower_->describe() + " vs " + o.tower_->describe());
  }
}

void PadicScalar::canonicalise() {
  if (state_ != State::Unit) {
    unit_.clear();
    if (state_ == State::Zero) v2_ = 0;
    rel2_ = 0;
    return;
  }
  const FieldTower& t = *tower_;
  const int cap = t.cap_v2();
  if (rel2_ >= cap) {
    rel2_ = cap;
    return;
  }
  const int f = t.degree();
  if (!t.ramified()) {
    const mpz_class& m = t.p_pow(rel2_ / 2);
    for (int i = 0; i < f; ++i) mpz_mod(unit_[i].get_mpz_t(), unit_[i].get_mpz_t(), m.get_mpz_t());
  } else {
    const mpz_class& mx = t.p_pow((rel2_ + 1) / 2);
    const mpz_class& my = t.p_pow(rel2_ / 2);
    for (int i = 0; i < f; ++i) {
      mpz_mod(unit_[i].get_mpz_t(), unit_[i].get_mpz_t(), mx.get_mpz_t());
      mpz_mod(unit_[f + i].get_mpz_t(), unit_[f + i].get_mpz_t(), my.get_mpz_t());
    }
  }
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r = *this;
  if (state_ == State::Unit) {
    r.unit_ = tower_->int_neg(unit_);
    r.canonicalise();
  }
  return r;
}

PadicScalar PadicScalar::inverse() const {
  if (state_ == State::Zero) fail(Errc::DivisionByZero, "inverse of zero");
  if (state_ == State::Imprecise) fail(Errc::ImpreciseValue, "inverse of an imprecise zero");
  PadicScalar r = *this;
  r.v2_ = -v2_;
  r.unit_ = tower_->int_unit_inverse(unit_);
  r.canonicalise();
  return r;
}

PadicScalar PadicScalar::shifted(int k) const {
  PadicScalar r = *this;
  if (state_ != State::Zero) r.v2_ += k * tower_->step();
  return r;
}

PadicScalar PadicScalar::promote() const {
  if (state_ == State::Imprecise) return zero(tower_);
  PadicScalar r = *this;
  if (state_ == State::Unit) r.rel2_ = tower_->cap_v2();
  return r;
}

PadicScalar PadicScalar::conjugate() const {
  if (state_ != State::Unit) {
    if (tower_->degree() != 2) fail(Errc::TowerMismatch, "conjugation needs f = 2");
    return *this;
  }
  PadicScalar r = *this;
  r.unit_ = tower_->int_galois_conjugate(unit_);
  r.canonicalise();
  return r;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  using S = PadicScalar::State;
  a.check_same(b);
  if (a.state_ == S::Zero) return b;
  if (b.state_ == S::Zero) return a;
  if (a.state_ == S::Imprecise && b.state_ == S::Imprecise) {
    return PadicScalar::imprecise(std::min(a.v2_, b.v2_), a.tower_);
  }
  if (a.state_ == S::Imprecise || b.state_ == S::Imprecise) {
    const PadicScalar& u = a.state_ == S::Unit ? a : b;
    const int bound = a.state_ == S::Imprecise ? a.v2_ : b.v2_;
    if (u.v2_ < bound) {
      PadicScalar r = u;
      r.rel2_ = std::min(u.rel2_, bound - u.v2_);
      r.canonicalise();
      return r;
    }
    return PadicScalar::imprecise(std::min(bound, u.v2_ + u.rel2_), a.tower_);
  }
  const PadicScalar& x = a.v2_ <= b.v2_ ? a : b;
  const PadicScalar& y = a.v2_ <= b.v2_ ? b : a;
  const FieldTower& t = *a.tower_;
  const int abs = std::min(x.v2_ + x.rel2_, y.v2_ + y.rel2_);
  const int d = (y.v2_ - x.v2_) / t.step();
  const Integral w = t.int_add(x.unit_, t.int_mul_uniformiser_pow(y.unit_, d));
  return PadicScalar::from_integral(w, x.v2_, abs - x.v2_, a.tower_);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  using S = PadicScalar::State;
  a.check_same(b);
  if (a.state_ == S::Zero || b.state_ == S::Zero) return PadicScalar::zero(a.tower_);
  if (a.state_ == S::Imprecise || b.state_ == S::Imprecise) {
    return PadicScalar::imprecise(a.v2_ + b.v2_, a.tower_);
  }
  PadicScalar r(a.tower_);
  r.state_ = S::Unit;
  r.v2_ = a.v2_ + b.v2_;
  r.rel2_ = std::min(a.rel2_, b.rel2_);
  r.unit_ = a.tower_->int_mul(a.unit_, b.unit_);
  r.canonicalise();
  return r;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  a.check_same(b);
  return a * b.inverse();
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
  if (a.state_ != b.state_) return false;
  switch (a.state_) {
    case PadicScalar::State::Zero: return true;
    case PadicScalar::State::Imprecise: return a.v2_ == b.v2_;
    case PadicScalar::State::Unit: return a.v2_ == b.v2_ && a.rel2_ == b.rel2_ && a.unit_ == b.unit_;
  }
  return false;
}

PadicScalar::Expanded PadicScalar::expand() const {
  Expanded e;
  const FieldTower& t = *tower_;
  const int f = t.degree();
  e.comps.assign(t.rank(), mpz_class(0));
  if (state_ != State::Unit) return e;
  if (!t.ramified()) {
    const mpz_class& m = t.p_pow(rel2_ / 2);
    for (int i = 0; i < f; ++i) e.comps[i] = signed_rep(unit_[i], m);
    e.p_exp = v2_ / 2;
    return e;
  }
  std::vector<mpz_class> x(f), y(f);
  const mpz_class& mx = t.p_pow((rel2_ + 1) / 2);
  const mpz_class& my = t.p_pow(rel2_ / 2);
  for (int i = 0; i < f; ++i) {
    x[i] = signed_rep(unit_[i], mx);
    y[i] = signed_rep(unit_[f + i], my);
  }
  // floor division so that odd negative valuations shift correctly
  const int q = v2_ >= 0 ? v2_ / 2 : -((-v2_ + 1) / 2);
  e.p_exp = q;
  if (v2_ - 2 * q == 0) {
    for (int i = 0; i < f; ++i) {
      e.comps[i] = x[i];
      e.comps[f + i] = y[i];
    }
  } else {
    for (int i = 0; i < f; ++i) {
      e.comps[i] = y[i] * t.p();
      e.comps[f + i] = x[i];
    }
  }
  return e;
}

std::string PadicScalar::debug_string() const {
  std::ostringstream os;
  switch (state_) {
    case State::Zero: return "0";
    case State::Imprecise: os << "O(v2>=" << v2_ << ")"; return os.str();
    case State::Unit: break;
  }
  os << "pi^" << tower_->uniformiser_units(v2_) << "*(";
  for (std::size_t i = 0; i < unit_.size(); ++i) os << (i ? "," : "") << unit_[i].get_str();
  os << ")+O(v2>=" << v2_ + rel2_ << ")";
  return os.str();
}

PadicScalar from_rational(const mpz_class& num, const mpz_class& den, const TowerRef& tower) {
  if (den == 0) fail(Errc::DenominatorZero, "denominator is zero");
  if (num == 0) return PadicScalar::zero(tower);
  const FieldTower& t = *tower;
  mpz_class a = num;
  mpz_class b = den;
  const int va = mpz_val(a, t.p());
  const int vb = mpz_val(b, t.p());
  mpz_class binv;
  mpz_class bm = b % t.p_pow_n();
  if (bm < 0) bm += t.p_pow_n();
  mpz_invert(binv.get_mpz_t(), bm.get_mpz_t(), t.p_pow_n().get_mpz_t());
  Integral raw = t.int_from_mpz(mpz_class(a * binv));
  return PadicScalar::from_integral(raw, 2 * (va - vb), t.cap_v2(), tower);
}

PadicScalar from_rational(long long num, long long den, const TowerRef& tower) {
  return from_rational(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)), tower);
}

PadicScalar geometric_inverse(const PadicScalar& m) {
  const TowerRef& tower = m.tower();
  const bool small = m.is_zero() || (m.is_imprecise() ? m.abs_v2() > 0 : m.v2() > 0);
  if (!small) fail(Errc::NormNotLessThanOne, "geometric series needs |m| < 1");
  PadicScalar sum = PadicScalar::one(tower);
  PadicScalar term = sum;
  const int cap = tower->cap_v2();
  while (true) {
    term = term * m;
    if (term.negligible(cap)) break;
    sum += term;
  }
  return sum;
}

std::optional<PadicScalar> hensel_sqrt(const PadicScalar& a) {
  const TowerRef& tower = a.tower();
  const FieldTower& t = *tower;
  if (t.p() == 2) fail(Errc::EvenPrime, "square roots at p = 2 are not supported");
  if (!a.is_unit_state() || a.v2() != 0) fail(Errc::NotUnit, "hensel_sqrt needs a unit");
  const Fq r = t.int_residue(a.unit());
  const std::uint64_t q = t.enumerable_order();
  std::optional<Fq> best;
  for (std::uint64_t i = 1; i < q; ++i) {
    const Fq y = t.fq_from_index(i);
    if (t.fq_mul(y, y) == r && (!best || y < *best)) best = y;
  }
  if (!best) return std::nullopt;
  const PadicScalar half = PadicScalar::from_int(2, tower).inverse();
  PadicScalar y = PadicScalar::lift(*best, tower);
  for (int iter = 0; iter < 200; ++iter) {
    PadicScalar next = (y + a / y) * half;
    if (next == y) break;
    y = std::move(next);
  }
  return y;
}

std::optional<PadicScalar> sqrt_in_tower(const PadicScalar& a) {
  const TowerRef& tower = a.tower();
  if (a.is_zero()) return a;
  if (a.is_imprecise()) return PadicScalar::imprecise(a.abs_v2() / 2, tower);
  const int k = tower->uniformiser_units(a.v2());
  if (k % 2 != 0) return std::nullopt;
  auto root = hensel_sqrt(a.shifted(-k));
  if (!root) return std::nullopt;
  return root->shifted(k / 2);
}

ResidueScalar reduce_scalar(const PadicScalar& x) {
  const FieldTower& t = *x.tower();
  if (x.is_zero()) return t.fq_zero();
  if (x.is_imprecise()) {
    if (x.abs_v2() > 0) return t.fq_zero();
    fail(Errc::ImpreciseValue, "residue of an imprecise value is unknown");
  }
  if (x.v2() < 0) fail(Errc::NormExceedsOne, "reduction needs |x| <= 1");
  if (x.v2() > 0) return t.fq_zero();
  return t.int_residue(x.unit());
}

bool congruent(const PadicScalar& x, const PadicScalar& y, int k2) { return (x - y).negligible(k2); }

int agreement_v2(const PadicScalar& x, const PadicScalar& y, int cap) {
  const PadicScalar d = x - y;
  if (d.is_zero()) return cap;
  return std::min(d.is_imprecise() ? d.abs_v2() : d.v2(), cap);
}

int default_slack(std::uint32_t p, std::size_t n) {
  int e = 0;
  std::uint64_t pw = 1;
  while (pw < n) {
    pw *= p;
    ++e;
  }
  return e + 2;
}

}  // namespace padspec
