#include <doctest.h>

#include <functional>
#include <map>

#include "builders.hpp"
#include "oracles.hpp"
#include "padspec/funcalc.hpp"
#include "padspec/unidiag.hpp"

using namespace padspec;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::InvalidArgument;
}

PDisc disc(const TowerRef& t, long long center, int r) { return PDisc::with_exponent(PadicScalar::from_int(center, t), r); }

// Planted instance together with a random locally constant function and the
// exact value U0 diag(c(lambda)) U0^-1 computed over Q.
struct Instance {
  PMatrix a;
  LocallyConstantFn c;
  PMatrix expected;
};

Instance random_instance(oracle::Rng& rng, const TowerRef& t, std::size_t n) {
  const std::uint32_t p = t->p();
  const auto u0 = oracle::random_unimodular_mod_p(rng, p, n);
  std::vector<mpq_class> lam(n);
  for (auto& x : lam) x = oracle::uniform(rng, -60, 60);
  const int r = static_cast<int>(oracle::uniform(rng, 0, 3));
  mpz_class mod = 1;
  for (int k = 0; k < r; ++k) mod *= p;
  // one disc per class of lambda mod p^r, with a random rational value
  std::map<mpz_class, mpq_class> value_of;
  std::vector<Piece> pieces;
  for (const auto& l : lam) {
    mpz_class cls = l.get_num() % mod;
    if (cls < 0) cls += mod;
    if (value_of.count(cls)) continue;
    auto [num, den] = oracle::random_rational(rng, p, 2);
    value_of[cls] = mpq_class(num, den);
    pieces.push_back({PDisc::with_exponent(PadicScalar::from_mpz(cls, t), r), from_rational(num, den, t)});
  }
  std::vector<mpq_class> cd;
  for (const auto& l : lam) {
    mpz_class cls = l.get_num() % mod;
    if (cls < 0) cls += mod;
    cd.push_back(value_of[cls]);
  }
  return {build::planted(t, u0, lam), LocallyConstantFn(std::move(pieces)), build::planted(t, u0, cd)};
}

}  // namespace

TEST_CASE("discs: membership and overlap") {
  auto t = FieldTower::make(5, 1, false, 10);
  const PDisc d = disc(t, 3, 2);
  CHECK(d.contains(PadicScalar::from_int(3 + 25 * 7, t)));
  CHECK_FALSE(d.contains(PadicScalar::from_int(3 + 5, t)));
  CHECK(d.meets(disc(t, 3, 1)));
  CHECK(d.meets(disc(t, 28, 4)));
  CHECK_FALSE(d.meets(disc(t, 8, 2)));
  CHECK(code_of([&] { LocallyConstantFn({{d, PadicScalar::one(t)}, {disc(t, 3, 1), PadicScalar::one(t)}}); }) ==
        Errc::OverlappingPieces);
}

TEST_CASE("constant function on a disc holding the spectrum") {
  auto t = FieldTower::make(5, 1, false, 14);
  const PMatrix a = PMatrix::from_ints(t, {{2, 1, 0}, {1, 2, 0}, {0, 0, 7}});
  const PadicScalar g = from_rational(3, 7, t);
  const LocallyConstantFn c({{disc(t, 0, 0), g}});
  CHECK(congruent(apply_locally_constant(c, a), PMatrix::identity(t, 3).scaled(g), tolerance_v2(*t, 3)));
}

TEST_CASE("indicator of the eigenvalue 1 of pauli x") {
  auto t = FieldTower::make(5, 1, false, 12);
  const PMatrix sx = PMatrix::from_ints(t, {{0, 1}, {1, 0}});
  const LocallyConstantFn c({{disc(t, 1, 1), PadicScalar::one(t)}, {disc(t, -1, 1), PadicScalar::zero(t)}});
  const PMatrix pp = apply_locally_constant(c, sx);
  const int k2 = tolerance_v2(*t, 2);
  CHECK(congruent(pp * pp, pp, k2));
  CHECK(congruent(sx * pp, pp, k2));
  CHECK(congruent(pp, PMatrix::from_ints(t, {{1, 1}, {1, 1}}).scaled(from_rational(1, 2, t)), k2));
}

TEST_CASE("identity values return A") {
  auto t = FieldTower::make(7, 1, false, 16);
  const PMatrix a = build::planted(t, {{1, 2, 0}, {0, 1, 3}, {1, 0, 2}}, {mpq_class(1), mpq_class(8), mpq_class(3)});
  std::vector<Piece> pieces;
  for (long long l : {1, 8, 3}) pieces.push_back({disc(t, l, 2), PadicScalar::from_int(l, t)});
  CHECK(congruent(apply_locally_constant(LocallyConstantFn(pieces), a), a, tolerance_v2(*t, 3)));
}

TEST_CASE("diagonal input and the zero function") {
  auto t = FieldTower::make(5, 1, false, 14);
  const PMatrix a = PMatrix::from_ints(t, {{1, 0, 0}, {0, 6, 0}, {0, 0, 2}});
  const LocallyConstantFn c({{disc(t, 1, 1), PadicScalar::from_int(10, t)}, {disc(t, 2, 1), PadicScalar::from_int(-3, t)}});
  const PMatrix ca = apply_locally_constant(c, a);
  CHECK(congruent(ca, PMatrix::from_ints(t, {{10, 0, 0}, {0, 10, 0}, {0, 0, -3}}), tolerance_v2(*t, 3)));
  const LocallyConstantFn z({{disc(t, 0, 0), PadicScalar::zero(t)}});
  CHECK(negligible(apply_locally_constant(z, a), tolerance_v2(*t, 3)));
  CHECK(negligible(apply_via_diagonalisation(z, a), tolerance_v2(*t, 3)));
}

TEST_CASE("uncovered spectrum and non-naive input are rejected") {
  auto t = FieldTower::make(5, 1, false, 12);
  const PMatrix sx = PMatrix::from_ints(t, {{0, 1}, {1, 0}});
  const LocallyConstantFn c({{disc(t, 1, 1), PadicScalar::one(t)}});
  CHECK(code_of([&] { apply_locally_constant(c, sx); }) == Errc::SpectrumNotCovered);
  const PMatrix j = PMatrix::from_ints(t, {{1, 1}, {0, 1}});
  CHECK(code_of([&] { apply_locally_constant(LocallyConstantFn({{disc(t, 0, 0), PadicScalar::one(t)}}), j); }) ==
        Errc::NotNaive);
}

TEST_CASE("projection route matches the exact oracle and the diagonalisation route") {
  oracle::Rng rng(0xfc);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      auto t = FieldTower::make(p, 1, false, static_cast<int>(n) * default_slack(p, n) + 8);
      const int k2 = tolerance_v2(*t, n);
      for (int rep = 0; rep < 5; ++rep) {
        const Instance in = random_instance(rng, t, n);
        const PMatrix x = apply_locally_constant(in.c, in.a);
        const PMatrix y = apply_via_diagonalisation(in.c, in.a);
        CHECK(congruent(x, in.expected, k2));
        CHECK(congruent(y, in.expected, k2));
      }
    }
  }
}

TEST_CASE("refining a piece leaves c(A) unchanged") {
  oracle::Rng rng(0x3e);
  auto t = FieldTower::make(3, 1, false, 24);
  const int k2 = tolerance_v2(*t, 3);
  for (int rep = 0; rep < 5; ++rep) {
    const Instance in = random_instance(rng, t, 3);
    const PMatrix base = apply_locally_constant(in.c, in.a);
    std::vector<Piece> finer;
    for (const auto& pc : in.c.pieces()) {
      const int r = pc.disc.radius_v2 / 2;
      mpz_class step = 1;
      for (int k = 0; k < r; ++k) step *= 3;
      for (int j = 0; j < 3; ++j)
        finer.push_back({PDisc::with_exponent(pc.disc.center + PadicScalar::from_mpz(step * j, t), r + 1), pc.value});
    }
    CHECK(congruent(apply_locally_constant(LocallyConstantFn(finer), in.a), base, k2));
  }
}

TEST_CASE("indicator pieces form a partition of unity") {
  auto t = FieldTower::make(5, 1, false, 16);
  const PMatrix a = build::planted(t, {{1, 1, 0}, {0, 1, 1}, {2, 0, 1}}, {mpq_class(0), mpq_class(5), mpq_class(1)});
  const int k2 = tolerance_v2(*t, 3);
  std::vector<PMatrix> ps;
  for (long long l : {0, 5, 1}) {
    std::vector<Piece> pieces;
    for (long long m : {0, 5, 1}) pieces.push_back({disc(t, m, 2), PadicScalar::from_int(m == l ? 1 : 0, t)});
    ps.push_back(apply_locally_constant(LocallyConstantFn(pieces), a));
  }
  PMatrix sum(t, 3, 3);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(congruent(ps[i] * ps[i], ps[i], k2));
    for (std::size_t j = 0; j < i; ++j) CHECK(negligible(ps[i] * ps[j], k2));
    sum = sum + ps[i];
  }
  CHECK(congruent(sum, PMatrix::identity(t, 3), k2));
}

TEST_CASE("isometry and ring identities") {
  auto t = FieldTower::make(5, 1, false, 12);
  const PMatrix sx = PMatrix::from_ints(t, {{0, 1}, {1, 0}});
  oracle::Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto v = [&] {
      auto [a, b] = oracle::random_rational(rng, 5, 2);
      return from_rational(a, b, t);
    };
    const LocallyConstantFn c({{disc(t, 1, 1), v()}, {disc(t, -1, 1), v()}});
    const LocallyConstantFn c2({{disc(t, 0, 0), v()}});
    const auto rep1 = calculus_isometry_check(c, c2, sx);
    CHECK_MESSAGE(rep1.ok, (rep1.failures.empty() ? std::string() : rep1.failures.front()));
    const PadicScalar g = from_rational(25, 3, t);
    const Norm n1 = sup_norm(apply_locally_constant(c, sx));
    const Norm n2 = sup_norm(apply_locally_constant(c.scaled(g), sx));
    CHECK(n2 == g.norm() * n1);
  }
  const LocallyConstantFn one({{disc(t, 0, 0), PadicScalar::one(t)}});
  const PMatrix ia = apply_locally_constant(one, sx);
  CHECK(congruent(ia, PMatrix::identity(t, 2), tolerance_v2(*t, 2)));
  CHECK(sup_norm(ia) == Norm::of_v2(0));
}
