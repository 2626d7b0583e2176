#include <doctest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "padspec/spectral.hpp"

using namespace padspec;

namespace {

PMatrix random_vector(const TowerRef& t, oracle::Rng& rng, std::size_t n) {
  PMatrix v(t, n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = oracle::random_rational(rng, t->p(), 3);
    v(i, 0) = from_rational(a, b, t);
  }
  return v;
}

void check_partition_invariants(const PartitionOfUnity& pu, oracle::Rng& rng, int k2) {
  const auto& a = pu.source;
  const auto& t = a.tower();
  const std::size_t n = a.rows();
  PMatrix sum(t, n, n);
  for (std::size_t i = 0; i < pu.classes.size(); ++i) {
    const auto& p = pu.classes[i].projection;
    sum = sum + p;
    CHECK(congruent(p * p, p, k2));
    CHECK(congruent(p * a, a * p, k2));
    CHECK(sup_norm(p) == Norm::of_v2(0));
    for (std::size_t j = 0; j < i; ++j) CHECK(negligible(p * pu.classes[j].projection, k2));
    // restricted to range(P), A - lift(lambda) has norm < 1
    auto shifted = (a.minus_scalar(PadicScalar::lift(pu.classes[i].lambda, t))) * p;
    CHECK(norm_bound(shifted) < Norm::of_v2(0));
  }
  CHECK(congruent(sum, PMatrix::identity(t, n), k2));
  for (int s = 0; s < 20; ++s) {
    // ||sum c P|| = max |c|
    PMatrix comb(t, n, n);
    Norm best = Norm::null();
    for (const auto& c : pu.classes) {
      auto [x, y] = oracle::random_rational(rng, t->p(), 3);
      auto coef = padspec::from_rational(x, y, t);
      comb = comb + c.projection.scaled(coef);
      best = std::max(best, coef.norm());
    }
    CHECK(sup_norm(comb) == best);
    // ||v|| = max ||P v||
    auto v = random_vector(t, rng, n);
    Norm m = Norm::null();
    for (const auto& c : pu.classes) m = std::max(m, sup_norm(c.projection * v));
    CHECK(m == sup_norm(v));
  }
}

}  // namespace

TEST_CASE("reductive_spectrum") {
  auto t = FieldTower::make(5);
  auto s = reductive_spectrum(PMatrix::from_ints(t, {{1, 0}, {0, 5}}));
  CHECK(s.normalizer == 0);
  CHECK(s.eigenvalues == std::vector{std::pair{t->fq_zero(), 1}, std::pair{t->fq_one(), 1}});
  auto sx = reductive_spectrum(PMatrix::from_ints(t, {{0, 1}, {1, 0}}));
  CHECK(sx.outcome.diagonalisable);
  CHECK(sx.eigenvalues == std::vector{std::pair{t->fq_one(), 1}, std::pair{t->fq_from_int(-1), 1}});
  auto nil = reductive_spectrum(PMatrix::from_ints(t, {{0, 1}, {0, 0}}));
  CHECK_FALSE(nil.outcome.diagonalisable);
  CHECK(nil.outcome.reason == ResidueFailure::NotSemisimple);
  CHECK(reductive_spectrum(PMatrix::from_ints(t, {{0, 25}, {0, 0}})).normalizer == 2);
  CHECK_THROWS_WITH_AS(reductive_spectrum(PMatrix(t, 2, 2)), doctest::Contains("ZeroMatrix"), Error);
}

TEST_CASE("lift_idempotent") {
  auto t = FieldTower::make(5, 1, false, 10);
  auto e = PMatrix::from_ints(t, {{1, 3}, {0, 0}});
  CHECK(lift_idempotent(e) == e);
  PMatrix one_plus_p(t, 1, 1);
  one_plus_p(0, 0) = PadicScalar::from_int(6, t);
  int iters = -1;
  auto l = lift_idempotent(one_plus_p, &iters);
  CHECK(congruent(l(0, 0), PadicScalar::one(t), t->cap_v2()));
  CHECK(iters <= 5);
  CHECK_THROWS_WITH_AS(lift_idempotent(PMatrix::from_ints(t, {{2}})), doctest::Contains("NotApproxIdempotent"), Error);

  // scalar oracle: x -> 3x^2 - 2x^3 from 1 + p converges to 1 quadratically
  mpz_class x = 6, mod = 9765625;  // 5^10
  for (int i = 0; i < 5; ++i) x = ((3 * x * x - 2 * x * x * x) % mod + mod) % mod;
  CHECK(x == 1);

  oracle::Rng rng(2);
  auto t7 = FieldTower::make(7, 1, false, 16);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 3 + k % 3;
    auto u = oracle::random_unimodular_mod_p(rng, 7, n);
    std::vector<mpq_class> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<long>(i % 2) + 7 * oracle::uniform(rng, -5, 5);
    auto p0 = build::planted(t7, u, d);
    int it = 0;
    auto p = lift_idempotent(p0, &it);
    CHECK(negligible(p * p - p, t7->cap_v2() - 2));
    CHECK(norm_bound(p - p0) < Norm::of_v2(0));
    CHECK(it <= 8);
  }
}

TEST_CASE("partition_of_unity examples") {
  oracle::Rng rng(1);
  auto t = FieldTower::make(5, 1, false, 12);
  auto pu = partition_of_unity(PMatrix::from_ints(t, {{0, 0}, {0, 1}}));
  REQUIRE(pu.classes.size() == 2);
  CHECK(congruent(pu.classes[0].projection, PMatrix::from_ints(t, {{1, 0}, {0, 0}}), t->cap_v2()));
  CHECK(congruent(pu.classes[1].projection, PMatrix::from_ints(t, {{0, 0}, {0, 1}}), t->cap_v2()));
  auto single = partition_of_unity(PMatrix::from_ints(t, {{3, 5}, {10, 8}}));
  REQUIRE(single.classes.size() == 1);
  CHECK(single.classes[0].projection == PMatrix::identity(t, 2));
  auto mixed = partition_of_unity(PMatrix::from_ints(t, {{0, 5}, {5, 1}}));
  REQUIRE(mixed.classes.size() == 2);
  check_partition_invariants(mixed, rng, tolerance_v2(*t, 2));
  CHECK(mixed.certified_v2 >= tolerance_v2(*t, 2));
  CHECK_THROWS_WITH_AS(partition_of_unity(PMatrix::from_ints(t, {{5, 0}, {0, 5}})), doctest::Contains("NormNotOne"), Error);
  CHECK_THROWS_WITH_AS(partition_of_unity(PMatrix::from_ints(t, {{0, 1}, {0, 0}})),
                       doctest::Contains("ReductionNotDiagonalisable"), Error);
}

TEST_CASE("partition invariants on planted matrices") {
  oracle::Rng rng(99);
  for (auto [p, f] : {std::pair{3u, 1}, std::pair{5u, 1}, std::pair{7u, 1}, std::pair{3u, 2}}) {
    auto t = FieldTower::make(p, f, false, 16);
    for (int k = 0; k < 15; ++k) {
      const std::size_t n = 2 + k % 4;
      auto u = oracle::random_unimodular_mod_p(rng, p, n);
      std::vector<mpq_class> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = oracle::uniform(rng, -20, 20);
      d[0] = 1 + static_cast<long>(p) * oracle::uniform(rng, 0, 3);
      auto a = build::planted(t, u, d);
      if (sup_norm(a) != Norm::of_v2(0)) continue;
      auto pu = partition_of_unity(a);
      check_partition_invariants(pu, rng, tolerance_v2(*t, n));
      // rank of each class equals the count of planted residues
      for (const auto& c : pu.classes) {
        std::size_t cnt = 0;
        for (auto& x : d) {
          mpz_class r = x.get_num() % p;
          if (r < 0) r += p;
          if (r.get_ui() == c.lambda.c[0]) ++cnt;
        }
        CHECK(cnt == c.rank);
      }
      // lift independence: shift each Lagrange coefficient by p * (random)
      const auto red = matrix_reduction(a);
      std::vector<Fq> nodes;
      for (auto& c : pu.classes) nodes.push_back(c.lambda);
      if (nodes.size() < 2) continue;
      auto es = lagrange_idempotents(t, nodes);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<PadicScalar> coeffs;
        for (auto& c : es[i].coeffs())
          coeffs.push_back(PadicScalar::lift(c, t) + PadicScalar::from_int(static_cast<long long>(p) * oracle::uniform(rng, -9, 9), t));
        auto alt = idempotent_from_lift(a, coeffs);
        CHECK(congruent(alt, pu.classes[i].projection, tolerance_v2(*t, n)));
      }
    }
  }
}

TEST_CASE("sigma_classes") {
  auto t = FieldTower::make(5, 1, false, 12);
  CHECK(sigma_classes(PMatrix::from_ints(t, {{0, 0}, {0, 1}})).size() == 2);
  // diag(1, 1 + p): normalising M itself gives a scalar reduction; the
  // shifted matrix M - M11 = diag(0, p) separates after normalisation
  auto m = PMatrix::from_ints(t, {{1, 0}, {0, 6}});
  CHECK(sigma_classes(m).size() == 1);
  CHECK(sigma_classes(m.minus_scalar(m(0, 0))).size() == 2);
  CHECK(sigma_classes(m.minus_scalar(m(0, 0)))[0].normalizer == 1);
  auto sx = sigma_classes(PMatrix::from_ints(t, {{0, 1}, {1, 0}}));
  REQUIRE(sx.size() == 2);
  CHECK(sx[0].lambda == t->fq_one());
  CHECK(sx[1].lambda == t->fq_from_int(-1));
}
