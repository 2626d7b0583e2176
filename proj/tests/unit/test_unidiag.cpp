#include <doctest.h>

#include <map>

#include "builders.hpp"
#include "oracles.hpp"
#include "padspec/involution.hpp"
#include "padspec/unidiag.hpp"

using namespace padspec;

namespace {

PadicScalar sqrt_minus_one(const TowerRef& t) {
  auto r = hensel_sqrt(PadicScalar::from_int(-1, t));
  REQUIRE(r.has_value());
  return *r;
}

void check_outcome_sound(const PMatrix& m, const UnidiagOutcome& o) {
  REQUIRE(o.success);
  CHECK(is_unitary(o.u).unitary);
  const Norm nm = sup_norm(m);
  const PMatrix lhs = m * o.u - o.u * PMatrix::diagonal(m.tower(), o.d);
  CHECK(negligible(lhs, nm.v2 + 2 * o.certified_precision));
}

// Every planted value is matched by a distinct recovered value to k2.
bool multiset_match(const std::vector<PadicScalar>& got, const std::vector<PadicScalar>& want, int k2) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(got.size(), false);
  for (const auto& w : want) {
    bool found = false;
    for (std::size_t i = 0; i < got.size() && !found; ++i) {
      if (!used[i] && congruent(got[i], w, k2)) used[i] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pauli x over Q_5 has spectrum 1 and -1") {
  auto t = FieldTower::make(5, 1, false, 12);
  const PMatrix sx = PMatrix::from_ints(t, {{0, 1}, {1, 0}});
  const auto o = unitary_diagonalise(sx);
  check_outcome_sound(sx, o);
  CHECK(multiset_match(o.d, {PadicScalar::one(t), PadicScalar::from_int(-1, t)}, 2 * o.certified_precision));
  CHECK(o.class_tree.children.size() == 2);
}

TEST_CASE("pauli family diagonalises for odd p") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    // i lives in Q_p for p = 1 mod 4 and in the quadratic extension otherwise
    auto t = FieldTower::make(p, p % 4 == 1 ? 1 : 2, false, 14);
    const PadicScalar i = p % 4 == 1 ? sqrt_minus_one(t) : PadicScalar::generator_pow(1, t);
    const PadicScalar z = PadicScalar::zero(t), one = PadicScalar::one(t);
    PMatrix sy(t, 2, 2);
    sy(0, 0) = z;
    sy(0, 1) = -i;
    sy(1, 0) = i;
    sy(1, 1) = z;
    const PMatrix sx = PMatrix::from_ints(t, {{0, 1}, {1, 0}});
    const PMatrix sz = PMatrix::from_ints(t, {{1, 0}, {0, -1}});
    for (const PMatrix* m : std::vector<const PMatrix*>{&sx, &sy, &sz}) {
      const auto o = unitary_diagonalise(*m);
      check_outcome_sound(*m, o);
      CHECK(multiset_match(o.d, {one, -one}, 2 * o.certified_precision));
    }
  }
}

TEST_CASE("symmetric nilpotent matrix over Q_5 fails at depth 0") {
  auto t = FieldTower::make(5, 1, false, 12);
  const PadicScalar i = sqrt_minus_one(t);
  PMatrix m(t, 2, 2);
  m(0, 0) = PadicScalar::one(t);
  m(0, 1) = i;
  m(1, 0) = i;
  m(1, 1) = PadicScalar::from_int(-1, t);
  CHECK(negligible(m * m, 2 * 11));
  const auto o = unitary_diagonalise(m);
  REQUIRE_FALSE(o.success);
  REQUIRE(o.certificate.has_value());
  CHECK(o.certificate->reason == ResidueFailure::NotSemisimple);
  CHECK(o.certificate->depth == 0);
  CHECK(replay_certificate(m, *o.certificate) == o.certificate->offending);
  CHECK_THROWS_AS(spectrum_kvalued(m), Error);
  const auto rep = involution_criteria(m, InvolutionKind::Symmetric);
  CHECK(rep.prediction == Prediction::NotDiagonalisable);
}

TEST_CASE("diagonal matrices are returned with U = I") {
  auto t = FieldTower::make(5, 1, false, 14);
  for (const auto& rows : std::vector<std::vector<std::vector<long long>>>{
           {{1, 0, 0}, {0, 3, 0}, {0, 0, 2}}, {{7, 0}, {0, 7}}, {{5, 0}, {0, 1}}, {{0, 0}, {0, 0}}}) {
    const PMatrix m = PMatrix::from_ints(t, rows);
    const auto o = unitary_diagonalise(m);
    REQUIRE(o.success);
    CHECK(o.u == PMatrix::identity(t, m.rows()));
    for (std::size_t k = 0; k < m.rows(); ++k) CHECK(congruent(o.d[k], m(k, k), 2 * o.certified_precision));
  }
}

TEST_CASE("spectrum of diag(1, p) attains the operator norm") {
  auto t = FieldTower::make(3, 1, false, 12);
  const PMatrix m = PMatrix::from_ints(t, {{1, 0}, {0, 3}});
  const auto d = spectrum_kvalued(m);
  Norm best = Norm::null();
  for (const auto& x : d) best = std::max(best, x.norm());
  CHECK(best == sup_norm(m));
}

TEST_CASE("planted spectra are recovered") {
  oracle::Rng rng(0x51d);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const int s = default_slack(p, n);
      auto t = FieldTower::make(p, 1, false, static_cast<int>(n) * s + 6);
      for (int rep = 0; rep < 6; ++rep) {
        const auto u0 = oracle::random_unimodular_mod_p(rng, p, n);
        std::vector<mpq_class> lam(n);
        for (auto& x : lam) x = oracle::uniform(rng, -40, 40);
        const PMatrix m = build::planted(t, u0, lam);
        const auto o = unitary_diagonalise(m);
        check_outcome_sound(m, o);
        std::vector<PadicScalar> want;
        for (const auto& x : lam) want.push_back(from_rational(x.get_num(), x.get_den(), t));
        CHECK(multiset_match(o.d, want, 2 * o.certified_precision));
        CHECK(o.depth <= static_cast<int>(n));
      }
    }
  }
}

TEST_CASE("planted Jordan blocks yield replayable certificates") {
  oracle::Rng rng(0x10d);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const int s = default_slack(p, n);
      auto t = FieldTower::make(p, 1, false, static_cast<int>(n) * s + 6);
      for (int rep = 0; rep < 4; ++rep) {
        const auto u0 = oracle::random_unimodular_mod_p(rng, p, n);
        oracle::QMatrix j(n, std::vector<mpq_class>(n, 0));
        for (std::size_t k = 0; k < n; ++k) j[k][k] = oracle::uniform(rng, -20, 20);
        j[1][1] = j[0][0];
        j[0][1] = 1;
        const auto uq = oracle::to_rational(u0);
        const PMatrix m = build::from_rational(
            t, oracle::rational_product(oracle::rational_product(uq, j), oracle::rational_inverse(uq)));
        const auto o = unitary_diagonalise(m);
        REQUIRE_FALSE(o.success);
        CHECK(o.certificate->reason == ResidueFailure::NotSemisimple);
        CHECK(replay_certificate(m, *o.certificate) == o.certificate->offending);
      }
    }
  }
}

TEST_CASE("too little precision is rejected up front") {
  auto t = FieldTower::make(3, 1, false, 10);
  const PMatrix m = PMatrix::from_ints(t, {{1, 1, 0}, {1, 0, 0}, {0, 0, 2}});
  CHECK_THROWS_AS(unitary_diagonalise(m), Error);
}

TEST_CASE("naive maps: examples") {
  auto t = FieldTower::make(5, 1, false, 12);
  SUBCASE("diag(p, 1)") {
    const PMatrix a = PMatrix::from_ints(t, {{5, 0}, {0, 1}});
    const auto l1 = naive_maps(a, 1);
    CHECK(congruent(l1.p, PMatrix::from_ints(t, {{1, 0}, {0, 0}}), t->cap_v2()));
    CHECK(congruent(l1.r, PMatrix::from_ints(t, {{5, 0}, {0, 0}}), t->cap_v2()));
  }
  SUBCASE("no residue eigenvalue 0") {
    const PMatrix a = PMatrix::from_ints(t, {{1, 1}, {0, 2}});
    const auto l1 = naive_maps(a, 1);
    CHECK(norm_bound(l1.p).zero);
    CHECK(norm_bound(l1.r).zero);
  }
  SUBCASE("zero matrix keeps P_0 = I") {
    const auto seq = naive_sequence(PMatrix(t, 2, 2), 2);
    CHECK(seq[0].p == PMatrix::identity(t, 2));
    CHECK(norm_bound(seq[1].p).zero);
  }
  SUBCASE("nilpotent residue stops the sequence") {
    const PMatrix a = PMatrix::from_ints(t, {{0, 1}, {0, 0}});
    CHECK_THROWS_AS(naive_maps(a, 1), Error);
  }
}

TEST_CASE("naive maps: radius decay on planted matrices") {
  oracle::Rng rng(0x7a1);
  for (std::uint32_t p : {3u, 5u}) {
    const std::size_t n = 3;
    auto t = FieldTower::make(p, 1, false, 20);
    for (int rep = 0; rep < 5; ++rep) {
      const auto u0 = oracle::random_unimodular_mod_p(rng, p, n);
      std::vector<mpq_class> lam(n);
      // eigenvalues near 0 at various depths so several levels are non-trivial
      for (auto& x : lam) x = oracle::uniform(rng, 0, 3) * mpz_class(p) * oracle::uniform(rng, 1, 10);
      const PMatrix a = build::planted(t, u0, lam);
      const Norm na = norm_bound(a);
      if (na.zero) continue;
      const int levels = 10;
      const auto seq = naive_sequence(a, levels);
      const int k2 = na.v2 + tolerance_v2(*t, n);
      for (int i = 0; i <= levels; ++i) {
        const auto& lv = seq[i];
        CHECK(negligible(lv.r, std::min(k2, na.v2 + 2 * i)));
        CHECK(congruent(lv.p * lv.p, lv.p, k2));
        CHECK(congruent(lv.p * a, a * lv.p, k2));
      }
    }
  }
}

TEST_CASE("star criterion agrees with the diagonaliser") {
  auto t = FieldTower::make(5, 1, true, 14);
  auto star = [&](long long a, long long b, long long c) {
    return PMatrix::from_ints(t, {{a, b}, {5 * b, c}});
  };
  SUBCASE("|a - c| >= |b|") {
    const PMatrix m = star(1, 1, 0);
    const auto rep = involution_criteria(m, InvolutionKind::StarSymmetric);
    CHECK(rep.prediction == Prediction::Diagonalisable);
    REQUIRE(rep.eigenvectors_orthonormal.has_value());
    CHECK(*rep.eigenvectors_orthonormal);
    CHECK(unitary_diagonalise(m).success);
  }
  SUBCASE("|a - c| < |b|") {
    const PMatrix m = star(5, 1, 0);
    const auto rep = involution_criteria(m, InvolutionKind::StarSymmetric);
    CHECK(rep.prediction == Prediction::NotDiagonalisable);
    REQUIRE(rep.eigenvectors_orthonormal.has_value());
    CHECK_FALSE(*rep.eigenvectors_orthonormal);
    CHECK_FALSE(unitary_diagonalise(m).success);
  }
  SUBCASE("eigenpairs") {
    const PMatrix m = star(3, 2, 1);
    const auto rep = involution_criteria(m, InvolutionKind::StarSymmetric);
    REQUIRE(rep.eigenvectors.has_value());
    const PMatrix& f = *rep.eigenvectors;
    const PMatrix fp = f.column(0), fm = f.column(1);
    CHECK(negligible(m * fp - fp.scaled(*rep.lambda_plus), 20));
    CHECK(negligible(m * fm - fm.scaled(*rep.lambda_minus), 20));
  }
  CHECK_THROWS_AS(involution_criteria(PMatrix::from_ints(t, {{1, 1}, {1, 0}}), InvolutionKind::StarSymmetric), Error);
}

TEST_CASE("galois closed form disagrees with the diagonaliser at p = 3") {
  auto t2 = FieldTower::make(3, 2, false, 14);
  auto t4 = FieldTower::make(3, 4, false, 14);
  const PadicScalar i = PadicScalar::generator_pow(1, t2);
  const PadicScalar one = PadicScalar::one(t2);
  PMatrix m(t2, 2, 2);
  m(0, 0) = one;
  m(0, 1) = one + i;
  m(1, 0) = one - i;
  m(1, 1) = PadicScalar::zero(t2);
  const auto rep = involution_criteria(m, InvolutionKind::GaloisSymmetric);
  CHECK(rep.prediction == Prediction::Diagonalisable);
  // eigenvalues 2 and -1 share a residue and the reduction is not semisimple
  const auto o2 = unitary_diagonalise(m);
  CHECK_FALSE(o2.success);
  const auto o4 = unitary_diagonalise(embed(m, t4));
  CHECK_FALSE(o4.success);
  CHECK(o4.certificate->reason == ResidueFailure::NotSemisimple);
}

TEST_CASE("galois-symmetric matrix with split residue diagonalises") {
  auto t2 = FieldTower::make(7, 2, false, 14);
  const PadicScalar i = PadicScalar::generator_pow(1, t2);
  PMatrix m(t2, 2, 2);
  m(0, 0) = PadicScalar::from_int(2, t2);
  m(0, 1) = PadicScalar::one(t2) + i;
  m(1, 0) = PadicScalar::one(t2) - i;
  m(1, 1) = PadicScalar::zero(t2);
  const auto rep = involution_criteria(m, InvolutionKind::GaloisSymmetric);
  CHECK(rep.prediction == Prediction::Diagonalisable);
  // disc = 4 + 8 = 12 lies in F_7, hence is a square in F_49
  REQUIRE(rep.lambda_plus.has_value());
  CHECK(*rep.eigenvectors_orthonormal);
  const auto o = unitary_diagonalise(m);
  check_outcome_sound(m, o);
  CHECK(multiset_match(o.d, {*rep.lambda_plus, *rep.lambda_minus}, 2 * o.certified_precision));
}

TEST_CASE("embedding is a ring map") {
  auto t2 = FieldTower::make(3, 2, false, 10);
  auto t4 = FieldTower::make(3, 4, false, 10);
  oracle::Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    auto a = from_rational(oracle::uniform(rng, -50, 50), 1, t2) +
             from_rational(oracle::uniform(rng, 1, 50), oracle::uniform(rng, 1, 8), t2) * PadicScalar::generator_pow(1, t2);
    auto b = from_rational(oracle::uniform(rng, -50, 50), 1, t2) + PadicScalar::generator_pow(1, t2);
    CHECK(congruent(embed(a * b, t4), embed(a, t4) * embed(b, t4), 2 * 8));
    CHECK(congruent(embed(a + b, t4), embed(a, t4) + embed(b, t4), 2 * 8));
  }
  const PadicScalar i4 = embed(PadicScalar::generator_pow(1, t2), t4);
  CHECK(congruent(i4 * i4, PadicScalar::from_int(-1, t4), t4->cap_v2()));
}
