#include <doctest.h>

#include "oracles.hpp"
#include "padspec/residue.hpp"

using namespace padspec;

namespace {

ResidueMatrix from_ints(const TowerRef& t, std::vector<std::vector<long long>> rows) {
  ResidueMatrix m(t, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = t->fq_from_int(rows[i][j]);
  return m;
}

ResiduePoly poly(const TowerRef& t, std::vector<long long> c) {
  std::vector<Fq> v;
  for (auto x : c) v.push_back(t->fq_from_int(x));
  return ResiduePoly(t, v);
}

ResidueMatrix random_matrix(const TowerRef& t, oracle::Rng& rng, std::size_t n) {
  ResidueMatrix m(t, n, n);
  const auto q = t->enumerable_order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = t->fq_from_index(oracle::uniform(rng, 0, q - 1));
  return m;
}

// det by cofactor expansion, for the characteristic polynomial oracle
Fq det(const ResidueMatrix& m) {
  const auto& t = *m.tower();
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Fq acc{};
  for (std::size_t j = 0; j < n; ++j) {
    ResidueMatrix minor(m.tower(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Fq term = t.fq_mul(m(0, j), det(minor));
    acc = j % 2 ? t.fq_sub(acc, term) : t.fq_add(acc, term);
  }
  return acc;
}

}  // namespace

TEST_CASE("roots_in_field") {
  auto t = FieldTower::make(5);
  auto r = roots_in_field(poly(t, {1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0] == std::pair{t->fq_from_int(2), 1});
  CHECK(r[1] == std::pair{t->fq_from_int(3), 1});
  auto r2 = roots_in_field(poly(t, {0, 0, 1}));
  CHECK(r2 == std::vector{std::pair{t->fq_zero(), 2}});
  CHECK_THROWS_WITH_AS(roots_in_field(ResiduePoly(t, {})), doctest::Contains("ZeroPolynomial"), Error);

  oracle::Rng rng(11);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    auto tp = FieldTower::make(p);
    for (int k = 0; k < 50; ++k) {
      std::vector<long long> roots;
      ResiduePoly f = ResiduePoly::constant(tp, tp->fq_one());
      for (int i = 0; i < 4; ++i) {
        long long x = oracle::uniform(rng, 0, p - 1);
        roots.push_back(x);
        f = f * ResiduePoly::linear(tp, tp->fq_from_int(x));
      }
      std::vector<long long> coeffs;
      for (auto& c : f.coeffs()) coeffs.push_back(c.c[0]);
      auto scan = oracle::roots_mod_p(coeffs, p);
      auto got = roots_in_field(f);
      REQUIRE(got.size() == scan.size());
      int total = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].first.c[0] == scan[i]);
        CHECK(got[i].second == std::count(roots.begin(), roots.end(), scan[i]));
        total += got[i].second;
      }
      CHECK(total == 4);
    }
  }
}

TEST_CASE("is_squarefree") {
  auto t = FieldTower::make(5);
  CHECK(is_squarefree(poly(t, {2, -3, 1})));
  CHECK_FALSE(is_squarefree(poly(t, {0, 0, 1})));
  oracle::Rng rng(4);
  auto t2 = FieldTower::make(3, 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<Fq> roots;
    ResiduePoly f = ResiduePoly::constant(t2, t2->fq_one());
    for (int i = 0; i < 3; ++i) {
      roots.push_back(t2->fq_from_index(oracle::uniform(rng, 0, 8)));
      f = f * ResiduePoly::linear(t2, roots.back());
    }
    std::sort(roots.begin(), roots.end());
    const bool repeated = std::adjacent_find(roots.begin(), roots.end()) != roots.end();
    CHECK(is_squarefree(f) == !repeated);
  }
}

TEST_CASE("minimal and characteristic polynomials") {
  auto t = FieldTower::make(5);
  CHECK(minimal_polynomial(ResidueMatrix::identity(t, 3)) == poly(t, {-1, 1}));
  CHECK(minimal_polynomial(from_ints(t, {{0, 1}, {0, 0}})) == poly(t, {0, 0, 1}));
  oracle::Rng rng(9);
  for (auto [p, f] : {std::pair{3u, 1}, std::pair{2u, 2}, std::pair{5u, 1}, std::pair{7u, 2}}) {
    auto tw = FieldTower::make(p, f);
    for (int k = 0; k < 40; ++k) {
      const std::size_t n = 1 + k % 5;
      auto m = random_matrix(tw, rng, n);
      auto mp = minimal_polynomial(m);
      auto cp = characteristic_polynomial(m);
      CHECK(evaluate(mp, m).is_zero());
      CHECK(evaluate(cp, m).is_zero());
      CHECK(cp.degree() == static_cast<int>(n));
      CHECK(cp.divmod(mp).second.is_zero());
      // char poly at a few points equals det(x I - M)
      for (int s = 0; s < 3; ++s) {
        Fq x = tw->fq_from_index(oracle::uniform(rng, 0, tw->enumerable_order() - 1));
        CHECK(cp(x) == det(ResidueMatrix::identity(tw, n).scaled(x) - m));
      }
    }
  }
}

TEST_CASE("diagonalise_residue") {
  auto t = FieldTower::make(5);
  auto sx = diagonalise_residue(from_ints(t, {{0, 1}, {1, 0}}));
  REQUIRE(sx.diagonalisable);
  CHECK(sx.eigenvalues == std::vector{std::pair{t->fq_from_int(1), 1}, std::pair{t->fq_from_int(4), 1}});
  auto nil = diagonalise_residue(from_ints(t, {{0, 1}, {0, 0}}));
  CHECK_FALSE(nil.diagonalisable);
  CHECK(nil.reason == ResidueFailure::NotSemisimple);
  CHECK(nil.witness == poly(t, {0, 0, 1}));
  // x^2 - 2 is irreducible mod 5 (2 is a non-residue)
  auto comp = diagonalise_residue(from_ints(t, {{0, 2}, {1, 0}}));
  CHECK_FALSE(comp.diagonalisable);
  CHECK(comp.reason == ResidueFailure::NotSplit);
  CHECK(oracle::roots_mod_p({-2, 0, 1}, 5).empty());

  oracle::Rng rng(17);
  for (auto [p, f] : {std::pair{3u, 1}, std::pair{5u, 1}, std::pair{3u, 2}}) {
    auto tw = FieldTower::make(p, f);
    for (int k = 0; k < 60; ++k) {
      const std::size_t n = 2 + k % 4;
      auto m = random_matrix(tw, rng, n);
      auto out = diagonalise_residue(m);
      if (!out.diagonalisable) continue;
      auto inv = inverse(out.basis);
      REQUIRE(inv);
      ResidueMatrix d = *inv * m * out.basis;
      CHECK(d.is_diagonal());
      std::vector<Fq> diag, expected;
      for (std::size_t i = 0; i < n; ++i) diag.push_back(d(i, i));
      for (auto [lam, mult] : roots_in_field(characteristic_polynomial(m)))
        for (int j = 0; j < mult; ++j) expected.push_back(lam);
      std::sort(diag.begin(), diag.end());
      CHECK(diag == expected);
      // Lagrange idempotents at M form a complete orthogonal family
      std::vector<Fq> nodes;
      for (auto& e : out.eigenvalues) nodes.push_back(e.first);
      auto es = lagrange_idempotents(tw, nodes);
      ResidueMatrix sum(tw, n, n);
      for (std::size_t i = 0; i < es.size(); ++i) {
        auto ei = evaluate(es[i], m);
        CHECK(ei * ei == ei);
        sum = sum + ei;
        for (std::size_t j = 0; j < i; ++j) CHECK((ei * evaluate(es[j], m)).is_zero());
      }
      CHECK(sum == ResidueMatrix::identity(tw, n));
    }
  }
}

TEST_CASE("lagrange_idempotents") {
  auto t = FieldTower::make(5);
  auto one = lagrange_idempotents(t, {t->fq_from_int(3)});
  CHECK(one[0] == poly(t, {1}));
  auto two = lagrange_idempotents(t, {t->fq_from_int(0), t->fq_from_int(1)});
  CHECK(two[0] == poly(t, {1, -1}));
  CHECK(two[1] == poly(t, {0, 1}));
  CHECK_THROWS_WITH_AS(lagrange_idempotents(t, {t->fq_one(), t->fq_one()}), doctest::Contains("DuplicateEigenvalue"), Error);
  auto t7 = FieldTower::make(7, 2);
  std::vector<Fq> nodes{t7->fq_from_index(3), t7->fq_from_index(10), t7->fq_from_index(0), t7->fq_from_index(48)};
  auto es = lagrange_idempotents(t7, nodes);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(es[i](nodes[j]) == (i == j ? t7->fq_one() : t7->fq_zero()));
}

TEST_CASE("inverse and kernel") {
  auto t = FieldTower::make(7);
  auto m = from_ints(t, {{1, 2, 3}, {0, 1, 4}, {5, 6, 0}});
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == ResidueMatrix::identity(t, 3));
  auto sing = from_ints(t, {{1, 2}, {2, 4}});
  CHECK_FALSE(inverse(sing));
  auto k = kernel_basis(sing);
  CHECK(k.cols() == 1);
  CHECK((sing * k).is_zero());
}
