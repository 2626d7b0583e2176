#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "padspec/literal.hpp"
#include "padspec/pmatrix.hpp"

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

}  // namespace

TEST_CASE("rationals and integers") {
  auto t = FieldTower::make(5, 1, false, 10);
  CHECK(parse_scalar_literal("1/3", t) == from_rational(1, 3, t));
  CHECK(parse_scalar_literal(" -7 / 25 ", t) == from_rational(-7, 25, t));
  CHECK(parse_scalar_literal("0/5", t).is_zero());
  CHECK(parse_scalar_literal("0", t).is_zero());
  CHECK(parse_scalar_literal("123456789012345678901234567890", t) ==
        PadicScalar::from_mpz(mpz_class("123456789012345678901234567890"), t));
  CHECK(parse_scalar_literal("p^-2", t) == from_rational(1, 25, t));
}

TEST_CASE("digit strings") {
  auto t = FieldTower::make(5, 1, false, 10);
  const PadicScalar x = parse_scalar_literal("212@5", t);
  CHECK(x == PadicScalar::from_int(57, t));
  const PadicScalar i = *hensel_sqrt(PadicScalar::from_int(-1, t));
  CHECK(congruent(x, PadicScalar::from_int(7, t), 4));
  CHECK(congruent(x, i, 4));
  const PadicScalar trunc = parse_scalar_literal("...431212@5", t);
  CHECK(trunc.abs_v2() == 12);
  CHECK(congruent(trunc, i, 12));
  CHECK(parse_scalar_literal("\xE2\x80\xA6" "431212@5", t) == trunc);
  CHECK(code_of([&] { parse_scalar_literal("215@5", t); }) == Errc::DigitOutOfRange);
  CHECK(code_of([&] { parse_scalar_literal("212@7", t); }) == Errc::BadLiteral);
  auto t11 = FieldTower::make(11, 1, false, 6);
  CHECK(parse_scalar_literal("a1@11", t11) == PadicScalar::from_int(111, t11));
  CHECK(code_of([&] { parse_scalar_literal("b1@11", t11); }) == Errc::DigitOutOfRange);
}

TEST_CASE("generators") {
  auto t = FieldTower::make(3, 2, false, 8);
  const PadicScalar i = parse_scalar_literal("(1)+(2)*s", t);
  CHECK(i == PadicScalar::one(t) + PadicScalar::from_int(2, t) * PadicScalar::generator_pow(1, t));
  CHECK(parse_scalar_literal("s^2", t) == PadicScalar::from_int(-1, t));
  auto r = FieldTower::make(5, 1, true, 8);
  CHECK(parse_scalar_literal("(3)*rt", r) == PadicScalar::from_int(3, r) * PadicScalar::root_p(r));
  CHECK(parse_scalar_literal("rt*rt", r) == PadicScalar::from_int(5, r));
  CHECK(code_of([&] { parse_scalar_literal("rt", t); }) == Errc::BadLiteral);
  CHECK(code_of([&] { parse_scalar_literal("s", r); }) == Errc::BadLiteral);
}

TEST_CASE("malformed literals") {
  auto t = FieldTower::make(5, 1, false, 8);
  for (const char* s : {"", "1/", "(1", "1)", "x", "1/0", "2@", "O(0)", "...12", "1^"})
    CHECK_MESSAGE(code_of([&] { parse_scalar_literal(s, t); }) == Errc::BadLiteral, std::string(s));
}

TEST_CASE("format then parse is the identity") {
  oracle::Rng rng(0x11);
  const std::vector<TowerRef> towers = {FieldTower::make(5, 1, false, 8), FieldTower::make(3, 2, false, 8),
                                        FieldTower::make(7, 1, true, 8), FieldTower::make(3, 2, true, 6),
                                        FieldTower::make(2, 2, false, 6)};
  for (const auto& t : towers) {
    for (int rep = 0; rep < 200; ++rep) {
      auto gen = [&] {
        PadicScalar x = PadicScalar::zero(t);
        for (int j = 0; j < t->degree(); ++j) {
          auto [num, den] = oracle::random_rational(rng, t->p(), 3);
          x = x + from_rational(num, den, t) * (j == 0 ? PadicScalar::one(t) : PadicScalar::generator_pow(j, t));
        }
        if (t->ramified() && oracle::uniform(rng, 0, 1)) x = x * PadicScalar::root_p(t);
        return x;
      };
      // cancellation produces reduced precision and imprecise zeros
      const PadicScalar a = gen();
      const PadicScalar b = oracle::uniform(rng, 0, 2) == 0 ? a + PadicScalar::from_int(t->p() * t->p(), t) * gen() : gen();
      for (const PadicScalar& x : {a, b, a - b, a * b}) {
        const std::string s = format_scalar_literal(x);
        CHECK_MESSAGE(parse_scalar_literal(s, t) == x, (s + " vs " + x.debug_string()));
      }
    }
  }
}
