#pragma once

#include <string>
#include <string_view>

#include "padspec/scalar.hpp"

namespace padspec {

/// Scalar literals, whitespace ignored:
///   "a/b"            rational
///   "...431212@5"    base-p digits, least significant last; a leading "..."
///                    (or U+2026) marks a truncated expansion, known modulo
///                    p^(number of digits)
///   "(a)+(b)*s"      s the unramified generator, s^j allowed
///   "(x)*rt"         rt the square root of p in a ramified tower
///   "p^k", "O(p^k)"  powers of p; O(...) adds an unknown term of that size
/// Sums, products, quotients and integer powers combine freely. Digits are
/// 0-9 then a-z. BadLiteral on syntax errors, DigitOutOfRange on a digit >= p.
PadicScalar parse_scalar_literal(std::string_view text, const TowerRef& tower);

/// Literal that parses back to the identical representation.
std::string format_scalar_literal(const PadicScalar& x);

}  // namespace padspec
