#pragma once

// Conversions from oracle-side exact data into library objects.

#include "oracles.hpp"
#include "padspec/pmatrix.hpp"

namespace build {

inline padspec::PMatrix from_rational(const padspec::TowerRef& t, const oracle::QMatrix& q) {
  padspec::PMatrix m(t, q.size(), q.empty() ? 0 : q[0].size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q[i].size(); ++j)
      m(i, j) = padspec::from_rational(q[i][j].get_num(), q[i][j].get_den(), t);
  return m;
}

/// U0 diag(d) U0^-1 computed exactly over Q, then embedded.
inline padspec::PMatrix planted(const padspec::TowerRef& t, const oracle::IntMatrix& u0, const std::vector<mpq_class>& d) {
  const auto uq = oracle::to_rational(u0);
  return from_rational(t, oracle::rational_product(oracle::rational_product(uq, oracle::rational_diagonal(d)),
                                                   oracle::rational_inverse(uq)));
}

}  // namespace build
