#pragma once

#include <random>
#include <string>
#include <vector>

#include "jouanolou/exactpoly.hpp"

namespace jouanolou::testing {

inline long draw(std::mt19937& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// Random polynomial with up to `terms` terms of degree <= max_degree.
template <class Coeff>
Polynomial<Coeff> random_poly(std::mt19937& rng, const TablePtr& table, int max_degree,
                              int terms, int truncation, bool zero_constant = false) {
  Polynomial<Coeff> p(table, truncation);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(table->size(), 0);
    const long deg = draw(rng, zero_constant ? 1 : 0, max_degree);
    for (long k = 0; k < deg; ++k) ++e[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(table->size()) - 1))];
    p.add_term(e, Coeff(draw(rng, -5, 5)));
  }
  return p;
}

}  // namespace jouanolou::testing
