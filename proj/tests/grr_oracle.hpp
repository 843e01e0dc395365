#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jouanolou/jouanolou.hpp"

namespace jouanolou::testing {

// Independent rational route to C_q(b (x) lambda_{-1}(Q^dual)) / (y_1...y_d):
// character as sum_i e^{x_i} * prod_j (1 - e^{-y_j}), Chern classes by
// Newton's identities, then division by each y_j.
inline QPoly exp_of(const QPoly& v, int D) {
  QPoly sum = QPoly::constant(v.table(), 1, D), term = sum;
  for (int k = 1; k <= D; ++k) {
    term = term * v;
    term *= mpq_class(1, k);
    sum += term;
  }
  return sum;
}

inline QPoly oracle_quotient(int e, int d, int q) {
  std::vector<std::string> names;
  for (int i = 1; i <= e; ++i) names.push_back("x" + std::to_string(i));
  for (int j = 1; j <= d; ++j) names.push_back("y" + std::to_string(j));
  auto t = make_table(names);
  QPoly ch(t, q);
  for (int i = 0; i < e; ++i) ch += exp_of(QPoly::variable(t, static_cast<std::size_t>(i), q), q);
  for (int j = 0; j < d; ++j) {
    const QPoly y = QPoly::variable(t, static_cast<std::size_t>(e + j), q);
    ch = ch * (QPoly::constant(t, 1, q) - exp_of(-y, q));
  }
  // Power sums p_k = k! ch_k.
  std::vector<QPoly> p(static_cast<std::size_t>(q) + 1, QPoly(t, q));
  mpq_class fact = 1;
  for (int k = 1; k <= q; ++k) {
    fact *= k;
    p[static_cast<std::size_t>(k)] = homogeneous_part(ch, k) * fact;
  }
  std::vector<QPoly> c(static_cast<std::size_t>(q) + 1, QPoly(t, q));
  c[0] = QPoly::constant(t, 1, q);
  for (int k = 1; k <= q; ++k) {
    QPoly acc(t, q);
    for (int i = 1; i <= k; ++i) {
      QPoly term = c[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
      if (i % 2 == 0) term *= mpq_class(-1);
      acc += term;
    }
    acc *= mpq_class(1, k);
    c[static_cast<std::size_t>(k)] = acc;
  }
  QPoly out = c[static_cast<std::size_t>(q)];
  for (int j = 0; j < d; ++j) out = exact_divide(out, static_cast<std::size_t>(e + j));
  return out;
}

// e_k of the given variables.
inline ZPoly elementary(const TablePtr& t, const std::vector<std::size_t>& vars, int k, int D) {
  ZPoly acc = ZPoly::constant(t, 1, D);
  std::vector<ZPoly> e(static_cast<std::size_t>(k) + 1, ZPoly(t, D));
  e[0] = acc;
  for (auto v : vars)
    for (int j = k; j >= 1; --j)
      e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * ZPoly::variable(t, v, D);
  return e[static_cast<std::size_t>(k)];
}

// P at rank e, with c_i and c'_j replaced by elementary functions of x and y.
inline QPoly p_in_roots(const JouanolouPolynomial& P, int e) {
  std::vector<std::string> names;
  for (int i = 1; i <= e; ++i) names.push_back("x" + std::to_string(i));
  for (int j = 1; j <= P.d; ++j) names.push_back("y" + std::to_string(j));
  auto t = make_table(names);
  std::vector<std::size_t> xs, ys;
  for (int i = 0; i < e; ++i) xs.push_back(static_cast<std::size_t>(i));
  for (int j = 0; j < P.d; ++j) ys.push_back(static_cast<std::size_t>(e + j));
  const int m = P.arity();
  const int D = std::max(P.q, 1);
  std::vector<ZPoly> images;
  for (int i = 1; i <= m; ++i) images.push_back(elementary(t, xs, i, D));
  for (int j = 1; j <= m; ++j) images.push_back(elementary(t, ys, j, D));
  const ZPoly at_rank = evaluate_at_rank(P, e);
  if (images.empty()) return to_rational(ZPoly::constant(t, at_rank.constant_term(), D));
  return to_rational(substitute<mpz_class>(at_rank, images, D));
}

}  // namespace jouanolou::testing
