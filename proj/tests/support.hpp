#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pv/chevalley.hpp"
#include "pv/diffpoly.hpp"
#include "pv/linalg.hpp"
#include "pv/matrix.hpp"
#include "pv/symgroup.hpp"

namespace pvtest {

using pv::DiffPoly;
using pv::JetVar;
using pv::Monomial;
using pv::Rational;
using pv::RatMatrix;

inline Rational rand_rational(std::mt19937& g, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  return pv::make_rational(n(g), d(g));
}

inline Rational rand_nonzero(std::mt19937& g, int num = 5, int den = 4) {
  for (;;) {
    Rational r = rand_rational(g, num, den);
    if (!pv::is_zero(r)) return r;
  }
}

// Random sparse differential polynomial in eta_1..eta_vars.
inline DiffPoly rand_poly(std::mt19937& g, int vars = 3, int max_terms = 4, int max_order = 2, int max_deg = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms), var(1, vars), ord(0, max_order), deg(0, max_deg),
      ex(1, 2);
  DiffPoly p;
  const int t = nterms(g);
  for (int k = 0; k < t; ++k) {
    std::vector<std::pair<JetVar, int>> f;
    const int d = deg(g);
    for (int j = 0; j < d; ++j) f.push_back({JetVar{var(g), ord(g)}, ex(g)});
    std::sort(f.begin(), f.end());
    std::vector<std::pair<JetVar, int>> merged;
    for (const auto& x : f) {
      if (!merged.empty() && merged.back().first == x.first)
        merged.back().second += x.second;
      else
        merged.push_back(x);
    }
    p += DiffPoly::term(Monomial(merged), rand_nonzero(g));
  }
  return p;
}

// Random lower unitriangular, upper unitriangular and diagonal factors,
// multiplied with a permutation with signs so that det = 1.
inline RatMatrix rand_sl(std::mt19937& g, std::size_t n) {
  auto lower = RatMatrix::identity(n), upper = RatMatrix::identity(n), diag = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = rand_rational(g);
      upper(j, i) = rand_rational(g);
    }
  Rational prod = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    diag(i, i) = rand_nonzero(g);
    prod *= diag(i, i);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), g);
  RatMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) p(perm[j], j) = 1;
  Rational sign = pv::determinant(p);
  diag(n - 1, n - 1) = 1 / (prod * sign);
  return lower * p * diag * upper;
}

// Random product of root-group, torus and Weyl factors over Liouvillian entries.
inline pv::GroupWord<pv::LiouvExpr> rand_group_word(std::mt19937& g, const pv::ChevalleyRep& rep, int len) {
  std::uniform_int_distribution<int> kind(0, 3), root(0, static_cast<int>(rep.rs().roots().size()) - 1),
      simple(1, rep.rank());
  pv::GroupWord<pv::LiouvExpr> w;
  for (int k = 0; k < len; ++k) {
    switch (kind(g)) {
      case 0:
      case 1:
        w.push_back(pv::unipotent_factor(rep, rep.rs().roots()[root(g)], pv::LiouvExpr(rand_poly(g, 2, 2, 1, 2))));
        break;
      case 2: w.push_back(pv::torus_factor(rep, simple(g), rand_poly(g, 2, 2, 1, 1))); break;
      default: w.push_back(pv::Factor<pv::LiouvExpr>::constant_matrix(rep.weyl_representative({simple(g)})));
    }
  }
  return w;
}

}  // namespace pvtest
