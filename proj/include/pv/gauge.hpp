#pragma once

#include <optional>
#include <vector>

#include "pv/chevalley.hpp"
#include "pv/diffpoly.hpp"
#include "pv/symgroup.hpp"

namespace pv {

struct PlaneMembership {
  bool in_plane = false;
  std::vector<Rational> s;  // coefficients on the simple positive root vectors
};

// A ∈ A0+(s) + b^- with nonzero constants s.
PlaneMembership is_in_plane(const ChevalleyRep& rep, const Matrix<DiffPoly>& A);

struct GaugeResult {
  RatMatrix torus;                 // constant rescaling applied first (identity when s = 1)
  GroupWord<DiffPoly> unipotent;   // factors exp(x X_k), left to right
  Matrix<DiffPoly> u;              // product of the unipotent factors
  std::vector<int> indices;        // complementary indices, ascending
  std::vector<DiffPoly> f;         // coefficients on X_j for j in indices
  Matrix<DiffPoly> A_G;
};

// Finds u in U^- (after a constant torus rescaling) with gauge(u t, A) = A_G(f);
// the result is re-verified before returning.
GaugeResult normalize_to_AG(const ChevalleyRep& rep, const Matrix<DiffPoly>& A);

// Exact rational solution of prod_i z_i^{w(i, a_j)} = 1/s_j, if one exists.
std::optional<std::vector<Rational>> rescaling_torus(const ChevalleyRep& rep, const std::vector<Rational>& s,
                                                     std::string* obstruction = nullptr);

}  // namespace pv
