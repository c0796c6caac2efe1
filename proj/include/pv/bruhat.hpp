#pragma once

#include <vector>

#include "pv/chevalley.hpp"
#include "pv/matrix.hpp"

namespace pv {

// Which Borel the unipotent factors live in: lower (negative roots) or upper.
enum class Convention { Negative, Positive };

// M = uprime * n(w) * t * u with uprime in U ∩ n(w) U^opp n(w)^{-1}.
struct BruhatForm {
  Convention convention = Convention::Negative;
  RatMatrix uprime;
  std::vector<int> perm;  // column j of n(w) is nonzero in row perm[j] (1-based)
  WeylWord word;          // reduced word for perm
  RatMatrix nw;           // the representative n(w)
  RatMatrix t;
  RatMatrix u;
  // coefficient tuples: free entries of uprime, diagonal of t, off-diagonal entries of u,
  // each read row by row
  std::vector<Rational> x, z, y;
};

BruhatForm bruhat_decompose(const RatMatrix& M, Convention c = Convention::Negative);
RatMatrix recompose(const BruhatForm& b);

// Bruhat form of Y0 * g; throws CellDegeneration if the product leaves the cell of w̄.
BruhatForm act_on_normal_form(const RatMatrix& Y0, const RatMatrix& g, Convention c = Convention::Negative);

// Representative n(w) in the SL_n Chevalley representation for a permutation.
RatMatrix sl_weyl_representative(const std::vector<int>& perm, WeylWord* word = nullptr);
std::vector<int> longest_permutation(std::size_t n);

// The SL_2 relation n̄ ū_{-a}(x) = ū_{-a}(-1/x) t̄(x) ū_a(1/x); both sides returned.
struct SL2Relation {
  RatMatrix lhs, rhs;
};
SL2Relation sl2_weyl_relation(const Rational& x);

}  // namespace pv
