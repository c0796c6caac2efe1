#pragma once

#include <map>
#include <string>
#include <vector>

#include "pv/chevalley.hpp"
#include "pv/diffpoly.hpp"
#include "pv/liouville.hpp"
#include "pv/symgroup.hpp"

namespace pv {

// All per-root vectors below are indexed 0..m-1 for roots b_1..b_m.

struct Stage1Coeffs {
  std::vector<DiffPoly> v;  // v_i, zero for i <= l
};

struct Stage2Coeffs {
  std::vector<DiffPoly> g;    // l entries
  std::vector<DiffPoly> ell;  // m entries
  std::vector<DiffPoly> p;    // m entries
};

struct LiouvilleData {
  std::vector<Rational> c;     // coefficient of X_{-a_i}, simple index i
  std::vector<DiffPoly> gbar;  // l entries
  Matrix<DiffPoly> A_L;
  std::vector<LiouvExpr> z;  // l entries
  std::vector<LiouvExpr> y;  // m entries
};

struct RawCoeffs {
  std::vector<DiffPoly> h;  // h_i(eta_m)
  std::vector<DiffPoly> q;  // h_i - eta_i' - ell_i
};

struct Elimination {
  std::map<int, DiffPoly> f;  // eta_k = f_k(eta_1..eta_l) for k > l
  std::map<int, DiffPoly> ell_bar, p_bar;
  std::vector<int> solve_order;
};

struct InvariantSet {
  std::vector<int> indices;  // complementary indices j_1 < ... < j_l
  std::vector<DiffPoly> h, lhat, phat;
};

// The product u_1(x_1)...u_m(x_m) over the negative roots in order.
GroupWord<DiffPoly> unipotent_word(const ChevalleyRep& rep, const std::vector<DiffPoly>& x);
// Generic arguments eta_1..eta_m.
std::vector<DiffPoly> generic_eta(int m);

Stage1Coeffs logderiv_unipotent(const ChevalleyRep& rep);
Stage2Coeffs adjoint_on_A0(const ChevalleyRep& rep);
LiouvilleData build_A_L(const ChevalleyRep& rep, const Stage2Coeffs& s2);
void liouville_solutions(const ChevalleyRep& rep, const Stage1Coeffs& s1, LiouvilleData& data);
// Checks ld(t(z)u(y)) = A_L; throws VerificationFailure.
void verify_liouville(const ChevalleyRep& rep, const LiouvilleData& data);
RawCoeffs logderiv_Y(const ChevalleyRep& rep, const Stage2Coeffs& s2, const LiouvilleData& data);
Elimination eliminate_noncomplementary(const ChevalleyRep& rep, const Stage2Coeffs& s2,
                                       const RawCoeffs& raw);
InvariantSet invariants(const ChevalleyRep& rep, const RawCoeffs& raw, const Elimination& elim);
// A0+ + sum h_k X_{j_k} over the given indices.
Matrix<DiffPoly> assemble_A_G(const ChevalleyRep& rep, const std::vector<int>& indices,
                              const std::vector<DiffPoly>& h);
Matrix<DiffPoly> assemble_A_G(const ChevalleyRep& rep, const InvariantSet& inv);
// d(Y) - A_G Y = 0 over Liouvillian expressions; throws IdentityFailure.
void verify_end_to_end(const ChevalleyRep& rep, const LiouvilleData& data, const Elimination& elim,
                       const InvariantSet& inv);

struct Specialization {
  std::vector<DiffPoly> h;
  Matrix<DiffPoly> A_G;
};
Specialization specialize(const ChevalleyRep& rep, const InvariantSet& inv,
                          const std::map<int, DiffPoly>& sigma);

struct PipelineOptions {
  bool verify_liouville = true;
  bool end_to_end = false;
};

struct Pipeline {
  ChevalleyRep rep;
  Stage1Coeffs stage1;
  Stage2Coeffs stage2;
  LiouvilleData liouville;
  RawCoeffs raw;
  Elimination elim;
  InvariantSet inv;
  Matrix<DiffPoly> A_G;
  std::vector<std::string> checks;  // names of the structural checks that passed
};

Pipeline run_pipeline(const ChevalleyRep& rep, const PipelineOptions& opts = {});

// Names of the structural checks performed by each stage, in order.
const std::vector<std::string>& structural_check_names();

}  // namespace pv
