#include "pv/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "pv/linalg.hpp"

namespace pv {

namespace {

const Root& beta(const ChevalleyRep& rep, int i) { return rep.rs().beta(i); }
int height(const ChevalleyRep& rep, int i) { return rep.rs().height_of(i); }

std::vector<int> indices_at_height(const ChevalleyRep& rep, int q) {
  std::vector<int> out;
  for (int i = 1; i <= rep.m(); ++i)
    if (height(rep, i) == q) out.push_back(i);
  return out;
}

// Largest index whose height is >= q (heights are non-increasing).
int last_index_with_height_at_least(const ChevalleyRep& rep, int q) {
  int s = 0;
  for (int i = 1; i <= rep.m(); ++i)
    if (height(rep, i) >= q) s = i;
  return s;
}

[[noreturn]] void violation(const std::string& check, const std::string& detail) {
  throw Error(ErrorKind::StructureViolation, check + ": " + detail);
}

[[noreturn]] void rank_failure(const std::string& check, const std::string& detail) {
  throw Error(ErrorKind::RankFailure, check + ": " + detail);
}

std::string idx(int i) { return std::to_string(i); }

// Coefficient matrix of linear polynomials in the given jets.
RatMatrix coefficient_matrix(const std::vector<DiffPoly>& polys, const std::vector<JetVar>& jets) {
  RatMatrix m(polys.size(), jets.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (std::size_t c = 0; c < jets.size(); ++c) m(r, c) = polys[r].linear_coefficient(jets[c]);
  return m;
}

bool every_jet_has_order(const DiffPoly& p, int order) {
  for (const auto& j : p.jets())
    if (j.order != order) return false;
  return true;
}

bool variables_within(const DiffPoly& p, int lo, int hi) {
  for (int v : p.variables())
    if (v < lo || v > hi) return false;
  return true;
}

RatMatrix rat_inverse(const RatMatrix& m) {
  auto inv = inverse(m);
  if (!inv) throw Error(ErrorKind::NotClosedFormInvertible, "singular constant matrix");
  return *inv;
}

Matrix<LiouvExpr> to_liouv(const Matrix<DiffPoly>& m) {
  return m.map([](const DiffPoly& p) { return LiouvExpr(p); });
}

// Arguments of u(eta_m) after elimination: eta_i for i <= l, f_i above.
std::vector<DiffPoly> reduced_arguments(const ChevalleyRep& rep, const Elimination& elim) {
  std::vector<DiffPoly> x = generic_eta(rep.m());
  for (const auto& [k, f] : elim.f) x[k - 1] = f;
  return x;
}

}  // namespace

const std::vector<std::string>& structural_check_names() {
  static const std::vector<std::string> names = {
      "unipotent-logderiv-shape",
      "unipotent-logderiv-terms",
      "adjoint-positive-part",
      "adjoint-torus-independent",
      "adjoint-linear-band",
      "adjoint-nonlinear-terms",
      "adjoint-band-rank",
      "weyl-conjugation-A0",
      "weyl-conjugation-torus",
      "liouville-logderiv",
      "coefficients-shape",
      "coefficients-remainder",
      "elimination-linear-order",
      "elimination-band-rank",
      "elimination-nonlinear-terms",
      "invariants-variables",
      "invariants-linear-order",
      "invariants-leading-rank",
      "invariants-nonlinear-terms",
      "invariants-prolongation-rank",
  };
  return names;
}

std::vector<DiffPoly> generic_eta(int m) {
  std::vector<DiffPoly> eta;
  for (int i = 1; i <= m; ++i) eta.push_back(DiffPoly::var(i));
  return eta;
}

GroupWord<DiffPoly> unipotent_word(const ChevalleyRep& rep, const std::vector<DiffPoly>& x) {
  GroupWord<DiffPoly> w;
  for (int i = 1; i <= rep.m(); ++i) w.push_back(unipotent_factor(rep, beta(rep, i), x.at(i - 1)));
  return w;
}

Stage1Coeffs logderiv_unipotent(const ChevalleyRep& rep) {
  const int m = rep.m();
  auto word = unipotent_word(rep, generic_eta(m));
  auto c = rep.decompose(log_derivative(word, rep.dim()));
  for (const auto& h : c.h)
    if (!h.is_zero()) violation("unipotent-logderiv-shape", "nonzero torus component");
  for (const auto& p : c.pos)
    if (!p.is_zero()) violation("unipotent-logderiv-shape", "nonzero positive component");
  Stage1Coeffs s;
  for (int i = 1; i <= m; ++i) {
    DiffPoly v = c.neg[i - 1] - DiffPoly::var(i, 1);
    if (i <= rep.rank() && !v.is_zero()) violation("unipotent-logderiv-terms", "v_" + idx(i) + " nonzero");
    int s2 = last_index_with_height_at_least(rep, height(rep, i) + 1);
    if (!variables_within(v, 1, s2))
      violation("unipotent-logderiv-terms", "v_" + idx(i) + " involves a variable of too low height");
    for (const auto& [mono, coef] : v.terms())
      if (mono.order() != 1 || mono.degree() < 2)
        violation("unipotent-logderiv-terms", "v_" + idx(i) + " has a term not of order one and degree >= 2");
    s.v.push_back(v);
  }
  return s;
}

Stage2Coeffs adjoint_on_A0(const ChevalleyRep& rep) {
  const int l = rep.rank(), m = rep.m();
  auto word = unipotent_word(rep, generic_eta(m));
  auto c = rep.decompose(adjoint(word, lift<DiffPoly>(rep.A0_plus())));
  for (int i = 1; i <= m; ++i) {
    DiffPoly expect = beta(rep, i).height() == -1 ? DiffPoly(1) : DiffPoly();
    if (!(c.pos[i - 1] == expect)) violation("adjoint-positive-part", "coefficient of X_-b" + idx(i));
  }
  Stage2Coeffs s;
  s.g = c.h;
  std::vector<JetVar> first_vars;
  for (int i = 1; i <= l; ++i) first_vars.push_back({i, 0});
  for (int i = 0; i < l; ++i)
    if (s.g[i].is_zero() || !(s.g[i].linear_part() == s.g[i]) || !variables_within(s.g[i], 1, l) ||
        s.g[i].order() != 0)
      violation("adjoint-torus-independent", "g_" + idx(i + 1) + " is not linear in eta_1..eta_l");
  if (rank(coefficient_matrix(s.g, first_vars)) != static_cast<std::size_t>(l))
    rank_failure("adjoint-torus-independent", "g_1..g_l are linearly dependent");

  for (int i = 1; i <= m; ++i) {
    const DiffPoly& n = c.neg[i - 1];
    DiffPoly ell = n.linear_part(), p = n.nonlinear_part();
    if (!n.homogeneous_component(0).is_zero()) violation("adjoint-linear-band", "constant term");
    for (const auto& j : ell.jets())
      if (j.order != 0 || height(rep, j.var) != height(rep, i) - 1)
        violation("adjoint-linear-band", "ell_" + idx(i) + " leaves the next height band");
    int i2 = last_index_with_height_at_least(rep, height(rep, i));
    if (p.order() != 0 || !variables_within(p, 1, i2) || (!p.is_zero() && p.min_degree() < 2))
      violation("adjoint-nonlinear-terms", "p_" + idx(i));
    s.ell.push_back(ell);
    s.p.push_back(p);
  }

  // per height: the non-complementary ell's form a square system in the next band
  const int min_height = height(rep, m);
  for (int q = -1; q > min_height; --q) {
    std::vector<DiffPoly> rows;
    for (int i : indices_at_height(rep, q))
      if (!rep.rs().is_complementary(i)) rows.push_back(s.ell[i - 1]);
    std::vector<JetVar> cols;
    for (int k : indices_at_height(rep, q - 1)) cols.push_back({k, 0});
    if (rows.size() != cols.size())
      rank_failure("adjoint-band-rank", "system at height " + std::to_string(q) + " is not square");
    if (rank(coefficient_matrix(rows, cols)) != cols.size())
      rank_failure("adjoint-band-rank", "system at height " + std::to_string(q) + " is singular");
  }
  return s;
}

LiouvilleData build_A_L(const ChevalleyRep& rep, const Stage2Coeffs& s2) {
  const int l = rep.rank();
  const RatMatrix nb = rep.n_bar();
  const RatMatrix nb_inv = rat_inverse(nb);
  LiouvilleData d;
  for (int i = 1; i <= l; ++i) {
    auto c = rep.decompose(RatMatrix(nb * rep.Xsimple_neg(i) * nb_inv));
    std::optional<Rational> s;
    bool clean = true;
    for (const auto& h : c.h) clean = clean && is_zero(h);
    for (const auto& x : c.neg) clean = clean && is_zero(x);
    for (int k = 1; k <= rep.m(); ++k) {
      const Rational& x = c.pos[k - 1];
      if (is_zero(x)) continue;
      if (s || beta(rep, k).height() != -1) clean = false;
      s = x;
    }
    if (!clean || !s)
      throw Error(ErrorKind::NoRationalSolution, "n(w) does not map X_-a" + idx(i) + " to a simple root vector");
    d.c.push_back(1 / *s);
  }
  if (!(nb * rep.A0_minus(d.c) * nb_inv == rep.A0_plus()))
    violation("weyl-conjugation-A0", "Ad(n(w))(A0-(c)) != A0+");

  RatMatrix M(l, l);
  for (int i = 1; i <= l; ++i) {
    auto c = rep.decompose(RatMatrix(nb * rep.H(i) * nb_inv));
    for (int j = 1; j <= l; ++j) M(j - 1, i - 1) = c.h[j - 1];
  }
  auto Minv = inverse(M);
  if (!Minv) throw Error(ErrorKind::NoRationalSolution, "Ad(n(w)) is singular on the torus");
  std::vector<DiffPoly> minus_g;
  for (const auto& g : s2.g) minus_g.push_back(-g);
  d.gbar = solve_with_inverse(*Minv, minus_g);

  const std::size_t n = rep.dim();
  Matrix<DiffPoly> torus_part(n, n), minus_g_part(n, n);
  for (int i = 1; i <= l; ++i) {
    torus_part += lift<DiffPoly>(rep.H(i)).scaled(d.gbar[i - 1]);
    minus_g_part += lift<DiffPoly>(rep.H(i)).scaled(minus_g[i - 1]);
  }
  if (!(lift<DiffPoly>(nb) * torus_part * lift<DiffPoly>(nb_inv) == minus_g_part))
    violation("weyl-conjugation-torus", "Ad(n(w))(sum gbar_i H_i) != -sum g_i H_i");
  d.A_L = torus_part + lift<DiffPoly>(rep.A0_minus(d.c));
  return d;
}

void liouville_solutions(const ChevalleyRep& rep, const Stage1Coeffs& s1, LiouvilleData& d) {
  const int l = rep.rank(), m = rep.m();
  d.z.clear();
  d.y.clear();
  for (int i = 1; i <= l; ++i) d.z.push_back(LiouvExpr::exp_integral(d.gbar[i - 1]));
  std::map<int, LiouvExpr> values;
  for (int i = 1; i <= m; ++i) {
    LiouvExpr y;
    if (i <= l) {
      // b_i = -a_s; Ad(t(z)) scales X_{b_i} by prod z_j^{w_ij}
      int s = 0;
      for (int k = 1; k <= l; ++k)
        if (beta(rep, i) == -rep.rs().simple(k)) s = k;
      DiffPoly exponent;
      for (int j = 1; j <= l; ++j) exponent -= d.gbar[j - 1] * Rational(rep.weight(j, beta(rep, i)));
      LiouvExpr integrand = exponent.is_zero() ? LiouvExpr(Rational(1)) : LiouvExpr::exp_integral(exponent);
      y = LiouvExpr::integral(integrand * d.c.at(s - 1));
    } else {
      y = LiouvExpr::integral(-evaluate_at(s1.v[i - 1], values));
    }
    values[i] = y;
    d.y.push_back(y);
  }
}

void verify_liouville(const ChevalleyRep& rep, const LiouvilleData& d) {
  GroupWord<LiouvExpr> w;
  for (int i = 1; i <= rep.rank(); ++i) w.push_back(torus_factor(rep, i, d.gbar[i - 1]));
  for (int i = 1; i <= rep.m(); ++i) w.push_back(unipotent_factor(rep, beta(rep, i), d.y[i - 1]));
  if (!(log_derivative_direct(w, rep.dim()) == to_liouv(d.A_L)))
    throw Error(ErrorKind::VerificationFailure, "liouville-logderiv: ld(t(z)u(y)) != A_L");
}

RawCoeffs logderiv_Y(const ChevalleyRep& rep, const Stage2Coeffs& s2, const LiouvilleData& d) {
  const int m = rep.m();
  const std::size_t n = rep.dim();
  auto word = unipotent_word(rep, generic_eta(m));
  const RatMatrix nb = rep.n_bar();
  Matrix<DiffPoly> inner = lift<DiffPoly>(nb) * d.A_L * lift<DiffPoly>(rat_inverse(nb));
  Matrix<DiffPoly> ld = log_derivative(word, n) + adjoint(word, inner);
  auto c = rep.decompose(ld);
  for (const auto& h : c.h)
    if (!h.is_zero()) violation("coefficients-shape", "nonzero torus component");
  for (int i = 1; i <= m; ++i) {
    DiffPoly expect = beta(rep, i).height() == -1 ? DiffPoly(1) : DiffPoly();
    if (!(c.pos[i - 1] == expect)) violation("coefficients-shape", "positive part differs from A0+");
  }
  RawCoeffs raw;
  raw.h = c.neg;
  for (int i = 1; i <= m; ++i) {
    DiffPoly q = raw.h[i - 1] - DiffPoly::var(i, 1) - s2.ell[i - 1];
    int s2i = last_index_with_height_at_least(rep, height(rep, i) + 1);
    int i2 = last_index_with_height_at_least(rep, height(rep, i));
    if (!q.is_zero() && q.min_degree() < 2) violation("coefficients-remainder", "q_" + idx(i) + " has degree < 2");
    for (const auto& j : q.jets()) {
      if (j.order > 1) violation("coefficients-remainder", "q_" + idx(i) + " has order > 1");
      if (j.var > i2 || (j.order == 1 && j.var > s2i))
        violation("coefficients-remainder", "q_" + idx(i) + " involves a variable outside its band");
    }
    raw.q.push_back(q);
  }
  return raw;
}

Elimination eliminate_noncomplementary(const ChevalleyRep& rep, const Stage2Coeffs& s2, const RawCoeffs& raw) {
  const int l = rep.rank(), m = rep.m();
  const int min_height = height(rep, m);
  Elimination e;
  // j: largest non-complementary index of height -1
  int j = 0;
  for (int i : indices_at_height(rep, -1))
    if (!rep.rs().is_complementary(i)) j = std::max(j, i);

  RatMatrix prev_rows;  // linear-part matrix of the previous band, complementary rows deleted
  for (int q = -1; q > min_height; --q) {
    std::vector<int> I, K = indices_at_height(rep, q - 1);
    for (int i : indices_at_height(rep, q))
      if (!rep.rs().is_complementary(i)) I.push_back(i);
    if (I.size() != K.size()) rank_failure("elimination-band-rank", "non-square system");
    RatMatrix L(I.size(), K.size());
    std::vector<DiffPoly> rhs;
    for (std::size_t r = 0; r < I.size(); ++r) {
      const int i = I[r];
      for (std::size_t c = 0; c < K.size(); ++c) L(r, c) = s2.ell[i - 1].linear_coefficient({K[c], 0});
      rhs.push_back(-substitute_partial(raw.h[i - 1] - s2.ell[i - 1], e.f));
    }
    auto Linv = inverse(L);
    if (!Linv) rank_failure("elimination-band-rank", "singular system at height " + std::to_string(q));
    std::vector<DiffPoly> sol = solve_with_inverse(*Linv, rhs);
    for (std::size_t c = 0; c < K.size(); ++c) {
      const int k = K[c];
      const DiffPoly& f = sol[c];
      if (!variables_within(f, 1, l))
        violation("elimination-linear-order", "f_" + idx(k) + " still involves eliminated variables");
      DiffPoly lin = f.linear_part(), non = f.nonlinear_part();
      if (!f.homogeneous_component(0).is_zero()) violation("elimination-linear-order", "f_" + idx(k) + " constant");
      const int lin_order = std::abs(height(rep, k) + 1);
      if (!every_jet_has_order(lin, lin_order) || !variables_within(lin, 1, j))
        violation("elimination-linear-order", "linear part of f_" + idx(k));
      if (non.order() > std::abs(height(rep, k) + 2))
        violation("elimination-nonlinear-terms", "f_" + idx(k) + " nonlinear order");
      e.f[k] = f;
      e.ell_bar[k] = lin;
      e.p_bar[k] = non;
      e.solve_order.push_back(k);
    }
    // band rank of the linear parts of the newly solved height q-1
    if (q - 1 <= -2) {
      const int ord = std::abs(q);  // |(q-1)+1|
      std::vector<JetVar> cols;
      for (int v = 1; v <= j; ++v) cols.push_back({v, ord});
      std::vector<DiffPoly> rows;
      for (int k : K) rows.push_back(e.ell_bar[k]);
      RatMatrix mat = coefficient_matrix(rows, cols);
      if (rank(mat) != rows.size())
        rank_failure("elimination-band-rank", "linear parts at height " + std::to_string(q - 1) + " lack full rank");
      if (q - 1 <= -3 && !same_row_space(mat, prev_rows))
        rank_failure("elimination-band-rank", "row space at height " + std::to_string(q - 1) +
                                                  " differs from the previous band without complementary rows");
      std::vector<std::size_t> keep;
      for (std::size_t r = 0; r < K.size(); ++r)
        if (!rep.rs().is_complementary(K[r])) keep.push_back(r);
      prev_rows = RatMatrix(keep.size(), cols.size());
      for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) prev_rows(r, c) = mat(keep[r], c);
    }
  }
  for (const auto& [k, p] : e.p_bar)
    if (!p.is_zero() && p.min_degree() < 2) violation("elimination-nonlinear-terms", "p_bar_" + idx(k) + " degree");
  return e;
}

InvariantSet invariants(const ChevalleyRep& rep, const RawCoeffs& raw, const Elimination& elim) {
  const int l = rep.rank(), m = rep.m();
  InvariantSet inv;
  inv.indices = rep.rs().comp_roots();
  std::sort(inv.indices.begin(), inv.indices.end());
  for (int j : inv.indices) {
    DiffPoly h = substitute_partial(raw.h[j - 1], elim.f);
    if (!variables_within(h, 1, l)) violation("invariants-variables", "h_" + idx(j) + " not reduced");
    DiffPoly lin = h.linear_part(), non = h.nonlinear_part();
    if (!h.homogeneous_component(0).is_zero()) violation("invariants-variables", "h_" + idx(j) + " constant");
    if (lin.is_zero() || !every_jet_has_order(lin, std::abs(height(rep, j))))
      violation("invariants-linear-order", "linear part of h_" + idx(j));
    if (non.order() > std::abs(height(rep, j) + 1))
      violation("invariants-nonlinear-terms", "h_" + idx(j) + " nonlinear order");
    if (!non.is_zero() && non.min_degree() < 2) violation("invariants-nonlinear-terms", "h_" + idx(j) + " degree");
    inv.h.push_back(h);
    inv.lhat.push_back(lin);
    inv.phat.push_back(non);
  }
  // leading matrix with derivative orders ignored
  RatMatrix lead(l, l);
  for (int r = 0; r < l; ++r) {
    const int ord = std::abs(height(rep, inv.indices[r]));
    for (int v = 1; v <= l; ++v) lead(r, v - 1) = inv.lhat[r].linear_coefficient({v, ord});
  }
  if (rank(lead) != static_cast<std::size_t>(l))
    rank_failure("invariants-leading-rank", "leading coefficient matrix is singular");
  // prolong every linear part to the top order
  const int top = std::abs(height(rep, m));
  std::vector<DiffPoly> prolonged;
  std::vector<JetVar> cols;
  for (int v = 1; v <= l; ++v) cols.push_back({v, top});
  for (int r = 0; r < l; ++r) prolonged.push_back(derive(inv.lhat[r], top - std::abs(height(rep, inv.indices[r]))));
  if (rank(coefficient_matrix(prolonged, cols)) != static_cast<std::size_t>(l))
    rank_failure("invariants-prolongation-rank", "prolonged system lacks full rank");
  return inv;
}

Matrix<DiffPoly> assemble_A_G(const ChevalleyRep& rep, const std::vector<int>& indices,
                              const std::vector<DiffPoly>& h) {
  Matrix<DiffPoly> a = lift<DiffPoly>(rep.A0_plus());
  for (std::size_t k = 0; k < indices.size(); ++k) a += lift<DiffPoly>(rep.Xneg(indices[k])).scaled(h[k]);
  return a;
}

Matrix<DiffPoly> assemble_A_G(const ChevalleyRep& rep, const InvariantSet& inv) {
  return assemble_A_G(rep, inv.indices, inv.h);
}

void verify_end_to_end(const ChevalleyRep& rep, const LiouvilleData& d, const Elimination& elim,
                       const InvariantSet& inv) {
  const std::size_t n = rep.dim();
  // Y = P Q with P = u(eta, f) n(w) and Q = t(z) u(y)
  auto uw = unipotent_word(rep, reduced_arguments(rep, elim));
  Matrix<DiffPoly> P = word_matrix(uw, n) * lift<DiffPoly>(rep.n_bar());
  GroupWord<LiouvExpr> qw;
  for (int i = 1; i <= rep.rank(); ++i) qw.push_back(torus_factor(rep, i, d.gbar[i - 1]));
  for (int i = 1; i <= rep.m(); ++i) qw.push_back(unipotent_factor(rep, beta(rep, i), d.y[i - 1]));
  Matrix<LiouvExpr> Q = word_matrix(qw, n);
  Matrix<DiffPoly> A_G = assemble_A_G(rep, inv.indices, inv.h);
  // d(PQ) - A_G PQ = (dP - A_G P) Q + P dQ
  Matrix<LiouvExpr> E = to_liouv(d_dt(P) - A_G * P) * Q + to_liouv(P) * d_dt(Q);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!E(i, j).is_zero())
        throw Error(ErrorKind::IdentityFailure, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                    ") of dY - A_G Y is " + E(i, j).to_text());
}

Specialization specialize(const ChevalleyRep& rep, const InvariantSet& inv, const std::map<int, DiffPoly>& sigma) {
  Specialization s;
  for (const auto& h : inv.h) s.h.push_back(substitute(h, sigma));
  s.A_G = assemble_A_G(rep, inv.indices, s.h);
  return s;
}

Pipeline run_pipeline(const ChevalleyRep& rep, const PipelineOptions& opts) {
  Pipeline p;
  p.rep = rep;
  const auto& names = structural_check_names();
  auto passed = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) p.checks.push_back(names[k]);
  };
  p.stage1 = logderiv_unipotent(rep);
  passed(0, 2);
  p.stage2 = adjoint_on_A0(rep);
  passed(2, 7);
  p.liouville = build_A_L(rep, p.stage2);
  passed(7, 9);
  liouville_solutions(rep, p.stage1, p.liouville);
  if (opts.verify_liouville) {
    verify_liouville(rep, p.liouville);
    passed(9, 10);
  }
  p.raw = logderiv_Y(rep, p.stage2, p.liouville);
  passed(10, 12);
  p.elim = eliminate_noncomplementary(rep, p.stage2, p.raw);
  passed(12, 15);
  p.inv = invariants(rep, p.raw, p.elim);
  passed(15, 20);
  p.A_G = assemble_A_G(rep, p.inv.indices, p.inv.h);
  if (opts.end_to_end) {
    verify_end_to_end(rep, p.liouville, p.elim, p.inv);
    p.checks.push_back("end-to-end-identity");
  }
  return p;
}

}  // namespace pv
