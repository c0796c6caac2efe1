#include "pv/gauge.hpp"

#include <algorithm>
#include <numeric>

#include "pv/construct.hpp"
#include "pv/linalg.hpp"

namespace pv {

namespace {

// Exact k-th root of a rational, if it exists.
std::optional<Rational> rational_root(const Rational& x, unsigned long k) {
  if (k == 1) return x;
  if (sgn(x) < 0 && k % 2 == 0) return std::nullopt;
  mpz_class num = abs(x.get_num()), den = x.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return sgn(x) < 0 ? -r : r;
}

Rational int_power(const Rational& x, long e) {
  Rational base = e >= 0 ? x : 1 / x, out = 1;
  for (long i = 0; i < std::labs(e); ++i) out *= base;
  return out;
}

std::string describe_radical(const Rational& x, unsigned long k) {
  return "(" + x.get_str() + ")^(1/" + std::to_string(k) + ")";
}

}  // namespace

PlaneMembership is_in_plane(const ChevalleyRep& rep, const Matrix<DiffPoly>& A) {
  PlaneMembership pm;
  BasisCoeffs<DiffPoly> c;
  try {
    c = rep.decompose(A);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInLieAlgebra || e.kind() == ErrorKind::DimMismatch) return pm;
    throw;
  }
  pm.s.assign(rep.rank(), Rational(0));
  for (int i = 1; i <= rep.m(); ++i) {
    const DiffPoly& x = c.pos[i - 1];
    const Root& b = rep.rs().beta(i);
    if (b.height() != -1) {
      if (!x.is_zero()) return {};
      continue;
    }
    if (!x.is_constant() || x.is_zero()) return {};
    for (int k = 1; k <= rep.rank(); ++k)
      if (b == -rep.rs().simple(k)) pm.s[k - 1] = x.constant_term();
  }
  pm.in_plane = true;
  return pm;
}

std::optional<std::vector<Rational>> rescaling_torus(const ChevalleyRep& rep, const std::vector<Rational>& s,
                                                     std::string* obstruction) {
  const int l = rep.rank();
  // C(j, i) = weight of H_i on X_{a_j}; need sum_i C(j,i) log z_i = -log s_j
  RatMatrix C(l, l);
  for (int j = 1; j <= l; ++j)
    for (int i = 1; i <= l; ++i) C(j - 1, i - 1) = rep.weight(i, rep.rs().simple(j));
  auto Cinv = inverse(C);
  if (!Cinv) throw Error(ErrorKind::NonDiagonalCartan, "weight matrix is singular");
  std::vector<Rational> z;
  for (int i = 0; i < l; ++i) {
    // z_i = prod_j s_j^{-Cinv(i,j)} = (prod_j s_j^{-Cinv(i,j) D})^{1/D}
    mpz_class D = 1;
    for (int j = 0; j < l; ++j) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), (*Cinv)(i, j).get_den().get_mpz_t());
    Rational w = 1;
    for (int j = 0; j < l; ++j) {
      Rational e = -(*Cinv)(i, j) * D;
      w *= int_power(s[j], e.get_num().get_si());
    }
    auto r = rational_root(w, D.get_ui());
    if (!r) {
      if (obstruction) *obstruction = "z_" + std::to_string(i + 1) + " = " + describe_radical(w, D.get_ui());
      return std::nullopt;
    }
    z.push_back(*r);
  }
  return z;
}

GaugeResult normalize_to_AG(const ChevalleyRep& rep, const Matrix<DiffPoly>& A_in) {
  const int l = rep.rank(), m = rep.m();
  const std::size_t n = rep.dim();
  PlaneMembership pm = is_in_plane(rep, A_in);
  if (!pm.in_plane) throw Error(ErrorKind::NotInLieAlgebra, "matrix is not in the plane A0+(s) + b^-");

  GaugeResult res;
  res.torus = RatMatrix::identity(n);
  Matrix<DiffPoly> A = A_in;
  if (std::any_of(pm.s.begin(), pm.s.end(), [](const Rational& x) { return x != 1; })) {
    std::string why;
    auto z = rescaling_torus(rep, pm.s, &why);
    if (!z) throw Error(ErrorKind::NonUnitScaling, "torus rescaling needs " + why);
    for (int i = 1; i <= l; ++i) res.torus = res.torus * torus_element(rep, i, (*z)[i - 1]);
    A = lift<DiffPoly>(res.torus) * A * lift<DiffPoly>(*inverse(res.torus));
  }

  std::vector<int> comp = rep.rs().comp_roots();
  std::sort(comp.begin(), comp.end());
  std::map<int, DiffPoly> f;
  const int min_height = rep.rs().height_of(m);
  for (int q = 0; q >= min_height; --q) {
    // coordinates of level q: H_1..H_l at q = 0, otherwise X_i of height q
    std::vector<int> coords, below, comp_here;
    for (int i = 1; i <= m; ++i) {
      int h = rep.rs().height_of(i);
      if (q < 0 && h == q) coords.push_back(i);
      if (h == q - 1) below.push_back(i);
      if (h == q && rep.rs().is_complementary(i)) comp_here.push_back(i);
    }
    const std::size_t dim = q == 0 ? static_cast<std::size_t>(l) : coords.size();
    if (below.size() + comp_here.size() != dim)
      throw Error(ErrorKind::SpanFailure, "level " + std::to_string(q) + " is not spanned");
    RatMatrix B(dim, dim);
    std::size_t col = 0;
    auto add_column = [&](const RatMatrix& X) {
      auto c = rep.decompose(X);
      for (std::size_t r = 0; r < dim; ++r) B(r, col) = q == 0 ? c.h[r] : c.neg[coords[r] - 1];
      ++col;
    };
    for (int k : below) add_column(rep.W(k));
    for (int g : comp_here) add_column(rep.Xneg(g));
    auto Binv = inverse(B);
    if (!Binv) throw Error(ErrorKind::SpanFailure, "level " + std::to_string(q) + " basis is singular");

    auto cur = rep.decompose(A);
    std::vector<DiffPoly> rhs(dim);
    for (std::size_t r = 0; r < dim; ++r) rhs[r] = q == 0 ? cur.h[r] : cur.neg[coords[r] - 1];
    std::vector<DiffPoly> sol = solve_with_inverse(*Binv, rhs);

    GroupWord<DiffPoly> step;
    for (std::size_t k = 0; k < below.size(); ++k)
      if (!sol[k].is_zero()) step.push_back(unipotent_factor(rep, rep.rs().beta(below[k]), DiffPoly(-sol[k])));
    for (std::size_t k = 0; k < comp_here.size(); ++k) f[comp_here[k]] = sol[below.size() + k];
    if (!step.empty()) {
      A = gauge(step, A);
      res.unipotent.insert(res.unipotent.begin(), step.begin(), step.end());
    }
  }

  res.indices = comp;
  for (int j : comp) res.f.push_back(f[j]);
  res.A_G = assemble_A_G(rep, res.indices, res.f);
  res.u = word_matrix(res.unipotent, n);

  // unconditional re-check on the multiplied-out gauge element
  GroupWord<DiffPoly> total = res.unipotent;
  total.push_back(Factor<DiffPoly>::constant_matrix(res.torus));
  Matrix<DiffPoly> check = word_matrix(total, n) * A_in * word_inverse(total, n) + log_derivative_direct(total, n);
  if (!(check == res.A_G) || !(A == res.A_G))
    throw Error(ErrorKind::VerificationFailure, "gauge(u, A) differs from A_G(f)");
  return res;
}

}  // namespace pv
