#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pv/matrix.hpp"
#include "pv/rootsys.hpp"

namespace pv {

// Sign choices that pin down a Chevalley basis inside a fixed defining
// representation. Non-simple positive root vectors are
//   X_g = sign(g) * [X_{a_i}, X_b] / (r+1)
// where a_i is the smallest-index simple root with g - a_i a root and b = g - a_i;
// H_i = cartan_sign(i) * [X_{a_i}, X_{-a_i}].
struct Calibration {
  std::map<Root, int> root_signs;  // missing entries mean +1
  std::vector<int> cartan_signs;   // empty means all +1
  std::string note;

  int sign_of(const Root& positive) const;
  int cartan_sign(int i) const;  // 1-based
  bool operator==(const Calibration&) const = default;
};

// Compiled-in calibration table, identical to data/calibration.json.
const std::string& builtin_calibration_json();
Calibration calibration_from_json(const std::string& json_text, RootType type, int rank);
std::string calibration_to_json_entry(const Calibration& cal);
// PV_CALIBRATION names a file overriding the built-in table.
Calibration resolve_calibration(RootType type, int rank);

// Coefficients of a Lie algebra element over H_1..H_l, X_{b_1}..X_{b_m}
// (negative roots) and X_{-b_1}..X_{-b_m} (positive roots).
template <class T>
struct BasisCoeffs {
  std::vector<T> h, neg, pos;
};

class ChevalleyRep {
 public:
  const RootSystem& rs() const { return rs_; }
  int rank() const { return rs_.rank(); }
  int m() const { return rs_.num_positive(); }
  std::size_t dim() const { return n_; }
  const Calibration& calibration() const { return cal_; }

  const RatMatrix& H(int i) const { return H_.at(i - 1); }  // 1-based
  const RatMatrix& X(const Root& r) const;
  const RatMatrix& Xneg(int i) const { return X(rs_.beta(i)); }   // X_i in formulas
  const RatMatrix& Xpos(int i) const { return X(-rs_.beta(i)); }  // X_{-b_i}
  const RatMatrix& Xsimple(int i) const { return X(rs_.simple(i)); }
  const RatMatrix& Xsimple_neg(int i) const { return X(-rs_.simple(i)); }

  RatMatrix A0_plus(const std::vector<Rational>& s = {}) const;
  RatMatrix A0_minus(const std::vector<Rational>& s = {}) const;
  // W_i = [X_i, A0+]
  RatMatrix W(int i) const { return bracket(Xneg(i), A0_plus()); }

  // N_{a,b} with [X_a, X_b] = N X_{a+b}; 0 when a+b is not a root.
  int structure_constant(const Root& a, const Root& b) const;
  // scalar k with [H_j, X_r] = k X_r, read off the matrices
  int weight(int j, const Root& r) const;
  // H_a = [X_a, X_{-a}] as integer combination of H_1..H_l
  std::vector<int> coroot_coeffs(const Root& a) const;

  RatMatrix weyl_representative(const WeylWord& w) const;
  const WeylWord& longest_word() const { return longest_; }
  RatMatrix n_bar() const { return weyl_representative(longest_); }

  // Decomposition over the basis; residual must vanish exactly.
  template <class T>
  BasisCoeffs<T> decompose(const Matrix<T>& a) const;
  template <class T>
  Matrix<T> recompose(const BasisCoeffs<T>& c) const;

  // Exhaustive check of the Chevalley relations; returns an empty string if
  // all hold, otherwise a description of the first failure.
  std::string check_axioms() const;

  friend ChevalleyRep build_rep(const RootSystem& rs, const Calibration& cal);

 private:
  RootSystem rs_;
  Calibration cal_;
  std::size_t n_ = 0;
  std::vector<RatMatrix> H_;
  std::map<Root, RatMatrix> X_;
  WeylWord longest_;
  // decomposition data: pivot positions and the inverse of the basis restricted there
  std::vector<RatMatrix> basis_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
  RatMatrix pivot_inverse_;
};

ChevalleyRep build_rep(const RootSystem& rs, const Calibration& cal);
ChevalleyRep build_rep(const RootSystem& rs);  // resolved calibration

// Complementary roots of a representation built with any ordering, as root
// vectors (selection scans each height from the greatest index down).
std::vector<Root> complementary_roots(const ChevalleyRep& rep);

// exp(x X) for nilpotent rational X.
template <class T>
Matrix<T> exp_nilpotent(const RatMatrix& X, const T& x);

template <class T>
Matrix<T> unipotent_element(const ChevalleyRep& rep, const Root& r, const T& x) {
  return exp_nilpotent<T>(rep.X(r), x);
}

RatMatrix torus_element(const ChevalleyRep& rep, int i, const Rational& z);

// ---- template definitions ----

template <class T>
Matrix<T> exp_nilpotent(const RatMatrix& X, const T& x) {
  const std::size_t n = X.rows();
  Matrix<T> out = Matrix<T>::identity(n);
  RatMatrix term = RatMatrix::identity(n);
  T xk = T(Rational(1));
  for (int k = 1;; ++k) {
    term = (term * X).scaled(Rational(1, k));
    if (term.is_zero()) break;
    xk = xk * x;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(term(i, j))) out(i, j) += xk * term(i, j);
    if (k > static_cast<int>(n)) throw Error(ErrorKind::UnsupportedRep, "root vector is not nilpotent");
  }
  return out;
}

template <class T>
BasisCoeffs<T> ChevalleyRep::decompose(const Matrix<T>& a) const {
  if (a.rows() != n_ || a.cols() != n_) throw Error(ErrorKind::DimMismatch, "decompose");
  const std::size_t d = basis_.size();
  std::vector<T> c(d);
  for (std::size_t p = 0; p < pivots_.size(); ++p) {
    const T& v = a(pivots_[p].first, pivots_[p].second);
    if (is_zero(v)) continue;
    for (std::size_t b = 0; b < d; ++b)
      if (!is_zero(pivot_inverse_(p, b))) c[b] += v * pivot_inverse_(p, b);
  }
  BasisCoeffs<T> out;
  const std::size_t l = static_cast<std::size_t>(rank()), mm = static_cast<std::size_t>(m());
  out.h.assign(c.begin(), c.begin() + l);
  out.neg.assign(c.begin() + l, c.begin() + l + mm);
  out.pos.assign(c.begin() + l + mm, c.end());
  Matrix<T> residual = recompose(out) - a;
  if (!residual.is_zero())
    throw Error(ErrorKind::NotInLieAlgebra, "matrix is not in the span of the Chevalley basis");
  return out;
}

template <class T>
Matrix<T> ChevalleyRep::recompose(const BasisCoeffs<T>& c) const {
  Matrix<T> out(n_, n_);
  auto add = [&](const RatMatrix& b, const T& k) {
    if (is_zero(k)) return;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!is_zero(b(i, j))) out(i, j) += k * b(i, j);
  };
  for (int i = 1; i <= rank(); ++i) add(H(i), c.h.at(i - 1));
  for (int i = 1; i <= m(); ++i) {
    add(Xneg(i), c.neg.at(i - 1));
    add(Xpos(i), c.pos.at(i - 1));
  }
  return out;
}

}  // namespace pv
