#pragma once

#include <optional>
#include <vector>

#include "pv/chevalley.hpp"
#include "pv/diffpoly.hpp"
#include "pv/linalg.hpp"
#include "pv/liouville.hpp"
#include "pv/matrix.hpp"

namespace pv {

inline Rational d_dt(const Rational&) { return Rational(0); }
inline DiffPoly d_dt(const DiffPoly& p) { return derive(p); }
inline LiouvExpr d_dt(const LiouvExpr& e) { return derive_expr(e); }

template <class T>
Matrix<T> d_dt(const Matrix<T>& m) {
  return m.map([](const T& x) { return d_dt(x); });
}

enum class Tag { General, UnipotentLower, UnipotentUpper, TorusDiagonal };

// Checks that a structural tag is truthful.
template <class T>
bool has_tag(const Matrix<T>& m, Tag tag) {
  if (m.rows() != m.cols()) return false;
  const T one = T(Rational(1));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const T& x = m(i, j);
      switch (tag) {
        case Tag::General: break;
        case Tag::UnipotentLower:
          if ((i == j && !(x == one)) || (j > i && !is_zero(x))) return false;
          break;
        case Tag::UnipotentUpper:
          if ((i == j && !(x == one)) || (i > j && !is_zero(x))) return false;
          break;
        case Tag::TorusDiagonal:
          if ((i != j && !is_zero(x)) || (i == j && is_zero(x))) return false;
          break;
      }
    }
  return true;
}

// Closed-form inverse of a single diagonal entry.
inline std::optional<Rational> invert_scalar(const Rational& x) {
  if (is_zero(x)) return std::nullopt;
  return 1 / x;
}
inline std::optional<DiffPoly> invert_scalar(const DiffPoly& x) {
  if (!x.is_constant() || x.is_zero()) return std::nullopt;
  return DiffPoly(1 / x.constant_term());
}
inline std::optional<LiouvExpr> invert_scalar(const LiouvExpr& x) {
  // c * e^{∫g} with constant c
  if (x.terms().size() != 1) return std::nullopt;
  const auto& [k, c] = *x.terms().begin();
  if (!k.atoms.empty() || !c.is_constant()) return std::nullopt;
  return LiouvExpr::exp_integral(k.exponent, -1) * (1 / c.constant_term());
}

// Inverse dispatched on the structural tag; general symbolic inversion is
// refused.
template <class T>
Matrix<T> closed_form_inverse(const Matrix<T>& m, Tag tag) {
  if (!has_tag(m, tag) || tag == Tag::General)
    throw Error(ErrorKind::NotClosedFormInvertible, "matrix has no closed-form inverse");
  const std::size_t n = m.rows();
  if (tag == Tag::TorusDiagonal) {
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = invert_scalar(m(i, i));
      if (!v) throw Error(ErrorKind::NotClosedFormInvertible, "diagonal entry not invertible");
      inv(i, i) = *v;
    }
    return inv;
  }
  // unipotent: finite Neumann series in the nilpotent part
  Matrix<T> id = Matrix<T>::identity(n);
  Matrix<T> nil = id - m;
  Matrix<T> inv = id, power = id;
  for (std::size_t k = 1; k < n; ++k) {
    power = power * nil;
    if (power.is_zero()) break;
    inv += power;
  }
  return inv;
}

template <>
inline RatMatrix closed_form_inverse(const RatMatrix& m, Tag) {
  auto inv = inverse(m);
  if (!inv) throw Error(ErrorKind::NotClosedFormInvertible, "singular constant matrix");
  return *inv;
}

// One structured factor of a group element.
template <class T>
struct Factor {
  enum class Kind { Unipotent, Torus, Constant };
  Kind kind = Kind::Constant;
  RatMatrix nilpotent;  // Unipotent: exp(arg * nilpotent)
  T arg{};
  std::vector<T> diag, diag_inv, diag_logderiv;  // Torus
  RatMatrix constant, constant_inv;              // Constant

  static Factor unipotent(const RatMatrix& x, const T& a) {
    Factor f;
    f.kind = Kind::Unipotent;
    f.nilpotent = x;
    f.arg = a;
    return f;
  }
  static Factor constant_matrix(const RatMatrix& m) {
    Factor f;
    f.kind = Kind::Constant;
    f.constant = m;
    auto inv = inverse(m);
    if (!inv) throw Error(ErrorKind::NotClosedFormInvertible, "singular constant factor");
    f.constant_inv = *inv;
    return f;
  }
  static Factor torus(std::vector<T> d, std::vector<T> dinv, std::vector<T> ld) {
    Factor f;
    f.kind = Kind::Torus;
    f.diag = std::move(d);
    f.diag_inv = std::move(dinv);
    f.diag_logderiv = std::move(ld);
    return f;
  }

  std::size_t dim() const {
    switch (kind) {
      case Kind::Unipotent: return nilpotent.rows();
      case Kind::Torus: return diag.size();
      case Kind::Constant: return constant.rows();
    }
    return 0;
  }

  Matrix<T> matrix() const {
    switch (kind) {
      case Kind::Unipotent: return exp_nilpotent<T>(nilpotent, arg);
      case Kind::Torus: return diagonal(diag);
      case Kind::Constant: return lift<T>(constant);
    }
    return {};
  }
  Matrix<T> inverse_matrix() const {
    switch (kind) {
      case Kind::Unipotent: return exp_nilpotent<T>(nilpotent, -arg);
      case Kind::Torus: return diagonal(diag_inv);
      case Kind::Constant: return lift<T>(constant_inv);
    }
    return {};
  }
  // d(F) F^{-1}
  Matrix<T> log_derivative() const {
    switch (kind) {
      case Kind::Unipotent: return lift<T>(nilpotent).scaled(d_dt(arg));
      case Kind::Torus: return diagonal(diag_logderiv);
      case Kind::Constant: return Matrix<T>(dim(), dim());
    }
    return {};
  }

 private:
  static Matrix<T> diagonal(const std::vector<T>& d) {
    Matrix<T> m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
};

template <class T>
using GroupWord = std::vector<Factor<T>>;

template <class T>
Matrix<T> word_matrix(const GroupWord<T>& w, std::size_t n) {
  Matrix<T> m = Matrix<T>::identity(n);
  for (const auto& f : w) m = m * f.matrix();
  return m;
}

template <class T>
Matrix<T> word_inverse(const GroupWord<T>& w, std::size_t n) {
  Matrix<T> m = Matrix<T>::identity(n);
  for (auto it = w.rbegin(); it != w.rend(); ++it) m = m * it->inverse_matrix();
  return m;
}

// Product rule: ld(AB) = ld(A) + Ad(A)(ld(B)), folded from the right.
template <class T>
Matrix<T> log_derivative(const GroupWord<T>& w, std::size_t n) {
  Matrix<T> acc(n, n);
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    acc = it->log_derivative() + it->matrix() * acc * it->inverse_matrix();
  return acc;
}

// d(M) M^{-1} on the multiplied-out matrix.
template <class T>
Matrix<T> log_derivative_direct(const GroupWord<T>& w, std::size_t n) {
  return d_dt(word_matrix(w, n)) * word_inverse(w, n);
}

template <class T>
Matrix<T> log_derivative(const Matrix<T>& m, Tag tag) {
  return d_dt(m) * closed_form_inverse(m, tag);
}

template <class T>
Matrix<T> adjoint(const GroupWord<T>& w, const Matrix<T>& a) {
  const std::size_t n = a.rows();
  return word_matrix(w, n) * a * word_inverse(w, n);
}

template <class T>
Matrix<T> gauge(const GroupWord<T>& w, const Matrix<T>& a) {
  return adjoint(w, a) + log_derivative(w, a.rows());
}

// Factor builders tied to a representation.
template <class T>
Factor<T> unipotent_factor(const ChevalleyRep& rep, const Root& r, const T& x) {
  return Factor<T>::unipotent(rep.X(r), x);
}

// t_i(z) with z = e^{∫g}.
inline Factor<LiouvExpr> torus_factor(const ChevalleyRep& rep, int i, const DiffPoly& g) {
  std::vector<LiouvExpr> d, dinv, ld;
  const RatMatrix& h = rep.H(i);
  for (std::size_t k = 0; k < rep.dim(); ++k) {
    int e = static_cast<int>(h(k, k).get_num().get_si());
    d.push_back(e == 0 ? LiouvExpr(Rational(1)) : LiouvExpr::exp_integral(g, e));
    dinv.push_back(e == 0 ? LiouvExpr(Rational(1)) : LiouvExpr::exp_integral(g, -e));
    ld.push_back(LiouvExpr(g * Rational(e)));
  }
  return Factor<LiouvExpr>::torus(d, dinv, ld);
}

inline Factor<Rational> torus_factor(const ChevalleyRep& rep, int i, const Rational& z) {
  RatMatrix t = torus_element(rep, i, z);
  std::vector<Rational> d, dinv, ld(rep.dim());
  for (std::size_t k = 0; k < rep.dim(); ++k) {
    d.push_back(t(k, k));
    dinv.push_back(1 / t(k, k));
  }
  return Factor<Rational>::torus(d, dinv, ld);
}

}  // namespace pv
