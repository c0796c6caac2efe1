#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pv/diffpoly.hpp"

namespace pv {

class LiouvExpr;

// An opaque formal integral. Two atoms are equal iff their normalized
// integrands are equal; `key` is the canonical text of the integrand.
struct IntegralNode;
using IntegralRef = std::shared_ptr<const IntegralNode>;

// A product e^{∫ exponent} * Π atom^power. The exponentials of a term are
// merged into one exponent polynomial, so e^{∫g}e^{∫-g} is the empty key.
struct LiouvKey {
  DiffPoly exponent;
  std::vector<std::pair<IntegralRef, int>> atoms;  // sorted by atom key
};

struct LiouvKeyLess {
  bool operator()(const LiouvKey& a, const LiouvKey& b) const;
};

// Normal form: sum of DiffPoly coefficients times distinct keys.
class LiouvExpr {
 public:
  using TermMap = std::map<LiouvKey, DiffPoly, LiouvKeyLess>;

  LiouvExpr() = default;
  LiouvExpr(const Rational& c) : LiouvExpr(DiffPoly(c)) {}  // NOLINT
  LiouvExpr(long c) : LiouvExpr(DiffPoly(Rational(c))) {}  // NOLINT
  LiouvExpr(const DiffPoly& p);                             // NOLINT

  // e^{∫ k*g}
  static LiouvExpr exp_integral(const DiffPoly& g, int k = 1);
  // ∫ f, with the rational content of f pulled outside the atom.
  static LiouvExpr integral(const LiouvExpr& f);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True if the expression is a plain DiffPoly.
  bool is_scalar() const;
  DiffPoly scalar() const;  // requires is_scalar()

  LiouvExpr& operator+=(const LiouvExpr& o);
  LiouvExpr& operator-=(const LiouvExpr& o);
  friend LiouvExpr operator+(LiouvExpr a, const LiouvExpr& b) { return a += b; }
  friend LiouvExpr operator-(LiouvExpr a, const LiouvExpr& b) { return a -= b; }
  friend LiouvExpr operator-(LiouvExpr a);
  friend LiouvExpr operator*(const LiouvExpr& a, const LiouvExpr& b);
  friend LiouvExpr operator*(LiouvExpr a, const Rational& c);
  friend LiouvExpr operator*(LiouvExpr a, const DiffPoly& c);
  LiouvExpr& operator*=(const LiouvExpr& o) { return *this = *this * o; }

  bool operator==(const LiouvExpr& o) const;

  // Canonical text used as identity of integral atoms.
  const std::string& key() const;
  std::string to_text() const;
  std::string to_ascii() const;  // re-parseable by parse_liouv

 private:
  void add_term(const LiouvKey& k, const DiffPoly& c);
  TermMap terms_;
  mutable std::shared_ptr<std::string> key_cache_;
};

struct IntegralNode {
  LiouvExpr integrand;
  std::string key;
};

inline bool is_zero(const LiouvExpr& e) { return e.is_zero(); }

LiouvExpr derive_expr(const LiouvExpr& e);

// Normal forms are maintained by every operation; this is the identity and
// exists so callers can state intent.
inline const LiouvExpr& normalize(const LiouvExpr& e) { return e; }
inline bool equals(const LiouvExpr& a, const LiouvExpr& b) { return a == b; }

// Substitute Liouvillian values for eta_i (with derivatives) in p.
LiouvExpr evaluate_at(const DiffPoly& p, const std::map<int, LiouvExpr>& values);

// Grammar of parse_diffpoly plus int(f) for ∫f and expint(g) for e^{∫g}.
LiouvExpr parse_liouv(const std::string& text, const std::map<std::string, LiouvExpr>& bindings = {});

}  // namespace pv
