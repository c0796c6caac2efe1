#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pv/error.hpp"
#include "pv/rational.hpp"

namespace pv {

// eta_var^(order)
struct JetVar {
  int var = 1;
  int order = 0;
  auto operator<=>(const JetVar&) const = default;
};

// Sorted ascending by JetVar; exponents positive.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<JetVar, int>> factors);
  static Monomial of(JetVar v, int e = 1) { return Monomial({{v, e}}); }

  const std::vector<std::pair<JetVar, int>>& factors() const { return factors_; }
  int degree() const { return degree_; }
  int order() const;  // max derivative order, 0 for the unit monomial
  bool is_unit() const { return factors_.empty(); }
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

 private:
  std::vector<std::pair<JetVar, int>> factors_;
  int degree_ = 0;
};

// Graded order: higher degree first, then lexicographic on factors read from
// the largest jet variable downward. `before(a, b)` puts a earlier in output.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  DiffPoly() = default;
  DiffPoly(const Rational& c);  // NOLINT: constants embed implicitly
  DiffPoly(long c) : DiffPoly(Rational(c)) {}
  static DiffPoly jet(JetVar v);
  static DiffPoly var(int i, int order = 0) { return jet({i, order}); }
  static DiffPoly term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);
  DiffPoly& operator*=(const Rational& c);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
  friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
  friend DiffPoly operator-(DiffPoly a);
  DiffPoly pow(int e) const;

  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
  // Total order consistent with the canonical term order.
  bool operator<(const DiffPoly& o) const;

  // structure queries
  int order() const;
  int degree() const;
  int min_degree() const;  // 0 for the zero polynomial
  DiffPoly linear_part() const;
  DiffPoly nonlinear_part() const;
  DiffPoly homogeneous_component(int d) const;
  std::set<int> variables() const;
  std::set<JetVar> jets() const;
  Rational coefficient(const Monomial& m) const;
  Rational linear_coefficient(JetVar v) const { return coefficient(Monomial::of(v)); }
  Rational leading_coefficient() const;

  std::string to_text() const;   // subscripted eta notation with primes
  std::string to_ascii() const;  // re-parseable by parse_diffpoly

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

inline bool is_zero(const DiffPoly& p) { return p.is_zero(); }

DiffPoly derive(const DiffPoly& p, int times = 1);

// Differential substitution: eta_i^(k) -> k-th derivative of sigma(eta_i).
// Every variable of p must be assigned.
DiffPoly substitute(const DiffPoly& p, const std::map<int, DiffPoly>& sigma);
// Same, but unassigned variables are kept as they are.
DiffPoly substitute_partial(const DiffPoly& p, const std::map<int, DiffPoly>& sigma);

// Evaluate p in another ring, given the value of every jet variable.
template <class T, class JetValue>
T evaluate(const DiffPoly& p, JetValue&& value_of) {
  std::map<JetVar, std::vector<T>> powers;  // powers[v][e-1] = value^e
  auto power = [&](JetVar v, int e) -> const T& {
    auto& vec = powers[v];
    if (vec.empty()) vec.push_back(value_of(v));
    while (static_cast<int>(vec.size()) < e) vec.push_back(vec.back() * vec.front());
    return vec[e - 1];
  };
  T out{};
  for (const auto& [m, c] : p.terms()) {
    T t = T(c);
    for (const auto& [v, e] : m.factors()) t = t * power(v, e);
    out += t;
  }
  return out;
}

// Parse the ASCII grammar: numbers, eN (eta_N), primes or [k] for
// derivatives, ^ for powers, * or juxtaposition, / by constants, parentheses.
// Names in `bindings` stand for given polynomials and may carry derivatives.
DiffPoly parse_diffpoly(const std::string& text,
                        const std::map<std::string, DiffPoly>& bindings = {});

std::string jet_to_text(JetVar v);

}  // namespace pv
