#include "pv/liouville.hpp"

#include <sstream>

#include "pv/detail/expr_parser.hpp"

namespace pv {

namespace {

int compare_atoms(const std::vector<std::pair<IntegralRef, int>>& a,
                  const std::vector<std::pair<IntegralRef, int>>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) {
      int c = a[i].first->key.compare(b[i].first->key);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::vector<std::pair<IntegralRef, int>> merge_atoms(const std::vector<std::pair<IntegralRef, int>>& a,
                                                     const std::vector<std::pair<IntegralRef, int>>& b) {
  std::vector<std::pair<IntegralRef, int>> out;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    int c = i->first == j->first ? 0 : i->first->key.compare(j->first->key);
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

}  // namespace

bool LiouvKeyLess::operator()(const LiouvKey& a, const LiouvKey& b) const {
  if (!(a.exponent == b.exponent)) return a.exponent < b.exponent;
  return compare_atoms(a.atoms, b.atoms) < 0;
}

LiouvExpr::LiouvExpr(const DiffPoly& p) {
  if (!p.is_zero()) terms_.emplace(LiouvKey{}, p);
}

LiouvExpr LiouvExpr::exp_integral(const DiffPoly& g, int k) {
  LiouvExpr e;
  e.terms_.emplace(LiouvKey{g * Rational(k), {}}, DiffPoly(Rational(1)));
  return e;
}

LiouvExpr LiouvExpr::integral(const LiouvExpr& f) {
  if (f.is_zero()) return LiouvExpr();
  Rational content = f.terms_.begin()->second.leading_coefficient();
  LiouvExpr g = f * (Rational(1) / content);
  auto node = std::make_shared<IntegralNode>(IntegralNode{g, g.key()});
  LiouvExpr e;
  e.terms_.emplace(LiouvKey{DiffPoly(), {{node, 1}}}, DiffPoly(content));
  return e;
}

bool LiouvExpr::is_scalar() const {
  if (terms_.empty()) return true;
  const LiouvKey& k = terms_.begin()->first;
  return terms_.size() == 1 && k.exponent.is_zero() && k.atoms.empty();
}

DiffPoly LiouvExpr::scalar() const {
  if (!is_scalar()) throw Error(ErrorKind::VerificationFailure, "expression is not a plain polynomial");
  return terms_.empty() ? DiffPoly() : terms_.begin()->second;
}

void LiouvExpr::add_term(const LiouvKey& k, const DiffPoly& c) {
  if (c.is_zero()) return;
  key_cache_.reset();
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LiouvExpr& LiouvExpr::operator+=(const LiouvExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LiouvExpr& LiouvExpr::operator-=(const LiouvExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LiouvExpr operator-(LiouvExpr a) {
  a.key_cache_.reset();
  for (auto& [k, c] : a.terms_) c = -c;
  return a;
}

LiouvExpr operator*(const LiouvExpr& a, const LiouvExpr& b) {
  LiouvExpr r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      LiouvKey k{ka.exponent + kb.exponent, merge_atoms(ka.atoms, kb.atoms)};
      r.add_term(k, ca * cb);
    }
  return r;
}

LiouvExpr operator*(LiouvExpr a, const Rational& c) {
  if (is_zero(c)) return LiouvExpr();
  a.key_cache_.reset();
  for (auto& [k, p] : a.terms_) p *= c;
  return a;
}

LiouvExpr operator*(LiouvExpr a, const DiffPoly& c) {
  if (c.is_zero()) return LiouvExpr();
  LiouvExpr r;
  for (const auto& [k, p] : a.terms_) r.add_term(k, p * c);
  return r;
}

bool LiouvExpr::operator==(const LiouvExpr& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  LiouvKeyLess less;
  for (auto i = terms_.begin(), j = o.terms_.begin(); i != terms_.end(); ++i, ++j) {
    if (less(i->first, j->first) || less(j->first, i->first)) return false;
    if (!(i->second == j->second)) return false;
  }
  return true;
}

const std::string& LiouvExpr::key() const {
  if (!key_cache_) {
    std::string s;
    for (const auto& [k, c] : terms_) {
      s += "[" + c.to_ascii() + ";" + k.exponent.to_ascii();
      for (const auto& [atom, p] : k.atoms) s += ";I{" + atom->key + "}^" + std::to_string(p);
      s += "]";
    }
    key_cache_ = std::make_shared<std::string>(std::move(s));
  }
  return *key_cache_;
}

namespace {

std::string render(const LiouvExpr& e, bool ascii) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : e.terms()) {
    std::vector<std::string> factors;
    bool bare = k.exponent.is_zero() && k.atoms.empty();
    bool negate = c.size() == 1 && sgn(c.leading_coefficient()) < 0;
    DiffPoly cc = negate ? -c : c;
    if (bare || !(cc == DiffPoly(Rational(1)))) {
      std::string coef = ascii ? cc.to_ascii() : cc.to_text();
      factors.push_back(cc.size() > 1 ? "(" + coef + ")" : coef);
    }
    if (!k.exponent.is_zero()) {
      std::string g = ascii ? k.exponent.to_ascii() : k.exponent.to_text();
      factors.push_back(ascii ? "expint(" + g + ")" : "e^{∫(" + g + ")}");
    }
    for (const auto& [atom, p] : k.atoms) {
      std::string f = render(atom->integrand, ascii);
      std::string s = ascii ? "int(" + f + ")" : "∫(" + f + ")";
      if (p != 1) s += "^" + std::to_string(p);
      factors.push_back(s);
    }
    if (first)
      os << (negate ? "-" : "");
    else
      os << (negate ? " - " : " + ");
    first = false;
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? (ascii ? "*" : "·") : "") << factors[i];
  }
  return os.str();
}

}  // namespace

std::string LiouvExpr::to_text() const { return render(*this, false); }
std::string LiouvExpr::to_ascii() const { return render(*this, true); }

LiouvExpr derive_expr(const LiouvExpr& e) {
  LiouvExpr out;
  for (const auto& [k, c] : e.terms()) {
    LiouvExpr unit;
    {
      // the bare key as an expression with coefficient 1
      LiouvExpr one = LiouvExpr(Rational(1));
      if (!k.exponent.is_zero()) one = one * LiouvExpr::exp_integral(k.exponent);
      for (const auto& [atom, p] : k.atoms) {
        LiouvExpr a;
        a = LiouvExpr::integral(atom->integrand);
        for (int t = 0; t < p; ++t) one = one * a;
      }
      unit = one;
    }
    out += unit * derive(c);
    if (!k.exponent.is_zero()) out += unit * (c * k.exponent);
    for (std::size_t i = 0; i < k.atoms.size(); ++i) {
      const auto& [atom, p] = k.atoms[i];
      LiouvExpr rest = LiouvExpr::exp_integral(k.exponent);
      if (k.exponent.is_zero()) rest = LiouvExpr(Rational(1));
      for (std::size_t j = 0; j < k.atoms.size(); ++j) {
        int power = k.atoms[j].second - (j == i ? 1 : 0);
        LiouvExpr a = LiouvExpr::integral(k.atoms[j].first->integrand);
        for (int t = 0; t < power; ++t) rest = rest * a;
      }
      out += rest * atom->integrand * (c * Rational(p));
    }
  }
  return out;
}

LiouvExpr evaluate_at(const DiffPoly& p, const std::map<int, LiouvExpr>& values) {
  std::map<JetVar, LiouvExpr> cache;
  auto value_of = [&](JetVar v) -> LiouvExpr {
    auto it = values.find(v.var);
    if (it == values.end())
      throw Error(ErrorKind::MissingAssignment, "no value for η_" + std::to_string(v.var));
    if (auto c = cache.find(v); c != cache.end()) return c->second;
    LiouvExpr d = it->second;
    int from = 0;
    for (int k = v.order - 1; k >= 1; --k)
      if (auto lower = cache.find(JetVar{v.var, k}); lower != cache.end()) {
        d = lower->second;
        from = k;
        break;
      }
    for (int k = from; k < v.order; ++k) d = derive_expr(d);
    cache.emplace(v, d);
    return d;
  };
  return evaluate<LiouvExpr>(p, value_of);
}

namespace {

struct LiouvHooks {
  const std::map<std::string, LiouvExpr>& bindings;

  LiouvExpr constant(const Rational& c) { return LiouvExpr(c); }
  LiouvExpr variable(int i) { return LiouvExpr(DiffPoly::var(i)); }
  std::optional<LiouvExpr> name(const std::string& id) {
    auto it = bindings.find(id);
    if (it == bindings.end()) return std::nullopt;
    return it->second;
  }
  std::optional<LiouvExpr> call(const std::string& fn, const LiouvExpr& arg) {
    if (fn == "int") return LiouvExpr::integral(arg);
    if (fn == "expint") {
      if (!arg.is_scalar()) throw Error(ErrorKind::ParseError, "expint needs a polynomial argument");
      return LiouvExpr::exp_integral(arg.scalar());
    }
    return std::nullopt;
  }
  LiouvExpr derive(const LiouvExpr& e, int k) {
    LiouvExpr r = e;
    for (int i = 0; i < k; ++i) r = derive_expr(r);
    return r;
  }
  std::optional<Rational> as_constant(const LiouvExpr& e) {
    if (!e.is_scalar() || !e.scalar().is_constant()) return std::nullopt;
    return e.scalar().constant_term();
  }
};

}  // namespace

LiouvExpr parse_liouv(const std::string& text, const std::map<std::string, LiouvExpr>& bindings) {
  LiouvHooks hooks{bindings};
  return detail::ExprParser<LiouvExpr, LiouvHooks>(text, hooks).parse();
}

}  // namespace pv
