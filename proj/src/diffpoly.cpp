#include "pv/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace pv {

Monomial::Monomial(std::vector<std::pair<JetVar, int>> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  // merge repeated jets, drop zero exponents
  std::vector<std::pair<JetVar, int>> merged;
  for (const auto& f : factors_) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(f);
  }
  std::erase_if(merged, [](const auto& f) { return f.second == 0; });
  factors_ = std::move(merged);
  for (const auto& f : factors_) degree_ += f.second;
}

int Monomial::order() const {
  int o = 0;
  for (const auto& f : factors_) o = std::max(o, f.first.order);
  return o;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto& out = r.factors_;
  out.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first < b->first) {
      out.push_back(*a++);
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, factors_.end());
  out.insert(out.end(), b, o.factors_.end());
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.rbegin(), ib = fb.rbegin();
  for (; ia != fa.rend() && ib != fb.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ib->first < ia->first;
    if (ia->second != ib->second) return ia->second > ib->second;
  }
  return ia != fa.rend() && ib == fb.rend();
}

DiffPoly::DiffPoly(const Rational& c) {
  if (!pv::is_zero(c)) terms_.emplace(Monomial(), c);
}

DiffPoly DiffPoly::jet(JetVar v) {
  DiffPoly p;
  p.terms_.emplace(Monomial::of(v), Rational(1));
  return p;
}

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
  if (pv::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (pv::is_zero(it->second)) terms_.erase(it);
  }
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational DiffPoly::constant_term() const { return coefficient(Monomial()); }

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) { return *this = *this * o; }

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (pv::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, k] : terms_) k *= c;
  return *this;
}

DiffPoly operator-(DiffPoly a) {
  for (auto& [m, k] : a.terms_) k = -k;
  return a;
}

DiffPoly DiffPoly::pow(int e) const {
  DiffPoly r(Rational(1)), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool DiffPoly::operator<(const DiffPoly& o) const {
  MonomialOrder before;
  auto a = terms_.begin(), b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (!(a->first == b->first)) return before(a->first, b->first);
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

int DiffPoly::order() const {
  int o = 0;
  for (const auto& [m, c] : terms_) o = std::max(o, m.order());
  return o;
}

int DiffPoly::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

int DiffPoly::min_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

DiffPoly DiffPoly::homogeneous_component(int d) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

DiffPoly DiffPoly::linear_part() const { return homogeneous_component(1); }

DiffPoly DiffPoly::nonlinear_part() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_)
    if (m.degree() != 1) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

std::set<int> DiffPoly::variables() const {
  std::set<int> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) s.insert(f.first.var);
  return s;
}

std::set<JetVar> DiffPoly::jets() const {
  std::set<JetVar> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) s.insert(f.first);
  return s;
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational DiffPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::string jet_to_text(JetVar v) {
  std::string s = "η_" + std::to_string(v.var);
  if (v.order <= 3)
    s += std::string(v.order, '\'');
  else
    s += "^(" + std::to_string(v.order) + ")";
  return s;
}

namespace {

std::string render(const DiffPoly& p, bool ascii) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool unit = a == 1;
    bool integral = a.get_den() == 1;
    std::vector<std::string> parts;
    if (!unit || m.is_unit()) {
      std::string num = integral ? a.get_num().get_str() : a.get_str();
      if (!ascii && !integral && !m.is_unit()) num = "(" + num + ")";
      parts.push_back(num);
    }
    // largest jet first, matching the serialized factor order
    for (auto it = m.factors().rbegin(); it != m.factors().rend(); ++it) {
      std::string base;
      if (ascii) {
        base = "e" + std::to_string(it->first.var);
        if (it->first.order <= 3)
          base += std::string(it->first.order, '\'');
        else
          base += "[" + std::to_string(it->first.order) + "]";
      } else {
        base = jet_to_text(it->first);
      }
      if (it->second != 1) base += "^" + std::to_string(it->second);
      parts.push_back(base);
    }
    for (std::size_t k = 0; k < parts.size(); ++k) os << (k && ascii ? "*" : "") << parts[k];
  }
  return os.str();
}

}  // namespace

std::string DiffPoly::to_text() const { return render(*this, false); }
std::string DiffPoly::to_ascii() const { return render(*this, true); }

DiffPoly derive(const DiffPoly& p, int times) {
  DiffPoly cur = p;
  for (int t = 0; t < times; ++t) {
    DiffPoly out;
    for (const auto& [m, c] : cur.terms()) {
      const auto& fs = m.factors();
      for (std::size_t k = 0; k < fs.size(); ++k) {
        std::vector<std::pair<JetVar, int>> nf = fs;
        JetVar v = nf[k].first;
        int e = nf[k].second;
        if (e == 1)
          nf.erase(nf.begin() + static_cast<long>(k));
        else
          nf[k].second = e - 1;
        nf.emplace_back(JetVar{v.var, v.order + 1}, 1);
        out += DiffPoly::term(Monomial(std::move(nf)), c * e);
      }
    }
    cur = std::move(out);
  }
  return cur;
}

namespace {

DiffPoly substitute_impl(const DiffPoly& p, const std::map<int, DiffPoly>& sigma, bool strict) {
  std::map<JetVar, DiffPoly> cache;
  auto value_of = [&](JetVar v) -> DiffPoly {
    auto it = sigma.find(v.var);
    if (it == sigma.end()) {
      if (strict)
        throw Error(ErrorKind::MissingAssignment, "no value for η_" + std::to_string(v.var));
      return DiffPoly::jet(v);
    }
    auto c = cache.find(v);
    if (c != cache.end()) return c->second;
    // derive incrementally from the highest cached lower order
    DiffPoly base = it->second;
    int from = 0;
    for (int k = v.order - 1; k >= 1; --k) {
      auto lower = cache.find(JetVar{v.var, k});
      if (lower != cache.end()) {
        base = lower->second;
        from = k;
        break;
      }
    }
    DiffPoly d = derive(base, v.order - from);
    cache.emplace(v, d);
    return d;
  };
  return evaluate<DiffPoly>(p, value_of);
}

}  // namespace

DiffPoly substitute(const DiffPoly& p, const std::map<int, DiffPoly>& sigma) {
  return substitute_impl(p, sigma, true);
}

DiffPoly substitute_partial(const DiffPoly& p, const std::map<int, DiffPoly>& sigma) {
  return substitute_impl(p, sigma, false);
}

}  // namespace pv
