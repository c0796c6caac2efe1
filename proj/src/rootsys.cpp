#include "pv/rootsys.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pv {

std::string type_label(RootType t) {
  switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::G2: return "G2";
  }
  return "?";
}

RootType parse_type_label(const std::string& s) {
  if (s == "A") return RootType::A;
  if (s == "B") return RootType::B;
  if (s == "C") return RootType::C;
  if (s == "D") return RootType::D;
  if (s == "G2" || s == "G") return RootType::G2;
  throw Error(ErrorKind::UnsupportedType, "unknown root system type '" + s + "'");
}

int Root::height() const {
  int h = 0;
  for (int c : coeffs) h += c;
  return h;
}
bool Root::is_positive() const {
  return !is_zero() && std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}
bool Root::is_negative() const {
  return !is_zero() && std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c <= 0; });
}
bool Root::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}
Root Root::operator-() const { return scaled(-1); }
Root Root::scaled(int k) const {
  Root r = *this;
  for (int& c : r.coeffs) c *= k;
  return r;
}
Root Root::operator+(const Root& o) const {
  Root r = *this;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += o.coeffs.at(i);
  return r;
}
Root Root::operator-(const Root& o) const { return *this + (-o); }
std::string Root::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  os << ']';
  return os.str();
}

namespace {

// Gram matrix of the simple roots, short roots of squared length 2.
std::vector<std::vector<int>> gram_matrix(RootType type, int l) {
  std::vector<std::vector<int>> g(l, std::vector<int>(l, 0));
  auto link = [&](int i, int j, int v) { g[i][j] = g[j][i] = v; };
  switch (type) {
    case RootType::A:
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1, -1);
      break;
    case RootType::B:
      for (int i = 0; i < l; ++i) g[i][i] = (i == l - 1) ? 2 : 4;
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1, -2);
      break;
    case RootType::C:
      for (int i = 0; i < l; ++i) g[i][i] = (i == l - 1) ? 4 : 2;
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1, -1);
      link(l - 2, l - 1, -2);
      break;
    case RootType::D:
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1, -1);
      link(l - 3, l - 1, -1);
      break;
    case RootType::G2:
      g[0][0] = 2;
      g[1][1] = 6;
      link(0, 1, -3);
      break;
  }
  return g;
}

void check_admissible(RootType type, int l) {
  bool ok = false;
  switch (type) {
    case RootType::A: ok = l >= 1; break;
    case RootType::B:
    case RootType::C: ok = l >= 2; break;
    case RootType::D: ok = l >= 3; break;
    case RootType::G2: ok = l == 2; break;
  }
  if (!ok)
    throw Error(ErrorKind::UnsupportedType,
                "rank " + std::to_string(l) + " is not admissible for type " + type_label(type));
}

}  // namespace

int RootSystem::inner(const Root& a, const Root& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += a.coeffs[i] * gram_[i][j] * b.coeffs[j];
  return s;
}

Root RootSystem::simple(int i) const {
  Root r{std::vector<int>(rank_, 0)};
  r.coeffs.at(i - 1) = 1;
  return r;
}

bool RootSystem::is_root(const Root& r) const {
  return static_cast<int>(r.coeffs.size()) == rank_ &&
         std::binary_search(roots_.begin(), roots_.end(), r);
}

bool RootSystem::is_complementary(int i) const {
  return std::find(comp_.begin(), comp_.end(), i) != comp_.end();
}

int RootSystem::index_of_negative(const Root& r) const {
  for (std::size_t k = 0; k < neg_order_.size(); ++k)
    if (neg_order_[k] == r) return static_cast<int>(k) + 1;
  throw Error(ErrorKind::NotARoot, r.to_string() + " is not a negative root");
}

RootSystem RootSystem::with_complementary(const std::vector<Root>& comp) const {
  RootSystem out = *this;
  out.neg_order_ = order_negative_roots(*this, comp);
  out.comp_.clear();
  for (const Root& c : comp) out.comp_.push_back(out.index_of_negative(c));
  std::sort(out.comp_.begin(), out.comp_.end());
  return out;
}

RootSystem build_root_system(RootType type, int l) {
  check_admissible(type, l);
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = l;
  rs.gram_ = gram_matrix(type, l);
  rs.cartan_.assign(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) rs.cartan_[i][j] = 2 * rs.gram_[i][j] / rs.gram_[j][j];

  // Grow positive roots height by height: beta + alpha_i is a root iff the
  // alpha_i-string through beta extends upward (q = r - <beta, alpha_i> > 0).
  std::set<Root> pos;
  std::vector<Root> layer;
  for (int i = 1; i <= l; ++i) layer.push_back(rs.simple(i));
  pos.insert(layer.begin(), layer.end());
  while (!layer.empty()) {
    std::set<Root> next;
    for (const Root& b : layer)
      for (int i = 1; i <= l; ++i) {
        Root a = rs.simple(i);
        if (b == a) continue;
        int r = 0;
        while (pos.count(b - a.scaled(r + 1))) ++r;
        int q = r - 2 * rs.inner(b, a) / rs.inner(a, a);
        if (q > 0) next.insert(b + a);
      }
    layer.assign(next.begin(), next.end());
    pos.insert(next.begin(), next.end());
  }
  rs.positive_.assign(pos.begin(), pos.end());
  std::stable_sort(rs.positive_.begin(), rs.positive_.end(),
                   [](const Root& a, const Root& b) { return a.height() < b.height(); });
  for (const Root& p : pos) {
    rs.roots_.push_back(p);
    rs.roots_.push_back(-p);
  }
  std::sort(rs.roots_.begin(), rs.roots_.end());
  rs.neg_order_ = order_negative_roots(rs, {});
  return rs;
}

std::vector<Root> order_negative_roots(const RootSystem& rs, const std::vector<Root>& comp) {
  std::vector<Root> neg;
  for (const Root& p : rs.positive_roots()) neg.push_back(-p);
  auto is_comp = [&](const Root& r) { return std::find(comp.begin(), comp.end(), r) != comp.end(); };
  std::sort(neg.begin(), neg.end(), [&](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() > b.height();
    bool ca = is_comp(a), cb = is_comp(b);
    if (ca != cb) return cb;
    return a < b;
  });
  return neg;
}

int cartan_integer(const RootSystem& rs, const Root& beta, const Root& alpha) {
  if (!rs.is_root(beta)) throw Error(ErrorKind::NotARoot, beta.to_string());
  if (!rs.is_root(alpha)) throw Error(ErrorKind::NotARoot, alpha.to_string());
  return 2 * rs.inner(beta, alpha) / rs.inner(alpha, alpha);
}

std::pair<int, int> root_string(const RootSystem& rs, const Root& alpha, const Root& beta) {
  if (!rs.is_root(alpha)) throw Error(ErrorKind::NotARoot, alpha.to_string());
  if (!rs.is_root(beta)) throw Error(ErrorKind::NotARoot, beta.to_string());
  if (alpha == beta || alpha == -beta)
    throw Error(ErrorKind::DependentRoots, alpha.to_string() + " and " + beta.to_string());
  int r = 0, q = 0;
  while (rs.is_root(alpha - beta.scaled(r + 1))) ++r;
  while (rs.is_root(alpha + beta.scaled(q + 1))) ++q;
  return {r, q};
}

Root reflect(const RootSystem& rs, const Root& alpha, const Root& beta) {
  int k = 2 * rs.inner(beta, alpha) / rs.inner(alpha, alpha);
  return beta - alpha.scaled(k);
}

Root apply_word(const RootSystem& rs, const WeylWord& w, const Root& beta) {
  Root r = beta;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = reflect(rs, rs.simple(*it), r);
  return r;
}

WeylWord longest_weyl_word(const RootSystem& rs) {
  // Extend w by s_i whenever w(alpha_i) is still positive, preferring the
  // largest index; each step adds one inversion, so this stops after m steps.
  WeylWord w;
  for (;;) {
    int pick = 0;
    for (int i = rs.rank(); i >= 1; --i)
      if (apply_word(rs, w, rs.simple(i)).is_positive()) {
        pick = i;
        break;
      }
    if (!pick) break;
    w.push_back(pick);
  }
  return w;
}

}  // namespace pv
