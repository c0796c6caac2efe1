#include "pv/chevalley.hpp"

#include <algorithm>

#include "pv/linalg.hpp"

namespace pv {

int Calibration::sign_of(const Root& positive) const {
  auto it = root_signs.find(positive);
  return it == root_signs.end() ? 1 : it->second;
}

int Calibration::cartan_sign(int i) const {
  if (cartan_signs.empty()) return 1;
  return cartan_signs.at(i - 1);
}

namespace {

struct SimpleVectors {
  std::size_t n = 0;
  std::vector<RatMatrix> x, y;  // X_{a_i}, X_{-a_i}
};

RatMatrix E(std::size_t n, std::size_t i, std::size_t j) { return elementary(n, i, j); }

// Simple root vectors of the defining representations.
SimpleVectors defining_rep(RootType type, int l) {
  SimpleVectors sv;
  auto add = [&](RatMatrix x, RatMatrix y) {
    sv.x.push_back(std::move(x));
    sv.y.push_back(std::move(y));
  };
  auto transpose = [](const RatMatrix& m) {
    RatMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
  };
  const std::size_t L = static_cast<std::size_t>(l);
  switch (type) {
    case RootType::A:
      sv.n = L + 1;
      for (std::size_t i = 1; i <= L; ++i) add(E(sv.n, i, i + 1), E(sv.n, i + 1, i));
      break;
    case RootType::B: {
      // basis e_1..e_l, f_1..f_l, e_0 (last); form pairs e_i with f_i, e_0 with itself (weight 2)
      sv.n = 2 * L + 1;
      for (std::size_t i = 1; i < L; ++i) {
        RatMatrix x = E(sv.n, i, i + 1) - E(sv.n, L + i + 1, L + i);
        add(x, transpose(x));
      }
      RatMatrix x = E(sv.n, L, sv.n).scaled(Rational(2)) - E(sv.n, sv.n, 2 * L);
      RatMatrix y = E(sv.n, sv.n, L) - E(sv.n, 2 * L, sv.n).scaled(Rational(2));
      add(x, y);
      break;
    }
    case RootType::C: {
      sv.n = 2 * L;
      for (std::size_t i = 1; i < L; ++i) {
        RatMatrix x = E(sv.n, i, i + 1) - E(sv.n, L + i + 1, L + i);
        add(x, transpose(x));
      }
      add(E(sv.n, L, 2 * L), E(sv.n, 2 * L, L));
      break;
    }
    case RootType::D: {
      sv.n = 2 * L;
      for (std::size_t i = 1; i < L; ++i) {
        RatMatrix x = E(sv.n, i, i + 1) - E(sv.n, L + i + 1, L + i);
        add(x, transpose(x));
      }
      RatMatrix x = E(sv.n, L - 1, 2 * L) - E(sv.n, L, 2 * L - 1);
      add(x, transpose(x));
      break;
    }
    case RootType::G2: {
      // weights of e_1..e_7: 0, -(2a1+a2), a1, a1+a2, 2a1+a2, -a1, -a1-a2
      sv.n = 7;
      add(E(7, 7, 2) + E(7, 1, 6) - E(7, 3, 1).scaled(Rational(2)) - E(7, 5, 4),
          E(7, 2, 7) + E(7, 6, 1).scaled(Rational(2)) - E(7, 1, 3) - E(7, 4, 5));
      add(E(7, 4, 3) - E(7, 6, 7), E(7, 3, 4) - E(7, 7, 6));
      break;
    }
  }
  return sv;
}

bool is_diagonal(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !is_zero(m(i, j))) return false;
  return true;
}

// Returns k with a = k*b, if a is a rational multiple of nonzero b.
std::optional<Rational> ratio(const RatMatrix& a, const RatMatrix& b) {
  std::optional<Rational> k;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(b(i, j))) {
        if (!is_zero(a(i, j))) return std::nullopt;
        continue;
      }
      Rational q = a(i, j) / b(i, j);
      if (!k) k = q;
      else if (*k != q) return std::nullopt;
    }
  return k;
}

struct OverrideEntry {
  RootType type;
  int rank;
  // images of the simple roots under the Weyl element
  std::vector<std::vector<int>> images;
  RatMatrix (*matrix)();
};

RatMatrix sl4_longest() {
  return E(4, 1, 4) - E(4, 2, 3) + E(4, 3, 2) - E(4, 4, 1);
}
RatMatrix g2_w1() {
  return -E(7, 1, 1) + E(7, 7, 2) - E(7, 6, 3) - E(7, 5, 4) + E(7, 4, 5) - E(7, 3, 6) - E(7, 2, 7);
}
RatMatrix g2_w2() {
  return E(7, 1, 1) + E(7, 2, 2) - E(7, 3, 4) + E(7, 4, 3) + E(7, 5, 5) - E(7, 6, 7) + E(7, 7, 6);
}

const std::vector<OverrideEntry>& override_table() {
  static const std::vector<OverrideEntry> table = {
      {RootType::A, 3, {{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}, &sl4_longest},
      {RootType::G2, 2, {{-1, 0}, {3, 1}}, &g2_w1},
      {RootType::G2, 2, {{1, 1}, {0, -1}}, &g2_w2},
  };
  return table;
}

std::optional<RatMatrix> find_override(const RootSystem& rs, const WeylWord& w) {
  std::vector<std::vector<int>> images;
  for (int i = 1; i <= rs.rank(); ++i) images.push_back(apply_word(rs, w, rs.simple(i)).coeffs);
  for (const auto& e : override_table())
    if (e.type == rs.type() && e.rank == rs.rank() && e.images == images) return e.matrix();
  return std::nullopt;
}

// Coroot of g in terms of the simple coroots: g^v = sum k_i |a_i|^2/|g|^2 a_i^v.
std::vector<Rational> coroot_in_simple(const RootSystem& rs, const Root& g) {
  std::vector<Rational> c(rs.rank());
  int gg = rs.inner(g, g);
  for (int i = 1; i <= rs.rank(); ++i) {
    Root a = rs.simple(i);
    c[i - 1] = Rational(g.coeffs[i - 1] * rs.inner(a, a), gg);
    c[i - 1].canonicalize();
  }
  return c;
}

}  // namespace

const RatMatrix& ChevalleyRep::X(const Root& r) const {
  auto it = X_.find(r);
  if (it == X_.end()) throw Error(ErrorKind::NotARoot, r.to_string());
  return it->second;
}

RatMatrix ChevalleyRep::A0_plus(const std::vector<Rational>& s) const {
  RatMatrix a(n_, n_);
  for (int i = 1; i <= rank(); ++i)
    a += Xsimple(i).scaled(s.empty() ? Rational(1) : s.at(i - 1));
  return a;
}

RatMatrix ChevalleyRep::A0_minus(const std::vector<Rational>& s) const {
  RatMatrix a(n_, n_);
  for (int i = 1; i <= rank(); ++i)
    a += Xsimple_neg(i).scaled(s.empty() ? Rational(1) : s.at(i - 1));
  return a;
}

int ChevalleyRep::structure_constant(const Root& a, const Root& b) const {
  Root s = a + b;
  RatMatrix br = bracket(X(a), X(b));
  if (!rs_.is_root(s)) {
    if (!br.is_zero() && !(s.is_zero()))
      throw Error(ErrorKind::UnsupportedRep, "bracket of root vectors outside the root system");
    return 0;
  }
  auto k = ratio(br, X(s));
  if (!k || k->get_den() != 1)
    throw Error(ErrorKind::UnsupportedRep, "non-integral structure constant");
  return static_cast<int>(k->get_num().get_si());
}

int ChevalleyRep::weight(int j, const Root& r) const {
  auto k = ratio(bracket(H(j), X(r)), X(r));
  if (!k || k->get_den() != 1) throw Error(ErrorKind::UnsupportedRep, "H does not act diagonally");
  return static_cast<int>(k->get_num().get_si());
}

std::vector<int> ChevalleyRep::coroot_coeffs(const Root& a) const {
  auto c = decompose(bracket(X(a), X(-a)));
  std::vector<int> out;
  for (const auto& v : c.h) {
    if (v.get_den() != 1) throw Error(ErrorKind::UnsupportedRep, "non-integral coroot");
    out.push_back(static_cast<int>(v.get_num().get_si()));
  }
  return out;
}

RatMatrix ChevalleyRep::weyl_representative(const WeylWord& w) const {
  if (auto o = find_override(rs_, w)) return *o;
  RatMatrix out = RatMatrix::identity(n_);
  for (int i : w) {
    WeylWord single{i};
    if (auto o = find_override(rs_, single)) {
      out = out * *o;
      continue;
    }
    const RatMatrix& x = Xsimple(i);
    const RatMatrix& y = Xsimple_neg(i);
    out = out * exp_nilpotent<Rational>(x, Rational(1)) * exp_nilpotent<Rational>(y, Rational(-1)) *
          exp_nilpotent<Rational>(x, Rational(1));
  }
  return out;
}

std::string ChevalleyRep::check_axioms() const {
  const int l = rank();
  for (int i = 1; i <= l; ++i) {
    if (!is_diagonal(H(i))) return "H_" + std::to_string(i) + " is not diagonal";
    for (std::size_t k = 0; k < n_; ++k)
      if (H(i)(k, k).get_den() != 1) return "H_" + std::to_string(i) + " is not integral";
    for (int j = 1; j <= l; ++j)
      if (!bracket(H(i), H(j)).is_zero()) return "[H_i, H_j] != 0";
  }
  for (const Root& a : rs_.roots()) {
    const RatMatrix& xa = X(a);
    // nilpotent with integral exponential
    RatMatrix term = RatMatrix::identity(n_);
    for (int k = 1; k <= static_cast<int>(n_) + 1; ++k) {
      term = (term * xa).scaled(Rational(1, k));
      for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = 0; q < n_; ++q)
          if (term(p, q).get_den() != 1) return "X^k/k! not integral for " + a.to_string();
      if (term.is_zero()) break;
      if (k == static_cast<int>(n_) + 1) return "X not nilpotent for " + a.to_string();
    }
    for (int i = 1; i <= l; ++i) {
      int expect = cal_.cartan_sign(i) * cartan_integer(rs_, a, rs_.simple(i));
      if (!(bracket(H(i), xa) == xa.scaled(Rational(expect))))
        return "[H_" + std::to_string(i) + ", X_" + a.to_string() + "] has the wrong weight";
    }
    // [X_a, X_-a] = H_a, the coroot, as a combination of the H_i
    RatMatrix ha(n_, n_);
    auto cr = coroot_in_simple(rs_, a.is_positive() ? a : -a);
    for (int i = 1; i <= l; ++i) {
      Rational c = cr[i - 1] * cal_.cartan_sign(i) * (a.is_positive() ? 1 : -1);
      if (c.get_den() != 1) return "coroot of " + a.to_string() + " not integral";
      ha += H(i).scaled(c);
    }
    if (!(bracket(xa, X(-a)) == ha)) return "[X_a, X_-a] != H_a for " + a.to_string();
    for (const Root& b : rs_.roots()) {
      if (b == a || b == -a) continue;
      Root s = a + b;
      RatMatrix br = bracket(xa, X(b));
      if (!rs_.is_root(s)) {
        if (!br.is_zero()) return "[X_a, X_b] != 0 with a+b not a root";
        continue;
      }
      auto k = ratio(br, X(s));
      auto [r, q] = root_string(rs_, b, a);
      if (!k || abs(*k) != r + 1)
        return "|N| != r+1 for " + a.to_string() + ", " + b.to_string();
    }
  }
  return {};
}

std::vector<Root> complementary_roots(const ChevalleyRep& rep) {
  const RootSystem& rs = rep.rs();
  const int m = rs.num_positive();
  const std::size_t n = rep.dim();
  auto flatten_into = [&](RatMatrix& rows, std::size_t r, const RatMatrix& a) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows(r, i * n + j) = a(i, j);
  };
  std::vector<Root> comp;
  int min_height = rs.beta(m).height();
  for (int q = -1; q >= min_height; --q) {
    std::vector<int> level, below;
    for (int i = 1; i <= m; ++i) {
      if (rs.height_of(i) == q) level.push_back(i);
      if (rs.height_of(i) == q - 1) below.push_back(i);
    }
    std::vector<RatMatrix> span;
    for (int k : below) span.push_back(rep.W(k));
    auto rank_of = [&](const std::vector<RatMatrix>& mats) {
      if (mats.empty()) return std::size_t{0};
      RatMatrix rows(mats.size(), n * n);
      for (std::size_t r = 0; r < mats.size(); ++r) flatten_into(rows, r, mats[r]);
      return rank(rows);
    };
    std::size_t cur = rank_of(span);
    for (auto it = level.rbegin(); it != level.rend() && cur < level.size(); ++it) {
      span.push_back(rep.Xneg(*it));
      std::size_t r = rank_of(span);
      if (r > cur) {
        cur = r;
        comp.push_back(rs.beta(*it));
      } else {
        span.pop_back();
      }
    }
    if (cur != level.size())
      throw Error(ErrorKind::SpanFailure, "cannot complete W span at height " + std::to_string(q));
  }
  if (static_cast<int>(comp.size()) != rs.rank())
    throw Error(ErrorKind::SpanFailure, "expected " + std::to_string(rs.rank()) + " complementary roots");
  return comp;
}

ChevalleyRep build_rep(const RootSystem& rs, const Calibration& cal) {
  SimpleVectors sv = defining_rep(rs.type(), rs.rank());
  ChevalleyRep rep;
  rep.rs_ = rs;
  rep.cal_ = cal;
  rep.n_ = sv.n;
  const int l = rs.rank();
  std::vector<RatMatrix> h_simple;
  for (int i = 1; i <= l; ++i) {
    rep.X_[rs.simple(i)] = sv.x[i - 1];
    rep.X_[-rs.simple(i)] = sv.y[i - 1];
    h_simple.push_back(bracket(sv.x[i - 1], sv.y[i - 1]));
    if (!is_diagonal(h_simple.back()))
      throw Error(ErrorKind::NonDiagonalCartan, "[X_a, X_-a] not diagonal");
    rep.H_.push_back(h_simple.back().scaled(Rational(cal.cartan_sign(i))));
  }
  for (const Root& g : rs.positive_roots()) {
    if (g.height() == 1) continue;
    int i = 1;
    while (i <= l && !rs.is_root(g - rs.simple(i))) ++i;
    if (i > l) throw Error(ErrorKind::UnsupportedRep, "no simple decomposition of " + g.to_string());
    Root a = rs.simple(i), b = g - a;
    auto [r, q] = root_string(rs, b, a);
    RatMatrix xg = bracket(rep.X_.at(a), rep.X_.at(b)).scaled(Rational(cal.sign_of(g), r + 1));
    if (xg.is_zero()) throw Error(ErrorKind::UnsupportedRep, "vanishing bracket for " + g.to_string());
    RatMatrix y0 = bracket(rep.X_.at(-a), rep.X_.at(-b));
    RatMatrix hg(sv.n, sv.n);
    auto cr = coroot_in_simple(rs, g);
    for (int k = 1; k <= l; ++k) hg += h_simple[k - 1].scaled(cr[k - 1]);
    auto k = ratio(bracket(xg, y0), hg);
    if (!k || is_zero(*k)) throw Error(ErrorKind::UnsupportedRep, "cannot normalize X_-" + g.to_string());
    rep.X_[g] = xg;
    rep.X_[-g] = y0.scaled(1 / *k);
  }

  // final ordering with complementary roots last in their height block
  std::vector<Root> comp = complementary_roots(rep);
  rep.rs_ = rs.with_complementary(comp);
  rep.longest_ = longest_weyl_word(rep.rs_);

  const int m = rep.m();
  for (int i = 1; i <= l; ++i) rep.basis_.push_back(rep.H(i));
  for (int i = 1; i <= m; ++i) rep.basis_.push_back(rep.Xneg(i));
  for (int i = 1; i <= m; ++i) rep.basis_.push_back(rep.Xpos(i));
  const std::size_t d = rep.basis_.size(), n = sv.n;
  RatMatrix rows(d, n * n);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows(b, i * n + j) = rep.basis_[b](i, j);
  auto ech = row_reduce(rows);
  if (ech.pivot_cols.size() != d) throw Error(ErrorKind::UnsupportedRep, "basis is linearly dependent");
  RatMatrix s(d, d);
  for (std::size_t p = 0; p < d; ++p) {
    std::size_t col = ech.pivot_cols[p];
    rep.pivots_.emplace_back(col / n, col % n);
    for (std::size_t b = 0; b < d; ++b) s(b, p) = rows(b, col);
  }
  rep.pivot_inverse_ = *inverse(s);
  return rep;
}

ChevalleyRep build_rep(const RootSystem& rs) {
  return build_rep(rs, resolve_calibration(rs.type(), rs.rank()));
}

RatMatrix torus_element(const ChevalleyRep& rep, int i, const Rational& z) {
  const RatMatrix& h = rep.H(i);
  if (!is_diagonal(h)) throw Error(ErrorKind::NonDiagonalCartan, "H_" + std::to_string(i));
  if (is_zero(z)) throw Error(ErrorKind::NotClosedFormInvertible, "torus element at zero");
  RatMatrix t(rep.dim(), rep.dim());
  for (std::size_t k = 0; k < rep.dim(); ++k) {
    long e = h(k, k).get_num().get_si();
    Rational base = e >= 0 ? z : 1 / z;
    Rational v = 1;
    for (long p = 0; p < std::labs(e); ++p) v *= base;
    t(k, k) = v;
  }
  return t;
}

}  // namespace pv
