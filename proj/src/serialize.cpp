#include "pv/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "pv/linalg.hpp"

namespace pv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational");
}

template <class T, class F>
Json matrix_json(const Matrix<T>& m, F entry) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class T, class F>
Matrix<T> matrix_from(const Json& j, F entry) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const std::size_t n = j.size(), c = j[0].is_array() ? j[0].size() : 0;
  Matrix<T> m(n, c);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != c) bad("ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(r, k) = entry(j[r][k]);
  }
  return m;
}

Json poly_list(const std::vector<DiffPoly>& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(to_json(p));
  return a;
}

Json liouv_list(const std::vector<LiouvExpr>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(to_json(e));
  return a;
}

}  // namespace

Json to_json(const DiffPoly& p) {
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json m = Json::array();
    const auto& f = mono.factors();
    for (auto it = f.rbegin(); it != f.rend(); ++it) m.push_back({it->first.var, it->first.order, it->second});
    Json t;
    t["c"] = to_pq(c);
    t["m"] = m;
    terms.push_back(t);
  }
  Json out;
  out["terms"] = terms;
  return out;
}

DiffPoly diffpoly_from_json(const Json& j) {
  if (j.is_string()) return parse_diffpoly(j.get<std::string>());
  if (j.is_number_integer()) return DiffPoly(Rational(j.get<long>()));
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) bad("expected a polynomial object");
  DiffPoly p;
  for (const auto& t : j["terms"]) {
    if (!t.contains("c") || !t.contains("m")) bad("polynomial term needs c and m");
    std::vector<std::pair<JetVar, int>> factors;
    for (const auto& f : t["m"]) {
      if (!f.is_array() || f.size() != 3) bad("monomial factor must be [var, order, exp]");
      int var = f[0].get<int>(), order = f[1].get<int>(), e = f[2].get<int>();
      if (var < 1 || order < 0 || e < 1) bad("invalid monomial factor");
      factors.push_back({JetVar{var, order}, e});
    }
    std::sort(factors.begin(), factors.end());
    p += DiffPoly::term(Monomial(factors), rational_from_json(t["c"]));
  }
  return p;
}

Json to_json(const LiouvExpr& e) {
  Json out = Json::array({"sum"});
  for (const auto& [k, c] : e.terms()) {
    Json term = Json::array({"term", to_json(c)});
    if (!k.exponent.is_zero()) term.push_back(Json::array({"expint", to_json(k.exponent)}));
    for (const auto& [atom, p] : k.atoms) term.push_back(Json::array({"int", to_json(atom->integrand), p}));
    out.push_back(term);
  }
  return out;
}

LiouvExpr liouv_from_json(const Json& j) {
  if (j.is_string()) return parse_liouv(j.get<std::string>());
  if (!j.is_array() || j.empty() || j[0] != "sum") bad("expected [\"sum\", ...]");
  LiouvExpr out;
  for (std::size_t t = 1; t < j.size(); ++t) {
    const Json& term = j[t];
    if (!term.is_array() || term.size() < 2 || term[0] != "term") bad("expected [\"term\", ...]");
    LiouvExpr v(diffpoly_from_json(term[1]));
    for (std::size_t f = 2; f < term.size(); ++f) {
      const Json& x = term[f];
      if (!x.is_array() || x.empty()) bad("bad factor");
      if (x[0] == "expint" && x.size() == 2) {
        v = v * LiouvExpr::exp_integral(diffpoly_from_json(x[1]));
      } else if (x[0] == "int" && x.size() == 3) {
        LiouvExpr a = LiouvExpr::integral(liouv_from_json(x[1]));
        for (int p = 0; p < x[2].get<int>(); ++p) v = v * a;
      } else {
        bad("unknown factor kind");
      }
    }
    out += v;
  }
  return out;
}

Json to_json(const RatMatrix& m) {
  return matrix_json(m, [](const Rational& r) { return Json(to_pq(r)); });
}
Json to_json(const Matrix<DiffPoly>& m) {
  return matrix_json(m, [](const DiffPoly& p) { return to_json(p); });
}
Json to_json(const Matrix<LiouvExpr>& m) {
  return matrix_json(m, [](const LiouvExpr& e) { return to_json(e); });
}

RatMatrix rat_matrix_from_json(const Json& j) { return matrix_from<Rational>(j, rational_from_json); }
Matrix<DiffPoly> poly_matrix_from_json(const Json& j) { return matrix_from<DiffPoly>(j, diffpoly_from_json); }

Json to_json(const RootSystem& rs) {
  Json out;
  out["type"] = type_label(rs.type());
  out["rank"] = rs.rank();
  Json neg = Json::array();
  for (const auto& r : rs.neg_order()) neg.push_back(r.coeffs);
  out["neg_order"] = neg;
  std::vector<int> comp = rs.comp_roots();
  std::sort(comp.begin(), comp.end());
  out["comp"] = comp;
  return out;
}

Json to_json(const BruhatForm& b) {
  Json out;
  out["w"] = b.perm;
  out["uprime"] = to_json(b.uprime);
  Json t = Json::array();
  for (std::size_t i = 0; i < b.t.rows(); ++i) t.push_back(to_pq(b.t(i, i)));
  out["t"] = t;
  out["u"] = to_json(b.u);
  out["convention"] = b.convention == Convention::Negative ? "negative" : "positive";
  out["word"] = b.word;
  out["n_w"] = to_json(b.nw);
  auto list = [](const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(to_pq(r));
    return a;
  };
  out["x"] = list(b.x);
  out["z"] = list(b.z);
  out["y"] = list(b.y);
  return out;
}

Json to_json(const GaugeResult& g) {
  Json out;
  out["torus"] = to_json(g.torus);
  out["u"] = to_json(g.u);
  Json f;
  for (std::size_t k = 0; k < g.indices.size(); ++k) f[std::to_string(g.indices[k])] = to_json(g.f[k]);
  out["f"] = f;
  out["A_G"] = to_json(g.A_G);
  return out;
}

Json pipeline_report(const Pipeline& p) {
  const ChevalleyRep& rep = p.rep;
  Json out;
  out["type"] = type_label(rep.rs().type());
  out["rank"] = rep.rank();
  out["root_system"] = to_json(rep.rs());
  Json s1;
  Json v;
  for (int i = rep.rank() + 1; i <= rep.m(); ++i) v[std::to_string(i)] = to_json(p.stage1.v[i - 1]);
  s1["v"] = v.is_null() ? Json::object() : v;
  out["stage1"] = s1;
  Json s2;
  s2["g"] = poly_list(p.stage2.g);
  s2["ell"] = poly_list(p.stage2.ell);
  s2["p"] = poly_list(p.stage2.p);
  out["stage2"] = s2;
  Json c = Json::array();
  for (const auto& x : p.liouville.c) c.push_back(to_pq(x));
  out["c"] = c;
  out["gbar"] = poly_list(p.liouville.gbar);
  out["A_L"] = to_json(p.liouville.A_L);
  out["z"] = liouv_list(p.liouville.z);
  out["y"] = liouv_list(p.liouville.y);
  out["h_raw"] = poly_list(p.raw.h);
  Json f = Json::object();
  for (const auto& [k, poly] : p.elim.f) f[std::to_string(k)] = to_json(poly);
  out["f"] = f;
  Json inv;
  inv["indices"] = p.inv.indices;
  inv["h"] = poly_list(p.inv.h);
  inv["lhat"] = poly_list(p.inv.lhat);
  inv["phat"] = poly_list(p.inv.phat);
  out["invariants"] = inv;
  out["A_G"] = to_json(p.A_G);
  out["checks"] = p.checks;
  return out;
}

std::string pipeline_text(const Pipeline& p) {
  const ChevalleyRep& rep = p.rep;
  std::ostringstream os;
  os << "type " << type_label(rep.rs().type()) << rep.rank() << ", m = " << rep.m() << "\n";
  os << "negative roots:";
  for (int i = 1; i <= rep.m(); ++i) os << " b" << i << "=" << rep.rs().beta(i).to_string();
  os << "\ncomplementary:";
  for (int j : p.inv.indices) os << " " << j;
  os << "\n\n[stage 1]\n";
  for (int i = rep.rank() + 1; i <= rep.m(); ++i) os << "v_" << i << " = " << p.stage1.v[i - 1].to_text() << "\n";
  os << "\n[stage 2]\n";
  for (int i = 1; i <= rep.rank(); ++i) os << "g_" << i << " = " << p.stage2.g[i - 1].to_text() << "\n";
  for (int i = 1; i <= rep.m(); ++i)
    os << "ell_" << i << " = " << p.stage2.ell[i - 1].to_text() << "    p_" << i << " = "
       << p.stage2.p[i - 1].to_text() << "\n";
  os << "\n[liouville]\n";
  for (int i = 1; i <= rep.rank(); ++i)
    os << "c_" << i << " = " << p.liouville.c[i - 1].get_str() << "    gbar_" << i << " = "
       << p.liouville.gbar[i - 1].to_text() << "    z_" << i << " = " << p.liouville.z[i - 1].to_text() << "\n";
  for (int i = 1; i <= rep.m(); ++i) os << "y_" << i << " = " << p.liouville.y[i - 1].to_text() << "\n";
  os << "\n[coefficients of ld(Y)]\n";
  for (int i = 1; i <= rep.m(); ++i) os << "h_" << i << "(eta_m) = " << p.raw.h[i - 1].to_text() << "\n";
  os << "\n[elimination]\n";
  for (const auto& [k, f] : p.elim.f) os << "eta_" << k << " = " << f.to_text() << "\n";
  os << "\n[invariants]\n";
  for (std::size_t k = 0; k < p.inv.indices.size(); ++k)
    os << "h_" << p.inv.indices[k] << "(eta) = " << p.inv.h[k].to_text() << "\n";
  os << "\nchecks passed: " << p.checks.size() << "\n";
  return os.str();
}

}  // namespace pv
