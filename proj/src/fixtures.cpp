#include "pv/fixtures.hpp"

#include <algorithm>

namespace pv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string poly_term_text(const Json& term) {
  Json one;
  one["terms"] = Json::array({term});
  return diffpoly_from_json(one).to_text();
}

std::string liouv_term_text(const Json& term) {
  return liouv_from_json(Json::array({"sum", term})).to_text();
}

template <class Render>
std::string first_diff(const Json& expected, const Json& actual, std::size_t skip, Render render) {
  const std::size_t n = std::max(expected.size(), actual.size());
  for (std::size_t i = skip; i < n; ++i) {
    const bool has_e = i < expected.size(), has_a = i < actual.size();
    if (has_e && has_a && expected[i] == actual[i]) continue;
    std::string e = has_e ? "'" + render(expected[i]) + "'" : "nothing";
    std::string a = has_a ? "'" + render(actual[i]) + "'" : "nothing";
    return "first differing term (position " + std::to_string(i - skip + 1) + "): expected " + e + ", got " + a;
  }
  return {};
}

// Rewrites eta indices inside any serialized polynomial, however deeply nested.
void relabel_json(Json& j, const std::map<int, int>& relabel) {
  if (j.is_object() && j.contains("terms")) {
    for (auto& t : j["terms"])
      for (auto& f : t["m"]) {
        auto it = relabel.find(f[0].get<int>());
        if (it != relabel.end()) f[0] = it->second;
      }
    return;
  }
  if (j.is_array() || j.is_object())
    for (auto& x : j) relabel_json(x, relabel);
}

struct Context {
  std::map<int, int> relabel;
  std::map<std::string, DiffPoly> polys;
  std::map<std::string, LiouvExpr> exprs;

  int index(int printed) const {
    auto it = relabel.find(printed);
    return it == relabel.end() ? printed : it->second;
  }
  DiffPoly poly(const std::string& text) const { return parse_diffpoly(text, polys); }
  LiouvExpr expr(const std::string& text) const { return parse_liouv(text, exprs); }
  DiffPoly ours(const DiffPoly& p) const {
    if (relabel.empty()) return p;
    Json j = to_json(p);
    relabel_json(j, relabel);
    return diffpoly_from_json(j);
  }
  LiouvExpr ours(const LiouvExpr& e) const {
    if (relabel.empty()) return e;
    Json j = to_json(e);
    relabel_json(j, relabel);
    return liouv_from_json(j);
  }
};

const DiffPoly& at(const std::vector<DiffPoly>& v, int i, const std::string& kind) {
  if (i < 1 || i > static_cast<int>(v.size())) bad(kind + ": index " + std::to_string(i) + " out of range");
  return v[i - 1];
}

const DiffPoly& at(const std::map<int, DiffPoly>& m, int i, const std::string& kind) {
  auto it = m.find(i);
  if (it == m.end()) bad(kind + ": no value for index " + std::to_string(i));
  return it->second;
}

const DiffPoly& at_complementary(const Pipeline& p, const std::vector<DiffPoly>& v, int j,
                                 const std::string& kind) {
  const auto& idx = p.inv.indices;
  auto it = std::find(idx.begin(), idx.end(), j);
  if (it == idx.end()) bad(kind + ": " + std::to_string(j) + " is not a complementary index");
  return v[static_cast<std::size_t>(it - idx.begin())];
}

// Key-by-key comparison of two reports; returns the first differing path.
std::string first_json_diff(const Json& e, const Json& a, const std::string& path) {
  if (e.type() != a.type() && !(e.is_number() && a.is_number())) return path + ": type differs";
  if (e.is_object()) {
    for (auto it = e.begin(); it != e.end(); ++it) {
      if (!a.contains(it.key())) return path + "/" + it.key() + ": missing in derived report";
      auto d = first_json_diff(it.value(), a[it.key()], path + "/" + it.key());
      if (!d.empty()) return d;
    }
    for (auto it = a.begin(); it != a.end(); ++it)
      if (!e.contains(it.key())) return path + "/" + it.key() + ": missing in fixture";
    return {};
  }
  if (e.is_array()) {
    if (e.size() != a.size()) return path + ": length " + std::to_string(e.size()) + " vs " + std::to_string(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto d = first_json_diff(e[i], a[i], path + "/" + std::to_string(i));
      if (!d.empty()) return d;
    }
    return {};
  }
  if (e != a) return path + ": expected " + e.dump() + ", got " + a.dump();
  return {};
}

std::vector<int> int_list(const Json& j, const Context& ctx) {
  std::vector<int> out;
  for (const auto& x : j) out.push_back(ctx.index(x.get<int>()));
  return out;
}

}  // namespace

std::string first_differing_term(const DiffPoly& expected, const DiffPoly& actual) {
  return first_diff(to_json(expected)["terms"], to_json(actual)["terms"], 0, poly_term_text);
}

std::string first_differing_term(const LiouvExpr& expected, const LiouvExpr& actual) {
  return first_diff(to_json(expected), to_json(actual), 1, liouv_term_text);
}

const Pipeline& FixtureVerifier::pipeline(RootType type, int rank) {
  auto key = std::make_pair(type, rank);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, run_pipeline(build_rep(build_root_system(type, rank)))).first;
  return it->second;
}

FixtureOutcome FixtureVerifier::verify(const Json& fx, const std::string& label) {
  FixtureOutcome out;
  out.label = label;
  if (!fx.is_object() || !fx.contains("type") || !fx.contains("rank")) bad(label + ": fixture needs type and rank");
  const RootType type = parse_type_label(fx["type"].get<std::string>());
  const int rank = fx["rank"].get<int>();
  const Pipeline& p = pipeline(type, rank);

  if (fx.contains("stage1")) {
    Json derived = pipeline_report(p);
    out.compared = static_cast<int>(fx.size());
    auto d = first_json_diff(fx, derived, "");
    if (!d.empty()) out.mismatches.push_back(label + ": report differs at " + d);
    return out;
  }

  Context ctx;
  if (fx.contains("relabel"))
    for (auto it = fx["relabel"].begin(); it != fx["relabel"].end(); ++it)
      ctx.relabel[std::stoi(it.key())] = it.value().get<int>();
  if (fx.contains("bindings"))
    for (const auto& b : fx["bindings"]) {
      const std::string name = b.at("name").get<std::string>();
      if (b.value("ring", "poly") == "liouv") {
        ctx.exprs[name] = ctx.expr(b.at("expr").get<std::string>());
      } else {
        DiffPoly v = ctx.poly(b.at("expr").get<std::string>());
        ctx.polys[name] = v;
        ctx.exprs[name] = LiouvExpr(v);
      }
    }
  if (!fx.contains("entries") || !fx["entries"].is_array()) bad(label + ": fixture has no entries");

  const ChevalleyRep& rep = p.rep;
  for (const auto& e : fx["entries"]) {
    const std::string kind = e.at("kind").get<std::string>();
    const int printed = e.value("index", 0);
    const int i = ctx.index(printed);
    const std::string name = kind + (e.contains("index") ? "[" + std::to_string(printed) + "]" : "");
    ++out.compared;
    auto fail = [&](const std::string& detail) { out.mismatches.push_back(label + ": " + name + ": " + detail); };
    auto check_poly = [&](const DiffPoly& actual) {
      DiffPoly printed_value = ctx.poly(e.at("expect").get<std::string>());
      if (e.contains("bind")) {
        ctx.polys[e["bind"].get<std::string>()] = printed_value;
        ctx.exprs[e["bind"].get<std::string>()] = LiouvExpr(printed_value);
      }
      DiffPoly expected = ctx.ours(printed_value);
      if (to_json(expected).dump() != to_json(actual).dump()) fail(first_differing_term(expected, actual));
    };
    auto check_liouv = [&](const LiouvExpr& actual) {
      LiouvExpr printed_value = ctx.expr(e.at("expect").get<std::string>());
      if (e.contains("bind")) ctx.exprs[e["bind"].get<std::string>()] = printed_value;
      LiouvExpr expected = ctx.ours(printed_value);
      if (to_json(expected).dump() != to_json(actual).dump()) fail(first_differing_term(expected, actual));
    };
    auto check_list = [&](const std::vector<int>& expected, const std::vector<int>& actual) {
      if (expected != actual) fail("expected " + Json(expected).dump() + ", got " + Json(actual).dump());
    };

    if (kind == "v") check_poly(at(p.stage1.v, i, kind));
    else if (kind == "g") check_poly(at(p.stage2.g, i, kind));
    else if (kind == "ell") check_poly(at(p.stage2.ell, i, kind));
    else if (kind == "p") check_poly(at(p.stage2.p, i, kind));
    else if (kind == "gbar") check_poly(at(p.liouville.gbar, i, kind));
    else if (kind == "h_raw") check_poly(at(p.raw.h, i, kind));
    else if (kind == "q") check_poly(at(p.raw.q, i, kind));
    else if (kind == "f") check_poly(at(p.elim.f, i, kind));
    else if (kind == "pbar") check_poly(at(p.elim.p_bar, i, kind));
    else if (kind == "ellbar") check_poly(at(p.elim.ell_bar, i, kind));
    else if (kind == "inv") check_poly(at_complementary(p, p.inv.h, i, kind));
    else if (kind == "lhat") check_poly(at_complementary(p, p.inv.lhat, i, kind));
    else if (kind == "phat") check_poly(at_complementary(p, p.inv.phat, i, kind));
    else if (kind == "z") {
      if (i < 1 || i > rep.rank()) bad(name + ": index out of range");
      check_liouv(p.liouville.z[i - 1]);
    } else if (kind == "y") {
      if (i < 1 || i > rep.m()) bad(name + ": index out of range");
      check_liouv(p.liouville.y[i - 1]);
    } else if (kind == "c") {
      if (i < 1 || i > rep.rank()) bad(name + ": index out of range");
      Rational expected = parse_rational(e.at("expect").get<std::string>());
      if (expected != p.liouville.c[i - 1])
        fail("expected " + expected.get_str() + ", got " + p.liouville.c[i - 1].get_str());
    } else if (kind == "A_L") {
      // sum gbar_i H_i + A0^-(c), with c and gbar given per simple index
      const Json& x = e.at("expect");
      std::vector<Rational> c;
      for (const auto& s : x.at("c")) c.push_back(parse_rational(s.get<std::string>()));
      Matrix<DiffPoly> expected = lift<DiffPoly>(rep.A0_minus(c));
      int k = 1;
      for (const auto& s : x.at("gbar")) {
        DiffPoly g = ctx.ours(ctx.poly(s.get<std::string>()));
        expected += lift<DiffPoly>(rep.H(k++)).scaled(g);
      }
      if (to_json(expected).dump() != to_json(p.liouville.A_L).dump()) {
        std::string where;
        for (std::size_t r = 0; r < expected.rows() && where.empty(); ++r)
          for (std::size_t s = 0; s < expected.cols() && where.empty(); ++s)
            if (!(expected(r, s) == p.liouville.A_L(r, s)))
              where = "entry (" + std::to_string(r + 1) + "," + std::to_string(s + 1) + "): " +
                      first_differing_term(expected(r, s), p.liouville.A_L(r, s));
        fail(where);
      }
    } else if (kind == "n_bar") {
      RatMatrix expected = rat_matrix_from_json(e.at("expect"));
      if (to_json(expected).dump() != to_json(rep.n_bar()).dump())
        fail("expected " + to_json(expected).dump() + ", got " + to_json(rep.n_bar()).dump());
    } else if (kind == "comp") {
      std::vector<int> actual = rep.rs().comp_roots();
      std::sort(actual.begin(), actual.end());
      std::vector<int> expected = int_list(e.at("expect"), ctx);
      std::sort(expected.begin(), expected.end());
      check_list(expected, actual);
    } else if (kind == "solve_order") {
      check_list(int_list(e.at("expect"), ctx), p.elim.solve_order);
    } else if (kind == "neg_order") {
      std::vector<std::vector<int>> actual;
      for (const auto& r : rep.rs().neg_order()) actual.push_back(r.coeffs);
      auto expected = e.at("expect").get<std::vector<std::vector<int>>>();
      if (expected != actual) fail("expected " + Json(expected).dump() + ", got " + Json(actual).dump());
    } else {
      bad(label + ": unknown fixture kind '" + kind + "'");
    }
  }
  return out;
}

}  // namespace pv
