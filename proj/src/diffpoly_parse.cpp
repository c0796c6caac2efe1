#include "pv/detail/expr_parser.hpp"
#include "pv/diffpoly.hpp"

namespace pv {

namespace {

struct PolyHooks {
  const std::map<std::string, DiffPoly>& bindings;

  DiffPoly constant(const Rational& c) { return DiffPoly(c); }
  DiffPoly variable(int i) { return DiffPoly::var(i); }
  std::optional<DiffPoly> name(const std::string& id) {
    auto it = bindings.find(id);
    if (it == bindings.end()) return std::nullopt;
    return it->second;
  }
  std::optional<DiffPoly> call(const std::string&, const DiffPoly&) { return std::nullopt; }
  DiffPoly derive(const DiffPoly& p, int k) { return pv::derive(p, k); }
  std::optional<Rational> as_constant(const DiffPoly& p) {
    if (!p.is_constant()) return std::nullopt;
    return p.constant_term();
  }
};

}  // namespace

DiffPoly parse_diffpoly(const std::string& text, const std::map<std::string, DiffPoly>& bindings) {
  PolyHooks hooks{bindings};
  return detail::ExprParser<DiffPoly, PolyHooks>(text, hooks).parse();
}

}  // namespace pv
