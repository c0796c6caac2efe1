#pragma once

#include <json.hpp>
#include <string>

#include "pv/bruhat.hpp"
#include "pv/construct.hpp"
#include "pv/gauge.hpp"

namespace pv {

using Json = nlohmann::ordered_json;

// {"terms":[{"c":"p/q","m":[[var,order,exp],...]}]}, factors in descending jet order.
Json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const Json& j);

// ["sum", term...] with term = ["term", coef, ["expint", g], ["int", expr, power]...]
Json to_json(const LiouvExpr& e);
LiouvExpr liouv_from_json(const Json& j);

Json to_json(const RatMatrix& m);
Json to_json(const Matrix<DiffPoly>& m);
Json to_json(const Matrix<LiouvExpr>& m);
// Entries may be "p/q" strings, integers, ASCII polynomial strings or DiffPoly objects.
RatMatrix rat_matrix_from_json(const Json& j);
Matrix<DiffPoly> poly_matrix_from_json(const Json& j);

Json to_json(const RootSystem& rs);
Json to_json(const BruhatForm& b);
Json to_json(const GaugeResult& g);

Json pipeline_report(const Pipeline& p);
std::string pipeline_text(const Pipeline& p);

}  // namespace pv
