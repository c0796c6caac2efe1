#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pv/serialize.hpp"

namespace pv {

// A golden fixture is either a transcription file
//   {"type", "rank", "relabel"?, "bindings"?: [{"name","expr","ring"?}], "entries": [...]}
// with entries {"kind", "index"?, "expect", "bind"?}, or a report written by
// `derive --format json`, which is re-derived and compared key by key.
//
// Expected expressions use the ASCII grammar of parse_diffpoly / parse_liouv.
// "relabel" maps printed indices to ours ({"4": 5, "5": 4}); it applies to
// entry indices and to eta variables inside expressions.
struct FixtureOutcome {
  std::string label;
  int compared = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Pipelines are cached per (type, rank) inside one verifier.
class FixtureVerifier {
 public:
  FixtureOutcome verify(const Json& fixture, const std::string& label);
  const Pipeline& pipeline(RootType type, int rank);

 private:
  std::map<std::pair<RootType, int>, Pipeline> cache_;
};

// Describes the first term where two canonical serializations disagree, or
// returns an empty string if they are identical.
std::string first_differing_term(const DiffPoly& expected, const DiffPoly& actual);
std::string first_differing_term(const LiouvExpr& expected, const LiouvExpr& actual);

}  // namespace pv
