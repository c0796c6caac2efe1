#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pv/chevalley.hpp"

namespace pv {

using nlohmann::json;

const std::string& builtin_calibration_json() {
  static const std::string text = R"({
  "A": {
    "root_signs": {},
    "cartan_signs": [],
    "note": "standard basis X_{e_i-e_j} = E_ij; reproduces every SL4 fixture"
  },
  "B": {
    "root_signs": {},
    "cartan_signs": [],
    "note": "no fixtures; default signs"
  },
  "C": {
    "root_signs": {},
    "cartan_signs": [],
    "note": "no fixtures; default signs"
  },
  "D": {
    "root_signs": {},
    "cartan_signs": [],
    "note": "no fixtures; default signs"
  },
  "G2": {
    "root_signs": {"[1,1]": 1, "[2,1]": -1, "[3,1]": -1, "[3,2]": -1},
    "cartan_signs": [-1, 1],
    "h6_downgrade": false,
    "note": "signs of [3,1] and [3,2] fixed by the printed y values; h_1 and h_6 match term for term, no downgrade"
  }
}
)";
  return text;
}

namespace {

Root parse_root_key(const std::string& key, int rank) {
  json arr;
  try {
    arr = json::parse(key);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "bad root key '" + key + "'");
  }
  Root r;
  for (const auto& v : arr) r.coeffs.push_back(v.get<int>());
  if (static_cast<int>(r.coeffs.size()) != rank)
    throw Error(ErrorKind::ParseError, "root key '" + key + "' has the wrong length");
  return r;
}

}  // namespace

Calibration calibration_from_json(const std::string& json_text, RootType type, int rank) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("calibration file: ") + e.what());
  }
  std::string label = type_label(type);
  const json* entry = nullptr;
  if (type != RootType::G2 && doc.contains(label + std::to_string(rank)))
    entry = &doc[label + std::to_string(rank)];
  else if (doc.contains(label))
    entry = &doc[label];
  Calibration cal;
  if (!entry) return cal;
  try {
    if (entry->contains("root_signs"))
      for (const auto& [k, v] : (*entry)["root_signs"].items()) {
        int s = v.get<int>();
        if (s != 1 && s != -1) throw Error(ErrorKind::ParseError, "sign must be +1 or -1");
        cal.root_signs[parse_root_key(k, rank)] = s;
      }
    if (entry->contains("cartan_signs"))
      for (const auto& v : (*entry)["cartan_signs"]) cal.cartan_signs.push_back(v.get<int>());
    if (entry->contains("note")) cal.note = (*entry)["note"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("calibration entry: ") + e.what());
  }
  if (!cal.cartan_signs.empty() && static_cast<int>(cal.cartan_signs.size()) != rank)
    throw Error(ErrorKind::ParseError, "cartan_signs has the wrong length");
  return cal;
}

std::string calibration_to_json_entry(const Calibration& cal) {
  json e;
  e["root_signs"] = json::object();
  for (const auto& [r, s] : cal.root_signs) e["root_signs"][r.to_string()] = s;
  e["cartan_signs"] = cal.cartan_signs;
  return e.dump();
}

Calibration resolve_calibration(RootType type, int rank) {
  if (const char* path = std::getenv("PV_CALIBRATION"); path && *path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, std::string("cannot read calibration file ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return calibration_from_json(ss.str(), type, rank);
  }
  return calibration_from_json(builtin_calibration_json(), type, rank);
}

}  // namespace pv
