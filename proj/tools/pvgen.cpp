// pvgen: derive invariants, verify golden fixtures, run Bruhat and gauge utilities.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pv/fixtures.hpp"

namespace fs = std::filesystem;
using namespace pv;

namespace {

enum Exit { kOk = 0, kUsage = 1, kCompute = 2, kMismatch = 3 };

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedType:
    case ErrorKind::ParseError:
      return kUsage;
    default:
      return kCompute;
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + output + "'");
  out << text;
}

int cmd_derive(const std::string& type, int rank, const std::string& format, const std::string& output,
               bool end_to_end) {
  auto rep = build_rep(build_root_system(parse_type_label(type), rank));
  PipelineOptions opts;
  opts.end_to_end = end_to_end;
  Pipeline p = run_pipeline(rep, opts);
  emit(format == "json" ? pipeline_report(p).dump(2) + "\n" : pipeline_text(p), output);
  return kOk;
}

std::vector<fs::path> fixture_files(const std::string& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  } else {
    throw Error(ErrorKind::ParseError, "no fixtures at '" + path + "'");
  }
  if (files.empty()) throw Error(ErrorKind::ParseError, "no .json fixtures in '" + path + "'");
  return files;
}

int cmd_verify(const std::string& path, const std::string& output) {
  FixtureVerifier verifier;
  std::ostringstream os;
  bool all_ok = true;
  for (const auto& f : fixture_files(path)) {
    FixtureOutcome o = verifier.verify(read_json(f.string()), f.filename().string());
    all_ok = all_ok && o.ok();
    os << (o.ok() ? "PASS " : "FAIL ") << o.label << " (" << o.compared << " compared)\n";
    for (const auto& m : o.mismatches) os << "  " << m << "\n";
  }
  emit(os.str(), output);
  return all_ok ? kOk : kMismatch;
}

const Json& matrix_field(const Json& j) { return j.is_object() ? j.at("matrix") : j; }

int cmd_bruhat(const std::string& path, const std::string& convention, const std::string& output) {
  Json in = read_json(path);
  RatMatrix m = rat_matrix_from_json(matrix_field(in));
  Convention c = convention == "positive" ? Convention::Positive : Convention::Negative;
  emit(to_json(bruhat_decompose(m, c)).dump(2) + "\n", output);
  return kOk;
}

int cmd_gauge(const std::string& path, const std::string& format, const std::string& output) {
  Json in = read_json(path);
  if (!in.is_object() || !in.contains("type") || !in.contains("rank") || !in.contains("matrix"))
    throw Error(ErrorKind::ParseError, "gauge input needs type, rank and matrix");
  auto rep = build_rep(build_root_system(parse_type_label(in["type"].get<std::string>()), in["rank"].get<int>()));
  GaugeResult g = normalize_to_AG(rep, poly_matrix_from_json(in["matrix"]));
  if (format == "json") {
    emit(to_json(g).dump(2) + "\n", output);
  } else {
    std::ostringstream os;
    for (std::size_t k = 0; k < g.indices.size(); ++k)
      os << "f_" << g.indices[k] << " = " << g.f[k].to_text() << "\n";
    emit(os.str(), output);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard-Vessiot invariant generator"};
  app.require_subcommand(1);

  std::string type, format = "text", output, fixtures, matrix, convention = "negative";
  int rank = 0;
  bool end_to_end = false;
  const std::vector<std::string> formats{"text", "json"};

  auto* derive = app.add_subcommand("derive", "run the full construction for a root system");
  derive->add_option("--type", type, "A, B, C, D or G2")->required();
  derive->add_option("--rank", rank, "rank of the root system")->required();
  derive->add_option("--format", format)->check(CLI::IsMember(formats));
  derive->add_option("--output", output, "write the report here instead of stdout");
  derive->add_flag("--end-to-end", end_to_end, "also check the symbolic identity for Y");

  auto* verify = app.add_subcommand("verify", "compare golden fixtures with derived values");
  verify->add_option("--fixtures", fixtures, "fixture file or directory")->required();
  verify->add_option("--output", output);

  auto* bruhat = app.add_subcommand("bruhat", "Bruhat decomposition of an exact SL_n matrix");
  bruhat->add_option("--matrix", matrix, "JSON file with a rational matrix")->required();
  bruhat->add_option("--convention", convention)->check(CLI::IsMember({"negative", "positive"}));
  bruhat->add_option("--format", format)->check(CLI::IsMember(formats));
  bruhat->add_option("--output", output);

  auto* gauge_cmd = app.add_subcommand("gauge-normalize", "gauge a plane matrix to normal form");
  gauge_cmd->add_option("--matrix", matrix, "JSON file {type, rank, matrix}")->required();
  gauge_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  gauge_cmd->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*derive) return cmd_derive(type, rank, format, output, end_to_end);
    if (*verify) return cmd_verify(fixtures, output);
    if (*bruhat) return cmd_bruhat(matrix, convention, output);
    if (*gauge_cmd) return cmd_gauge(matrix, format, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCompute;
  }
  return kUsage;
}
