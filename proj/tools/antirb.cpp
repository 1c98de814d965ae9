// antirb: verify and adjudicate anti-Rota-Baxter operators on Witt, Virasoro
// and sl2. Reports go to stdout; diagnostics go to stderr.
//
// Exit codes: 0 pass or run complete, 1 verification failure, 2 usage/input.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "antirb/report_json.hpp"

namespace {

using antirb::Json;

enum class Format { Json, Text };

struct Output {
  Format format = Format::Json;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const Json& report) const {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    if (format == Format::Text) {
      std::cout << antirb::render_text(report) << "elapsed_ms: " << elapsed << "\n";
      return;
    }
    Json doc = {{"report", report}, {"envelope", {{"elapsed_ms", elapsed}}}};
    std::cout << doc.dump(2) << "\n";
  }
};

struct UsageError : antirb::Error {
  using antirb::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

antirb::AlgebraKind parse_algebra_flag(const std::string& s) {
  if (s == "witt") return antirb::AlgebraKind::Witt;
  if (s == "virasoro") return antirb::AlgebraKind::Virasoro;
  throw UsageError("unsupported algebra '" + s + "'");
}

int cmd_verify(const std::string& input, std::int64_t window, const std::string& delta_text,
               bool strong, const Output& out) {
  const antirb::Scalar delta = antirb::parse_scalar(delta_text);
  const auto doc = antirb::parse_operator_document(read_file(input));
  antirb::VerificationReport report =
      antirb::verify_identity(doc.op, window, antirb::IdentityKind::delta_rb(delta));
  if (strong) {
    report.merge(antirb::verify_identity(doc.op, window, antirb::IdentityKind::strong()));
    report.canonicalize();
  }
  const std::string status = report.passed() ? "pass" : "fail";
  Json command = {{"name", "verify"},
                  {"input", std::filesystem::path(input).filename().string()},
                  {"algebra", antirb::to_string(doc.algebra)},
                  {"window", window},
                  {"delta", delta.to_string()},
                  {"strong", strong}};
  Json body = antirb::to_json(report);
  body.erase("passed");
  if (report.skipped > 0) {
    body["notice"] = "window-consistent: " + std::to_string(report.skipped) +
                     " evaluation(s) skipped where coefficients are unknown";
  }
  out.emit(antirb::make_report(command, status, body));
  return report.passed() ? 0 : 1;
}

int cmd_search(const std::string& algebra, std::int64_t degree, std::int64_t window,
               const std::string& branch_text, const Output& out) {
  if (parse_algebra_flag(algebra) != antirb::AlgebraKind::Witt) {
    throw UsageError("search supports --algebra witt only");
  }
  const auto branch = branch_text == "f0zero" ? antirb::SolverBranch::F0Zero
                                              : antirb::SolverBranch::F0Nonzero;
  const auto candidates = antirb::enumerate_witt_solutions(degree, window, branch);
  Json list = Json::array();
  for (const auto& c : candidates) list.push_back(antirb::to_json(c, antirb::classify_solution(c)));
  Json command = {{"name", "search"},
                  {"algebra", algebra},
                  {"degree", degree},
                  {"window", window},
                  {"branch", branch_text}};
  out.emit(antirb::make_report(command, "adjudicated",
                               {{"candidate_count", candidates.size()}, {"candidates", list}}));
  return 0;
}

int cmd_adjudicate(const std::string& algebra, std::int64_t degree, std::int64_t window,
                   const Output& out) {
  const auto kind = parse_algebra_flag(algebra);
  if (window == 0) window = 2 * std::abs(degree) + 4;
  const auto report = antirb::adjudicate(kind, degree, window);
  Json command = {{"name", "adjudicate"}, {"algebra", algebra}, {"degree", degree},
                  {"window", window}};
  out.emit(antirb::make_report(command, "adjudicated", antirb::to_json(report)));
  return 0;
}

int cmd_sl2_families(std::size_t samples, std::uint64_t seed, const Output& out) {
  Json families = Json::array();
  Json findings = Json::array();
  for (auto tag : antirb::kAllSl2Families) {
    const auto fv = antirb::verify_family(tag, samples, seed);
    const auto& pattern = antirb::sl2_pattern(tag);
    if (!pattern.strong_listed && fv.strong_pass() == fv.samples.size()) {
      findings.push_back(antirb::to_string(tag) +
                         ": not listed as strong, yet Strong holds at every sample");
    }
    if (pattern.strong_listed && fv.strong_pass() != fv.samples.size()) {
      findings.push_back(antirb::to_string(tag) + ": listed as strong, yet Strong fails");
    }
    if (fv.anti_rb_pass() != fv.samples.size() || fv.relations_pass() != fv.samples.size()) {
      findings.push_back(antirb::to_string(tag) + ": anti-Rota-Baxter identity fails");
    }
    families.push_back(antirb::to_json(fv));
  }
  Json command = {{"name", "sl2 verify-families"}, {"samples", samples}, {"seed", seed}};
  out.emit(antirb::make_report(command, "adjudicated",
                               {{"families", families}, {"findings", findings}}));
  return 0;
}

int cmd_sl2_grid(std::int64_t range, unsigned threads, const Output& out) {
  if (range < 0) throw UsageError("--range must be non-negative");
  const auto grid = antirb::grid_search(range, threads);
  Json body = antirb::to_json(grid);
  Json findings = Json::array();
  if (grid.flagged.empty()) {
    findings.push_back("every hit matches at least one family pattern");
  } else {
    findings.push_back(std::to_string(grid.flagged.size()) + " hit(s) match no family pattern");
  }
  body["findings"] = findings;
  Json command = {{"name", "sl2 grid"}, {"range", range}};
  out.emit(antirb::make_report(command, "adjudicated", body));
  return 0;
}

int cmd_sl2_bridge(std::size_t samples, std::uint64_t seed, const Output& out) {
  antirb::ParamSampler sampler(seed);
  std::size_t derivation = 0, inverse_rb = 0, f9 = 0, det_ok = 0, closed = 0, closed_skipped = 0;
  Json failures = Json::array();
  Json degenerate = Json::array();
  for (std::size_t i = 0; i < samples; ++i) {
    const auto A = antirb::sample_invertible_antiderivation(sampler);
    const auto r = antirb::bridge_check(A);
    derivation += r.derivation_identity;
    inverse_rb += r.inverse_anti_rb;
    f9 += r.inverse_matches_f9;
    det_ok += r.det_formula_agrees;
    if (!r.closed_form_agrees) {
      ++closed_skipped;
      Json tags = Json::array();
      for (auto t : r.inverse_families) tags.push_back(antirb::to_string(t));
      degenerate.push_back({{"sample", i}, {"matrix", antirb::to_json(A.matrix())},
                            {"inverse", antirb::to_json(antirb::inverse(A.matrix()))},
                            {"inverse_families", tags}});
    } else {
      closed += *r.closed_form_agrees;
    }
    if (!r.passed()) failures.push_back({{"sample", i}, {"matrix", antirb::to_json(A.matrix())}});
  }
  Json body = {{"samples", samples},
               {"derivation_identity", derivation},
               {"inverse_anti_rb", inverse_rb},
               {"closed_form_agrees", closed},
               {"inverse_matches_f9", f9},
               {"adjugate_corner_zero", closed_skipped},
               {"adjugate_corner_zero_samples", degenerate},
               {"det_formula_agrees", det_ok},
               {"all_passed", failures.empty()},
               {"failures", failures}};
  Json command = {{"name", "sl2 bridge"}, {"samples", samples}, {"seed", seed}};
  out.emit(antirb::make_report(command, "adjudicated", body));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify and adjudicate anti-Rota-Baxter operators on Witt, Virasoro and sl2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(antirb::kToolName) + " " + antirb::kToolVersion);

  Output out;
  std::string format = "json";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  std::string input;
  std::int64_t window = 0;
  std::string delta = "-1";
  bool strong = false;
  auto* verify = app.add_subcommand("verify", "Check the delta-Rota-Baxter identity on a window");
  verify->add_option("--input", input, "Operator document (JSON)")->required();
  verify->add_option("--window", window, "Half-width N of the index window [-N, N]")->required();
  verify->add_option("--delta", delta, "Twist delta; -1 is anti-Rota-Baxter");
  verify->add_flag("--strong", strong, "Also check the strong cyclic identity");
  add_format(verify);

  std::string algebra = "witt";
  std::int64_t degree = 0;
  std::string branch = "f0";
  auto* search = app.add_subcommand("search", "Enumerate homogeneous Witt solutions");
  search->add_option("--algebra", algebra)->check(CLI::IsMember({"witt"}));
  search->add_option("--degree", degree)->required();
  search->add_option("--window", window)->required();
  search->add_option("--branch", branch)->check(CLI::IsMember({"f0", "f0zero"}));
  add_format(search);

  auto* adj = app.add_subcommand("adjudicate", "Check every catalogued family and the solver");
  adj->add_option("--algebra", algebra)->check(CLI::IsMember({"witt", "virasoro"}));
  adj->add_option("--degree", degree)->required();
  adj->add_option("--window", window, "Defaults to 2|degree| + 4");
  add_format(adj);

  std::size_t samples = 100;
  std::uint64_t seed = 42;
  std::int64_t range = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sl2 = app.add_subcommand("sl2", "sl2 matrix operators");
  sl2->require_subcommand(1);
  auto* fam = sl2->add_subcommand("verify-families", "Sample and verify every family pattern");
  fam->add_option("--samples", samples);
  fam->add_option("--seed", seed);
  add_format(fam);
  auto* grid = sl2->add_subcommand("grid", "Exhaustive integer grid search");
  grid->add_option("--range", range);
  grid->add_option("--threads", threads)->check(CLI::PositiveNumber);
  add_format(grid);
  auto* bridge = sl2->add_subcommand("bridge", "Anti-derivation to anti-Rota-Baxter bridge");
  bridge->add_option("--samples", samples);
  bridge->add_option("--seed", seed);
  add_format(bridge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  out.format = format == "text" ? Format::Text : Format::Json;

  try {
    if (*verify) return cmd_verify(input, window, delta, strong, out);
    if (*search) return cmd_search(algebra, degree, window, branch, out);
    if (*adj) return cmd_adjudicate(algebra, degree, window, out);
    if (*fam) return cmd_sl2_families(samples, seed, out);
    if (*grid) return cmd_sl2_grid(range, threads, out);
    if (*bridge) return cmd_sl2_bridge(samples, seed, out);
  } catch (const antirb::Error& e) {
    std::cerr << "antirb: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
