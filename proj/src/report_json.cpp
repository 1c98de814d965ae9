#include "antirb/report_json.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace antirb {

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw DocumentError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (allowed.count(key) == 0) throw DocumentError("unknown field '" + key + "' in " + where);
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError("missing field '" + key + "' in " + where);
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw DocumentError(what + " must be an integer");
  return v.get<std::int64_t>();
}

Scalar as_scalar(const Json& v, const std::string& what) {
  if (!v.is_string()) throw DocumentError(what + " must be a scalar string");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const ParseError& e) {
    throw DocumentError(what + ": " + e.what());
  }
}

std::int64_t parse_int_key(const std::string& key) {
  std::int64_t n = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
  if (ec != std::errc() || ptr != key.data() + key.size()) {
    throw DocumentError("coefficient index '" + key + "' is not an integer");
  }
  return n;
}

AlgebraKind parse_algebra(const Json& v) {
  if (!v.is_string()) throw DocumentError("algebra must be a string");
  const auto s = v.get<std::string>();
  if (s == "witt") return AlgebraKind::Witt;
  if (s == "virasoro") return AlgebraKind::Virasoro;
  if (s == "sl2") return AlgebraKind::Sl2;
  throw DocumentError("unknown algebra '" + s + "'");
}

OperatorSpec parse_witt_family(const Json& family) {
  reject_unknown(family, {"name", "params"}, "family");
  const Json& name = require(family, "name", "family");
  if (!name.is_string()) throw DocumentError("family name must be a string");
  auto tag = parse_witt_family_tag(name.get<std::string>());
  if (!tag) throw DocumentError("unknown witt family '" + name.get<std::string>() + "'");
  const Json params = family.value("params", Json::object());
  std::set<std::string> allowed{"k"};
  std::string scalar_key = "alpha";
  if (*tag == WittFamilyTag::II) scalar_key = "beta";
  if (*tag == WittFamilyTag::III_thm || *tag == WittFamilyTag::III_prop4) {
    scalar_key = "gamma";
    allowed.insert("l");
  }
  allowed.insert(scalar_key);
  reject_unknown(params, allowed, "family params");
  WittFamily f{*tag, 0, 0, Scalar(1)};
  if (params.contains("k")) f.k = as_int(params["k"], "k");
  if (params.contains("l")) f.l = as_int(params["l"], "l");
  if (params.contains(scalar_key)) f.param = as_scalar(params[scalar_key], scalar_key);
  return build_witt_family(f);
}

OperatorSpec parse_vir_family(const Json& family) {
  reject_unknown(family, {"name", "params"}, "family");
  const Json& name = require(family, "name", "family");
  if (!name.is_string()) throw DocumentError("family name must be a string");
  auto tag = parse_vir_family_tag(name.get<std::string>());
  if (!tag) throw DocumentError("unknown virasoro family '" + name.get<std::string>() + "'");
  const Json params = family.value("params", Json::object());
  std::set<std::string> scalars;
  switch (*tag) {
    case VirFamilyTag::Deg0:
      scalars = {"alpha", "theta", "mu", "nu"};
      break;
    case VirFamilyTag::I:
      scalars = {"theta"};
      break;
    case VirFamilyTag::II:
      scalars = {"alpha"};
      break;
    case VirFamilyTag::III:
      scalars = {"beta", "vartheta"};
      break;
    case VirFamilyTag::IV_printed:
    case VirFamilyTag::IV_signflip:
      scalars = {"mu"};
      break;
  }
  std::set<std::string> allowed = scalars;
  allowed.insert("k");
  reject_unknown(params, allowed, "family params");
  VirFamily f;
  f.tag = *tag;
  if (params.contains("k")) f.k = as_int(params["k"], "k");
  auto get = [&](const char* key) {
    return params.contains(key) ? as_scalar(params[key], key) : Scalar();
  };
  f.alpha = get("alpha");
  f.theta = get("theta");
  f.beta = get("beta");
  f.vartheta = get("vartheta");
  f.mu = get("mu");
  f.nu = get("nu");
  return build_vir_family(f);
}

OperatorSpec parse_homogeneous(AlgebraKind algebra, const Json& op) {
  if (algebra == AlgebraKind::Sl2) throw DocumentError("sl2 operators must be of kind 'matrix'");
  std::set<std::string> allowed{"kind", "degree", "f", "family"};
  if (algebra == AlgebraKind::Virasoro) allowed.insert({"theta", "mu", "nu"});
  reject_unknown(op, allowed, "operator");
  if (op.contains("family")) {
    if (op.contains("f") || op.contains("theta") || op.contains("mu") || op.contains("nu")) {
      throw DocumentError("'family' excludes 'f', 'theta', 'mu' and 'nu'");
    }
    OperatorSpec spec = algebra == AlgebraKind::Witt ? parse_witt_family(op["family"])
                                                     : parse_vir_family(op["family"]);
    if (op.contains("degree") &&
        as_int(op["degree"], "degree") != spec.homogeneous()->degree) {
      throw DocumentError("degree does not match the family's degree");
    }
    return spec;
  }
  const std::int64_t degree = as_int(require(op, "degree", "operator"), "degree");
  const Json& f = require(op, "f", "operator");
  reject_unknown(f, {"domain", "values"}, "f");
  const Json& domain = require(f, "domain", "f");
  if (!domain.is_array() || domain.size() != 2) throw DocumentError("domain must be [lo, hi]");
  CoefficientTable table{as_int(domain[0], "domain lo"), as_int(domain[1], "domain hi"), {}};
  if (table.lo > table.hi) throw DocumentError("domain lo exceeds hi");
  const Json values = f.value("values", Json::object());
  if (!values.is_object()) throw DocumentError("values must be an object");
  for (const auto& [key, value] : values.items()) {
    const std::int64_t j = parse_int_key(key);
    if (j < table.lo || j > table.hi) throw DocumentError("coefficient index " + key + " outside domain");
    Scalar s = as_scalar(value, "f[" + key + "]");
    if (!s.is_zero()) table.values.emplace(j, std::move(s));
  }
  HomogeneousOperator h{algebra, degree, std::move(table), Scalar(), Scalar(), Scalar(), {}};
  if (op.contains("theta")) h.theta = as_scalar(op["theta"], "theta");
  if (op.contains("mu")) h.mu = as_scalar(op["mu"], "mu");
  if (op.contains("nu")) h.nu = as_scalar(op["nu"], "nu");
  return OperatorSpec(std::move(h));
}

OperatorSpec parse_matrix(AlgebraKind algebra, const Json& op) {
  if (algebra != AlgebraKind::Sl2) throw DocumentError("matrix operators require algebra 'sl2'");
  reject_unknown(op, {"kind", "rows"}, "operator");
  const Json& rows = require(op, "rows", "operator");
  if (!rows.is_array() || rows.size() != 3) throw DocumentError("rows must be a 3x3 array");
  Matrix3 M;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 3) throw DocumentError("rows must be a 3x3 array");
    for (std::size_t j = 0; j < 3; ++j) {
      M(i, j) = as_scalar(rows[i][j], "rows[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return OperatorSpec(M);
}

}  // namespace

OperatorDocument parse_operator_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(doc, {"algebra", "operator"}, "document");
  const AlgebraKind algebra = parse_algebra(require(doc, "algebra", "document"));
  const Json& op = require(doc, "operator", "document");
  reject_unknown(op, {"kind", "degree", "f", "family", "theta", "mu", "nu", "rows"}, "operator");
  const Json& kind = require(op, "kind", "operator");
  if (!kind.is_string()) throw DocumentError("operator kind must be a string");
  try {
    if (kind == "homogeneous") return {algebra, parse_homogeneous(algebra, op)};
    if (kind == "matrix") return {algebra, parse_matrix(algebra, op)};
  } catch (const InvalidFamilyParams& e) {
    throw DocumentError(e.what());
  }
  throw DocumentError("unknown operator kind '" + kind.get<std::string>() + "'");
}

Json to_json(const Element& e) {
  Json out = Json::object();
  for (const auto& [idx, c] : e.terms()) out[idx.to_string()] = c.to_string();
  return out;
}

Json to_json(const VerificationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json inputs = Json::array();
    for (const auto& idx : v.inputs) inputs.push_back(idx.to_string());
    violations.push_back({{"inputs", inputs}, {"residual", to_json(v.residual)}});
  }
  return {{"passed", report.passed()},
          {"checked", report.checked},
          {"skipped", report.skipped},
          {"violations", violations}};
}

Json to_json(const SolutionCandidate& c, const Classification& cls) {
  Json values = Json::object();
  for (const auto& [m, v] : c.nonzero_values()) values[std::to_string(m)] = v.to_string();
  Json tags = Json::array();
  for (const auto& m : cls.matches) tags.push_back(m.to_string());
  return {{"degree", c.k},
          {"window", c.window},
          {"normalization", to_string(c.normalization)},
          {"values", values},
          {"stable", c.stable},
          {"tags", tags},
          {"paper_classified", cls.paper_classified()}};
}

Json to_json(const AdjudicationReport& report) {
  Json families = Json::array();
  for (const auto& f : report.families) {
    Json first = nullptr;
    if (!f.report.violations.empty()) {
      const auto& v = f.report.violations.front();
      Json inputs = Json::array();
      for (const auto& idx : v.inputs) inputs.push_back(idx.to_string());
      first = {{"inputs", inputs}, {"residual", to_json(v.residual)}};
    }
    families.push_back({{"family", f.label},
                        {"verdict", f.report.passed() ? "pass" : "fail"},
                        {"checked", f.report.checked},
                        {"skipped", f.report.skipped},
                        {"violation_count", f.report.violations.size()},
                        {"first_violation", first}});
  }
  Json candidates = Json::array();
  for (const auto& c : report.candidates) {
    Json entry = to_json(c.candidate, c.classification);
    entry["branch"] = to_string(c.branch);
    candidates.push_back(entry);
  }
  return {{"algebra", to_string(report.algebra)},
          {"degree", report.degree},
          {"window", report.window},
          {"families", families},
          {"candidates", candidates},
          {"findings", report.findings}};
}

Json to_json(const Matrix3& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(M(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const FamilyVerification& fv) {
  const auto& pattern = sl2_pattern(fv.tag);
  Json strong_counterexamples = Json::array();
  for (const auto& s : fv.samples) {
    if (s.strong.passed()) continue;
    Json params = Json::object();
    for (const auto& [k, v] : s.params) params[k] = v.to_string();
    strong_counterexamples.push_back(
        {{"params", params}, {"residual", to_json(s.strong.violations.front().residual)}});
  }
  Json failures = Json::array();
  for (const auto& s : fv.samples) {
    if (s.relations_zero && s.anti_rb.passed()) continue;
    Json params = Json::object();
    for (const auto& [k, v] : s.params) params[k] = v.to_string();
    failures.push_back({{"params", params}, {"matrix", to_json(s.matrix)}});
  }
  return {{"family", to_string(fv.tag)},
          {"excluded_locus", pattern.excluded_locus},
          {"strong_listed", pattern.strong_listed},
          {"samples", fv.samples.size()},
          {"relations_zero", fv.relations_pass()},
          {"anti_rb_pass", fv.anti_rb_pass()},
          {"strong_pass", fv.strong_pass()},
          {"anti_rb_failures", failures},
          {"strong_counterexamples", strong_counterexamples}};
}

Json to_json(const GridResult& grid) {
  Json hits = Json::array();
  for (const auto& h : grid.hits) {
    Json tags = Json::array();
    for (auto t : h.matches) tags.push_back(to_string(t));
    hits.push_back({{"matrix", h.entries}, {"families", tags}});
  }
  Json flagged = Json::array();
  for (auto i : grid.flagged) flagged.push_back(grid.hits[i].entries);
  return {{"range", grid.range},
          {"candidates", grid.candidates},
          {"hit_count", grid.hits.size()},
          {"flagged_count", grid.flagged.size()},
          {"flagged", flagged},
          {"hits", hits}};
}

Json make_report(const Json& command, const std::string& status, const Json& body) {
  Json out = {{"tool", kToolName}, {"version", kToolVersion}, {"command", command},
              {"status", status}};
  for (const auto& [key, value] : body.items()) out[key] = value;
  return out;
}

namespace {

void render(const Json& value, const std::string& indent, std::ostringstream& os) {
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) {
      if (v.is_structured() && !v.empty()) {
        os << indent << key << ":\n";
        render(v, indent + "  ", os);
      } else {
        os << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (value.is_array()) {
    for (const auto& v : value) {
      if (v.is_object()) {
        os << indent << "-\n";
        render(v, indent + "  ", os);
      } else {
        os << indent << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    os << indent << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(report, "", os);
  return os.str();
}

}  // namespace antirb
