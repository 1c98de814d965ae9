#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "antirb/errors.hpp"
#include "antirb/operator.hpp"
#include "antirb/sl2.hpp"
#include "antirb/witt_virasoro.hpp"

namespace antirb {

/// Insertion-ordered JSON keeps report bytes stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "antirb";
inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed operator document: bad JSON, unknown fields, wrong types, or
/// scalars outside the scalar grammar.
class DocumentError : public Error {
 public:
  using Error::Error;
};

struct OperatorDocument {
  AlgebraKind algebra;
  OperatorSpec op;
};

/// Schema:
///   { "algebra": "witt" | "virasoro" | "sl2",
///     "operator": { "kind": "homogeneous", "degree": int,
///                   "f": { "domain": [lo, hi], "values": { "<int>": "<scalar>" } },
///                   "theta": "<scalar>", "mu": "<scalar>", "nu": "<scalar>" }
///               | { "kind": "homogeneous",
///                   "family": { "name": "<tag>", "params": { ... } } }
///               | { "kind": "matrix", "rows": [[s, s, s], [s, s, s], [s, s, s]] } }
/// Unknown fields are rejected. Throws DocumentError.
OperatorDocument parse_operator_document(const std::string& text);

Json to_json(const Element& e);
Json to_json(const VerificationReport& report);
Json to_json(const SolutionCandidate& c, const Classification& cls);
Json to_json(const AdjudicationReport& report);
Json to_json(const FamilyVerification& fv);
Json to_json(const GridResult& grid);
Json to_json(const Matrix3& M);

/// Wraps a report body with tool name, version and command echo.
Json make_report(const Json& command, const std::string& status, const Json& body);

/// Multi-line human rendering of a report produced by make_report.
std::string render_text(const Json& report);

}  // namespace antirb
