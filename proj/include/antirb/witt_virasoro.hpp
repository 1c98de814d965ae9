#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "antirb/operator.hpp"
#include "antirb/report.hpp"
#include "antirb/scalar.hpp"

namespace antirb {

// ---------------------------------------------------------------------------
// Family catalog
//
// All Witt families are given in f-coordinates, R(L_m) = f(m+k) L_{m+k}:
//   I             f(j) = α δ_{j,-k}
//   II            degree 2k, f(j) = β (δ_{j,0} + 4 δ_{j,-k})
//   III_thm       f(j) = (3k-2j)/(j+k) γ [l | j]   (operator coefficient
//                 (k-2m)/(m+2k) transported through j = m+k)
//   III_prop4     f(j) = (k-2j)/(j+k) γ [l | j]
//   Deg0          k = 0, f(j) = α δ_{j,0}
//   SupportMinusK k != 0, f(j) = α δ_{j,-k}  (the f(0) = 0 branch)
//   SupportOrigin f(j) = α δ_{j,0} for any k
// ---------------------------------------------------------------------------

enum class WittFamilyTag { I, II, III_thm, III_prop4, Deg0, SupportOrigin, SupportMinusK };

std::string to_string(WittFamilyTag tag);
std::optional<WittFamilyTag> parse_witt_family_tag(const std::string& name);

/// False only for SupportOrigin, which is a solver-surfaced candidate rather
/// than a printed family.
bool is_paper_family(WittFamilyTag tag);

struct WittFamily {
  WittFamilyTag tag = WittFamilyTag::I;
  /// Degree, except for II where it is the half-degree.
  std::int64_t k = 0;
  /// Period for III_thm / III_prop4, unused otherwise.
  std::int64_t l = 0;
  /// α, β or γ depending on the tag.
  Scalar param = Scalar(1);

  std::int64_t degree() const { return tag == WittFamilyTag::II ? 2 * k : k; }
  std::string label() const;
};

/// Throws InvalidFamilyParams when the family's constraints fail.
ClosedFormCoefficients witt_family_coefficients(const WittFamily& family);
OperatorSpec build_witt_family(const WittFamily& family);

enum class VirFamilyTag { Deg0, I, II, III, IV_printed, IV_signflip };

std::string to_string(VirFamilyTag tag);
std::optional<VirFamilyTag> parse_vir_family_tag(const std::string& name);

/// Virasoro families:
///   Deg0        R(L_m) = δ_{m,0}(α L_0 + θ C), R(C) = μ L_0 + ν C
///   I           R(L_m) = θ δ_{m+k,0} C, R(C) = 0
///   II          R(L_m) = α δ_{m+2k,0} L_{m+k}, R(C) = 0
///   III         degree 2k, R(L_m) = (β δ_{m+2k,0} + 4β δ_{m+3k,0}) L_{m+2k}
///               + ϑ δ_{m+2k,0} C, R(C) = 0
///   IV_printed  R(L_m) = (k²-1)/24 μ δ_{m,0} L_{m+k}, R(C) = μ L_k
///   IV_signflip same with -(k²-1)/24
struct VirFamily {
  VirFamilyTag tag = VirFamilyTag::Deg0;
  std::int64_t k = 0;
  Scalar alpha;
  Scalar theta;
  Scalar beta;
  Scalar vartheta;
  Scalar mu;
  Scalar nu;

  std::int64_t degree() const { return tag == VirFamilyTag::III ? 2 * k : k; }
  std::string label() const;
};

OperatorSpec build_vir_family(const VirFamily& family);

// ---------------------------------------------------------------------------
// Functional equation
// ---------------------------------------------------------------------------

/// LHS - RHS of f(m)f(n)(n-m) = f(m+n)(f(m)(m-n+k) + f(n)(m-n-k)).
/// nullopt when f(m), f(n) or f(m+n) is unknown.
std::optional<Scalar> functional_eq_residual(const CoefficientSource& f, std::int64_t k,
                                             std::int64_t m, std::int64_t n);

/// True iff the residual vanishes for every m, n with m, n, m+n in
/// [-window, window]. Unknown values count as failure.
bool window_consistent(const CoefficientSource& f, std::int64_t k, std::int64_t window);

// ---------------------------------------------------------------------------
// Windowed solver
// ---------------------------------------------------------------------------

enum class SolverBranch { F0Nonzero, F0Zero };
enum class Normalization { F0IsOne, FMinusKIsOne };

std::string to_string(SolverBranch branch);
std::string to_string(Normalization n);

struct SolutionCandidate {
  std::int64_t k = 0;
  std::int64_t window = 0;
  /// Every index of [-window, window], zeros included.
  std::map<std::int64_t, Scalar> values;
  Normalization normalization = Normalization::F0IsOne;
  /// Survives re-verification on the doubled window under its natural
  /// extension (see natural_extension).
  bool stable = false;

  Scalar value(std::int64_t m) const;
  std::map<std::int64_t, Scalar> nonzero_values() const;
  CoefficientTable as_table() const;

  friend bool operator==(const SolutionCandidate& a, const SolutionCandidate& b) {
    return a.k == b.k && a.window == b.window && a.values == b.values;
  }
};

/// Extension of a candidate to [-new_window, new_window]. A candidate whose
/// value vector equals the dichotomy value on lZ and zero elsewhere (l its
/// smallest nonzero |support| index) extends periodically; any other
/// candidate extends by zero.
CoefficientTable natural_extension(const SolutionCandidate& c, std::int64_t new_window);

/// All window-consistent solutions of the functional equation in the given
/// branch, each carrying its stability flag. Throws WindowTooSmall when
/// window < 2 or |k| > window.
std::vector<SolutionCandidate> enumerate_witt_solutions(std::int64_t k, std::int64_t window,
                                                        SolverBranch branch);

struct FamilyMatch {
  WittFamilyTag tag = WittFamilyTag::I;
  std::int64_t l = 0;
  /// The family parameter reproducing the candidate.
  Scalar param;

  std::string to_string() const;
};

struct Classification {
  std::vector<FamilyMatch> matches;
  bool unclassified() const { return matches.empty(); }
  /// At least one match is a printed family.
  bool paper_classified() const;
};

/// Matches the candidate's value vector against every Witt pattern at its
/// degree. III patterns are tried for 2 <= l <= window with l not dividing k.
Classification classify_solution(const SolutionCandidate& c);

// ---------------------------------------------------------------------------
// Adjudication
// ---------------------------------------------------------------------------

struct FamilyVerdict {
  std::string label;
  VerificationReport report;
};

struct CandidateVerdict {
  SolverBranch branch = SolverBranch::F0Nonzero;
  SolutionCandidate candidate;
  Classification classification;
};

struct AdjudicationReport {
  AlgebraKind algebra = AlgebraKind::Witt;
  std::int64_t degree = 0;
  std::int64_t window = 0;
  std::vector<FamilyVerdict> families;
  std::vector<CandidateVerdict> candidates;
  std::vector<std::string> findings;
};

/// Parameter values used when sampling families: small rationals plus 1+i.
std::vector<Scalar> family_parameter_samples();

/// Verifies every catalog family of the given degree at the sampled
/// parameters and, for Witt, classifies the solver output. Findings are data;
/// nothing is asserted about the printed catalog. Throws WindowTooSmall when
/// window < 2|k| + 4.
AdjudicationReport adjudicate(AlgebraKind algebra, std::int64_t k, std::int64_t window);

}  // namespace antirb
