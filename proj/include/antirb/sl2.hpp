#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "antirb/operator.hpp"
#include "antirb/report.hpp"

namespace antirb {

// Matrix entries are named by position:
//   ( a b c )
//   ( d g h )      row i = coordinates of R(e_i)
//   ( k l m )

/// The nine polynomial relations equivalent to the anti-Rota-Baxter identity
/// on sl2, grouped by basis pair (1,2), (1,3), (2,3); within a group, the
/// relations are the e1, e2, e3 coordinates of the pair's residual.
/// `e` holds a, b, c, d, g, h, k, l, m.
template <class T>
T sys1_relation(std::size_t index, const std::array<T, 9>& e) {
  const T& a = e[0];
  const T& b = e[1];
  const T& c = e[2];
  const T& d = e[3];
  const T& g = e[4];
  const T& h = e[5];
  const T& k = e[6];
  const T& l = e[7];
  const T& m = e[8];
  const T two(2);
  const T four(4);
  switch (index) {
    case 0:
      return four * a * h + (a + g) * k;
    case 1:
      return four * c * g + (a + g) * l;
    case 2:
      return -(b * d) + a * g + four * c * h + a * m + g * m;
    case 3:
      return two * a * a - two * b * d - two * c * k + k * l + four * a * m;
    case 4:
      return two * a * b - two * b * g + two * c * l + l * l;
    case 5:
      return two * a * c - two * b * h - b * k + a * l + two * c * m + l * m;
    case 6:
      return two * a * d - two * d * g - two * h * k - k * k;
    case 7:
      return two * b * d - two * g * g + two * h * l - k * l - four * g * m;
    default:
      return two * c * d - two * g * h - g * k + d * l - two * h * m - k * m;
  }
}

std::array<Scalar, 9> relations_residuals(const Matrix3& M);

enum class Sl2Family { F1, F2, F3, F4, F5, F6, F7, F8, F9, F10 };

inline constexpr std::array<Sl2Family, 10> kAllSl2Families{
    Sl2Family::F1, Sl2Family::F2, Sl2Family::F3, Sl2Family::F4, Sl2Family::F5,
    Sl2Family::F6, Sl2Family::F7, Sl2Family::F8, Sl2Family::F9, Sl2Family::F10};

std::string to_string(Sl2Family tag);
std::optional<Sl2Family> parse_sl2_family(const std::string& name);

struct Sl2FamilyPattern {
  Sl2Family tag;
  std::vector<std::string> free_params;
  /// Printed side condition, e.g. "c != 0, a != +-g"; empty when none.
  std::string excluded_locus;
  /// Printed among the strong anti-Rota-Baxter operators.
  bool strong_listed;
};

const Sl2FamilyPattern& sl2_pattern(Sl2Family tag);

using Sl2Params = std::map<std::string, Scalar>;

/// Throws InvalidFamilyParams for missing or unknown parameter names and
/// ExcludedLocus when the side condition fails.
Matrix3 build_sl2_family(Sl2Family tag, const Sl2Params& params);

/// Every pattern whose free entries, read off M, reproduce M exactly through
/// the derived-entry formulas. Non-vanishing side conditions are not enforced
/// here; a pattern whose formulas would divide by zero at M does not match.
std::vector<Sl2Family> match_family(const Matrix3& M);

/// M satisfies F9's relations with the division cleared: g = a, k = -2h,
/// l = -2c, 2a·m = bd - a² - 4ch. This quadric is irreducible, so the set is
/// the closure of F9 and adds exactly the a = 0 boundary.
bool in_f9_closure(const Matrix3& M);

Scalar det(const Matrix3& M);
Matrix3 adjugate(const Matrix3& M);
/// Adjugate over determinant; throws SingularMatrix.
Matrix3 inverse(const Matrix3& M);

/// Deterministic parameter stream: numerators in [-9, 9], denominators in
/// [1, 9], drawn from mt19937_64 with the given seed.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed);
  Rational next_rational();
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Draws parameters for the pattern, rejecting tuples on its excluded locus.
Sl2Params sample_sl2_params(Sl2Family tag, ParamSampler& sampler);

struct FamilySample {
  Sl2Params params;
  Matrix3 matrix;
  bool relations_zero = false;
  VerificationReport anti_rb;
  VerificationReport strong;
};

struct FamilyVerification {
  Sl2Family tag;
  std::vector<FamilySample> samples;

  std::size_t relations_pass() const;
  std::size_t anti_rb_pass() const;
  std::size_t strong_pass() const;
};

/// Samples the pattern and runs the relation, anti-Rota-Baxter and Strong
/// checks on each sample. Strong is run for every pattern so that the
/// unlisted ones can be falsified.
FamilyVerification verify_family(Sl2Family tag, std::size_t samples, std::uint64_t seed);

struct GridHit {
  std::array<std::int64_t, 9> entries{};
  std::vector<Sl2Family> matches;

  Matrix3 matrix() const;
};

struct GridResult {
  std::int64_t range = 0;
  std::uint64_t candidates = 0;
  /// Lexicographic by entries.
  std::vector<GridHit> hits;
  /// Indices into `hits` of matrices matching no pattern.
  std::vector<std::size_t> flagged;
};

/// All integer matrices in [-range, range]^9 with vanishing sys1 relations.
/// Work is split by first row across `threads` workers; output does not
/// depend on the thread count.
GridResult grid_search(std::int64_t range, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Invertibility and anti-derivations
// ---------------------------------------------------------------------------

/// The printed non-vanishing condition for the three invertible patterns:
/// F6 -> b·k, F7 -> d(b³d + 8c²bm + 16c⁴), F9 -> the printed quartic with
/// the diagonal entry named a. nullopt for other patterns.
std::optional<Scalar> printed_invertibility_condition(Sl2Family tag, const Sl2Params& params);

/// A = ( a11  a12  a13 )
///     ( a21  a11  a23 )
///     (-2a23 -2a13 -2a11)
struct AntiDerivationMatrix {
  Scalar a11, a12, a13, a21, a23;

  Matrix3 matrix() const;
};

AntiDerivationMatrix build_antiderivation(Scalar a11, Scalar a12, Scalar a13, Scalar a21,
                                          Scalar a23);

/// -2a11³ + 2a11a12a21 - 2a13²a21 + 4a11a13a23 - 2a12a23².
Scalar antideriv_det(const AntiDerivationMatrix& A);

/// The printed adjugate entries a', b', c', d', h'.
struct AntiDerivationAdjugate {
  Scalar a, b, c, d, h;
};
AntiDerivationAdjugate antideriv_adjugate_entries(const AntiDerivationMatrix& A);

/// (1/det)(a',b',c'; d',a',h'; -2h',-2c',(b'd'-a'²-4c'h')/(2a')).
/// Throws SingularMatrix when det = 0 and DivisionByZero when a' = 0.
Matrix3 antideriv_inverse_closed_form(const AntiDerivationMatrix& A);

struct BridgeReport {
  bool derivation_identity = false;
  bool inverse_anti_rb = false;
  /// nullopt when a' = 0 and the closed form is undefined.
  std::optional<bool> closed_form_agrees;
  /// Checked against the closure of F9 (see in_f9_closure): when a' = 0 the
  /// inverse has a zero diagonal corner and F9's printed formula is undefined.
  bool inverse_matches_f9 = false;
  /// Patterns matched by the inverse through match_family.
  std::vector<Sl2Family> inverse_families;
  bool det_formula_agrees = false;

  bool passed() const {
    return derivation_identity && inverse_anti_rb && closed_form_agrees.value_or(true) &&
           inverse_matches_f9 && det_formula_agrees;
  }
};

/// Throws SingularMatrix when A is not invertible.
BridgeReport bridge_check(const AntiDerivationMatrix& A);

AntiDerivationMatrix sample_invertible_antiderivation(ParamSampler& sampler);

}  // namespace antirb
