#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "antirb/scalar.hpp"

namespace antirb {

enum class AlgebraKind { Witt, Virasoro, Sl2 };

std::string to_string(AlgebraKind kind);

/// Basis generator of one of the three algebras. Ordering is by kind, then
/// index, so the Virasoro central generator sorts after every L_n.
struct BasisIndex {
  enum class Kind : std::uint8_t { WittGen, VirGen, VirCentral, Sl2Gen };

  Kind kind = Kind::WittGen;
  std::int64_t n = 0;

  static BasisIndex witt(std::int64_t n) { return {Kind::WittGen, n}; }
  static BasisIndex vir(std::int64_t n) { return {Kind::VirGen, n}; }
  static BasisIndex central() { return {Kind::VirCentral, 0}; }
  static BasisIndex sl2(std::int64_t i) { return {Kind::Sl2Gen, i}; }

  bool is_central() const { return kind == Kind::VirCentral; }
  /// True for L_n of Witt or Virasoro.
  bool is_graded_generator() const {
    return kind == Kind::WittGen || kind == Kind::VirGen;
  }
  bool belongs_to(AlgebraKind algebra) const;

  /// "L3", "L-2", "C", "e1".
  std::string to_string() const;

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// Inverse of BasisIndex::to_string for the given algebra; throws ParseError.
BasisIndex parse_basis_index(AlgebraKind algebra, const std::string& text);

/// Generator L_n of the given graded algebra.
BasisIndex generator(AlgebraKind algebra, std::int64_t n);

/// Finitely supported linear combination of basis generators. No zero
/// coefficient is ever stored.
class Element {
 public:
  explicit Element(AlgebraKind algebra) : algebra_(algebra) {}

  static Element basis(AlgebraKind algebra, BasisIndex idx, Scalar coeff = Scalar(1));

  AlgebraKind algebra() const noexcept { return algebra_; }
  const std::map<BasisIndex, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Zero when `idx` is not in the support.
  Scalar coeff(const BasisIndex& idx) const;
  std::vector<BasisIndex> support() const;

  /// Adds c·idx in place; throws AlgebraMismatch if idx is foreign.
  void add_term(const BasisIndex& idx, const Scalar& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element operator-() const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, const Element& x);

  friend bool operator==(const Element& a, const Element& b) = default;

  /// "0" or e.g. "4*L0 + 1/2*C".
  std::string to_string() const;

 private:
  AlgebraKind algebra_;
  std::map<BasisIndex, Scalar> terms_;
};

Element add(const Element& x, const Element& y);
Element scale(const Scalar& c, const Element& x);
std::vector<BasisIndex> support(const Element& x);

/// Lie bracket on basis generators:
///   Witt      [L_m, L_n] = (m-n) L_{m+n}
///   Virasoro  [L_m, L_n] = (m-n) L_{m+n} + (m^3-m)/12 δ_{m+n,0} C, C central
///   sl2       [e1,e2] = e3, [e1,e3] = 2e1, [e2,e3] = -2e2
Element basis_bracket(AlgebraKind algebra, const BasisIndex& x, const BasisIndex& y);

/// Bilinear extension over all term pairs. Throws AlgebraMismatch.
Element bracket(const Element& x, const Element& y);

/// Generators with index in [-window, window] (plus C for Virasoro), or
/// e1..e3 for sl2 regardless of window.
std::vector<BasisIndex> basis_in_window(AlgebraKind algebra, std::int64_t window);

struct VerificationReport;

/// Jacobi residual [[x,y],z] + [[y,z],x] + [[z,x],y] over every ordered
/// basis triple in the window. Throws WindowTooSmall for window < 1.
VerificationReport check_jacobi(AlgebraKind algebra, std::int64_t window);

/// [x,y] + [y,x] over every ordered basis pair in the window.
VerificationReport check_antisymmetry(AlgebraKind algebra, std::int64_t window);

}  // namespace antirb
