#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "antirb/lie.hpp"
#include "antirb/report.hpp"
#include "antirb/scalar.hpp"

namespace antirb {

/// Coefficient function f on a finite integer interval. Indices inside
/// [lo, hi] that are absent from `values` are zero; indices outside are
/// unknown.
struct CoefficientTable {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::map<std::int64_t, Scalar> values;
};

/// Coefficient function defined on all of Z by a closed form.
struct ClosedFormCoefficients {
  std::string name;
  std::function<Scalar(std::int64_t)> fn;
};

class CoefficientSource {
 public:
  CoefficientSource(CoefficientTable table);  // NOLINT(google-explicit-constructor)
  CoefficientSource(ClosedFormCoefficients closed);  // NOLINT(google-explicit-constructor)

  /// nullopt when the index falls outside a table's domain.
  std::optional<Scalar> at(std::int64_t j) const;

  bool is_table() const noexcept { return std::holds_alternative<CoefficientTable>(source_); }
  const CoefficientTable* table() const noexcept { return std::get_if<CoefficientTable>(&source_); }
  const ClosedFormCoefficients* closed_form() const noexcept {
    return std::get_if<ClosedFormCoefficients>(&source_);
  }

 private:
  std::variant<CoefficientTable, ClosedFormCoefficients> source_;
};

/// R(L_m) = f(m+k) L_{m+k} (+ θ δ_{m+k,0} C on Virasoro),
/// R(C)   = μ L_k + ν δ_{k,0} C.
struct HomogeneousOperator {
  AlgebraKind algebra = AlgebraKind::Witt;
  std::int64_t degree = 0;
  CoefficientSource coeffs;
  Scalar theta;
  Scalar mu;
  Scalar nu;
  /// Terms added on top of the homogeneous form for the listed generators.
  /// Empty for every operator the library builds; lets callers model a
  /// perturbed, non-graded operator.
  std::map<BasisIndex, Element> extra_terms;
};

/// 3x3 matrix over the scalar field.
struct Matrix3 {
  std::array<std::array<Scalar, 3>, 3> rows{};

  static Matrix3 identity();
  static Matrix3 from_ints(const std::array<std::array<std::int64_t, 3>, 3>& v);

  const Scalar& operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return rows[i][j]; }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b);
  friend Matrix3 operator*(const Scalar& c, const Matrix3& a);
  friend bool operator==(const Matrix3&, const Matrix3&) = default;
  friend auto operator<=>(const Matrix3& a, const Matrix3& b) { return a.rows <=> b.rows; }

  std::string to_string() const;
};

/// A linear operator on Witt, Virasoro (homogeneous form) or sl2 (matrix).
/// Matrix convention: row i holds the coordinates of R(e_i), that is
/// R(e_i) = Σ_j rows[i][j] e_j.
class OperatorSpec {
 public:
  OperatorSpec(HomogeneousOperator op);  // NOLINT(google-explicit-constructor)
  OperatorSpec(Matrix3 m);  // NOLINT(google-explicit-constructor)

  AlgebraKind algebra() const;
  const HomogeneousOperator* homogeneous() const noexcept {
    return std::get_if<HomogeneousOperator>(&op_);
  }
  const Matrix3* matrix() const noexcept { return std::get_if<Matrix3>(&op_); }

 private:
  std::variant<HomogeneousOperator, Matrix3> op_;
};

/// Image of a basis generator, nullopt when a needed coefficient is unknown.
std::optional<Element> apply_basis(const OperatorSpec& op, const BasisIndex& x);

/// Linear extension of apply_basis. Throws AlgebraMismatch.
std::optional<Element> apply(const OperatorSpec& op, const Element& x);

/// [R(x),R(y)] - δ·R([R(x),y] + [x,R(y)]). δ = -1 is the anti-Rota-Baxter
/// identity. nullopt means skipped.
std::optional<Element> delta_rb_residual(const OperatorSpec& op, const BasisIndex& x,
                                         const BasisIndex& y, const Scalar& delta);

/// [[R(x),R(y)],z] + [[R(y),R(z)],x] + [[R(z),R(x)],y].
std::optional<Element> strong_residual(const OperatorSpec& op, const BasisIndex& x,
                                       const BasisIndex& y, const BasisIndex& z);

/// d([x,y]) - δ([d(x),y] + [x,d(y)]).
std::optional<Element> delta_derivation_residual(const OperatorSpec& op, const BasisIndex& x,
                                                 const BasisIndex& y, const Scalar& delta);

struct IdentityKind {
  enum class Type { AntiRB, DeltaRB, Strong, DeltaDerivation };
  Type type = Type::AntiRB;
  Scalar delta = Scalar(-1);

  static IdentityKind anti_rb() { return {Type::AntiRB, Scalar(-1)}; }
  static IdentityKind delta_rb(Scalar d) { return {Type::DeltaRB, std::move(d)}; }
  static IdentityKind strong() { return {Type::Strong, Scalar(-1)}; }
  static IdentityKind delta_derivation(Scalar d) { return {Type::DeltaDerivation, std::move(d)}; }

  std::string to_string() const;
};

/// Checks the identity on every unordered pair (strictly increasing triple
/// for Strong) of distinct in-window basis generators. Coincident arguments
/// are omitted because every residual vanishes on them identically.
VerificationReport verify_identity(const OperatorSpec& op, std::int64_t window,
                                   const IdentityKind& kind);

/// True iff every in-window basis image lies in the graded component of
/// degree (index + k); V_0 = span{L_0, C}. Throws AlgebraMismatch for a
/// matrix operator.
bool is_graded(const OperatorSpec& op, std::int64_t window);

/// Self-test of the verifier: res(x,y) == -res(y,x) for all ordered pairs.
VerificationReport residual_antisymmetry_check(const OperatorSpec& op, std::int64_t window,
                                               const Scalar& delta);

}  // namespace antirb
