#include "antirb/operator.hpp"

#include "antirb/errors.hpp"

namespace antirb {

CoefficientSource::CoefficientSource(CoefficientTable table) : source_(std::move(table)) {}
CoefficientSource::CoefficientSource(ClosedFormCoefficients closed) : source_(std::move(closed)) {}

std::optional<Scalar> CoefficientSource::at(std::int64_t j) const {
  if (const auto* t = table()) {
    if (j < t->lo || j > t->hi) return std::nullopt;
    auto it = t->values.find(j);
    return it == t->values.end() ? Scalar() : it->second;
  }
  return closed_form()->fn(j);
}

Matrix3 Matrix3::identity() {
  Matrix3 m;
  for (std::size_t i = 0; i < 3; ++i) m.rows[i][i] = Scalar(1);
  return m;
}

Matrix3 Matrix3::from_ints(const std::array<std::array<std::int64_t, 3>, 3>& v) {
  Matrix3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m.rows[i][j] = Scalar(v[i][j]);
  }
  return m;
}

Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Scalar s;
      for (std::size_t t = 0; t < 3; ++t) s += a.rows[i][t] * b.rows[t][j];
      out.rows[i][j] = s;
    }
  }
  return out;
}

Matrix3 operator*(const Scalar& c, const Matrix3& a) {
  Matrix3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out.rows[i][j] = c * a.rows[i][j];
  }
  return out;
}

std::string Matrix3::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < 3; ++j) {
      if (j > 0) out += ", ";
      out += rows[i][j].to_string();
    }
  }
  return out + ")";
}

OperatorSpec::OperatorSpec(HomogeneousOperator op) : op_(std::move(op)) {
  const auto& h = std::get<HomogeneousOperator>(op_);
  if (h.algebra == AlgebraKind::Sl2) throw AlgebraMismatch("homogeneous operator on sl2");
}

OperatorSpec::OperatorSpec(Matrix3 m) : op_(std::move(m)) {}

AlgebraKind OperatorSpec::algebra() const {
  if (const auto* h = homogeneous()) return h->algebra;
  return AlgebraKind::Sl2;
}

std::optional<Element> apply_basis(const OperatorSpec& op, const BasisIndex& x) {
  const AlgebraKind algebra = op.algebra();
  if (!x.belongs_to(algebra)) {
    throw AlgebraMismatch(x.to_string() + " is not in " + to_string(algebra));
  }
  Element out(algebra);
  if (const auto* m = op.matrix()) {
    const auto& row = m->rows[static_cast<std::size_t>(x.n - 1)];
    for (std::size_t j = 0; j < 3; ++j) {
      out.add_term(BasisIndex::sl2(static_cast<std::int64_t>(j) + 1), row[j]);
    }
    return out;
  }
  const auto& h = *op.homogeneous();
  const std::int64_t k = h.degree;
  if (x.is_central()) {
    out.add_term(generator(algebra, k), h.mu);
    if (k == 0) out.add_term(BasisIndex::central(), h.nu);
  } else {
    const std::int64_t target = x.n + k;
    auto f = h.coeffs.at(target);
    if (!f) return std::nullopt;
    out.add_term(generator(algebra, target), *f);
    if (algebra == AlgebraKind::Virasoro && target == 0) {
      out.add_term(BasisIndex::central(), h.theta);
    }
  }
  if (auto it = h.extra_terms.find(x); it != h.extra_terms.end()) out += it->second;
  return out;
}

std::optional<Element> apply(const OperatorSpec& op, const Element& x) {
  if (x.algebra() != op.algebra()) throw AlgebraMismatch("operator applied to foreign element");
  Element out(x.algebra());
  for (const auto& [idx, c] : x.terms()) {
    auto image = apply_basis(op, idx);
    if (!image) return std::nullopt;
    out += c * *image;
  }
  return out;
}

std::optional<Element> delta_rb_residual(const OperatorSpec& op, const BasisIndex& x,
                                         const BasisIndex& y, const Scalar& delta) {
  const AlgebraKind algebra = op.algebra();
  auto rx = apply_basis(op, x);
  auto ry = apply_basis(op, y);
  if (!rx || !ry) return std::nullopt;
  const Element ex = Element::basis(algebra, x);
  const Element ey = Element::basis(algebra, y);
  auto inner = apply(op, bracket(*rx, ey) + bracket(ex, *ry));
  if (!inner) return std::nullopt;
  return bracket(*rx, *ry) - delta * *inner;
}

std::optional<Element> strong_residual(const OperatorSpec& op, const BasisIndex& x,
                                       const BasisIndex& y, const BasisIndex& z) {
  const AlgebraKind algebra = op.algebra();
  auto rx = apply_basis(op, x);
  auto ry = apply_basis(op, y);
  auto rz = apply_basis(op, z);
  if (!rx || !ry || !rz) return std::nullopt;
  return bracket(bracket(*rx, *ry), Element::basis(algebra, z)) +
         bracket(bracket(*ry, *rz), Element::basis(algebra, x)) +
         bracket(bracket(*rz, *rx), Element::basis(algebra, y));
}

std::optional<Element> delta_derivation_residual(const OperatorSpec& op, const BasisIndex& x,
                                                 const BasisIndex& y, const Scalar& delta) {
  const AlgebraKind algebra = op.algebra();
  auto dx = apply_basis(op, x);
  auto dy = apply_basis(op, y);
  auto dxy = apply(op, basis_bracket(algebra, x, y));
  if (!dx || !dy || !dxy) return std::nullopt;
  const Element ex = Element::basis(algebra, x);
  const Element ey = Element::basis(algebra, y);
  return *dxy - delta * (bracket(*dx, ey) + bracket(ex, *dy));
}

std::string IdentityKind::to_string() const {
  switch (type) {
    case Type::AntiRB:
      return "anti-rota-baxter";
    case Type::DeltaRB:
      return "delta-rota-baxter(" + delta.to_string() + ")";
    case Type::Strong:
      return "strong";
    case Type::DeltaDerivation:
      return "delta-derivation(" + delta.to_string() + ")";
  }
  return "?";
}

VerificationReport verify_identity(const OperatorSpec& op, std::int64_t window,
                                   const IdentityKind& kind) {
  if (window < 1) throw WindowTooSmall("verification needs window >= 1");
  const auto basis = basis_in_window(op.algebra(), window);
  VerificationReport report;
  auto record = [&report](std::vector<BasisIndex> inputs, std::optional<Element> residual) {
    if (!residual) {
      ++report.skipped;
      return;
    }
    ++report.checked;
    if (!residual->is_zero()) report.violations.push_back({std::move(inputs), std::move(*residual)});
  };
  const std::size_t n = basis.size();
  if (kind.type == IdentityKind::Type::Strong) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t t = j + 1; t < n; ++t) {
          record({basis[i], basis[j], basis[t]}, strong_residual(op, basis[i], basis[j], basis[t]));
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (kind.type == IdentityKind::Type::DeltaDerivation) {
          record({basis[i], basis[j]}, delta_derivation_residual(op, basis[i], basis[j], kind.delta));
        } else {
          record({basis[i], basis[j]}, delta_rb_residual(op, basis[i], basis[j], kind.delta));
        }
      }
    }
  }
  report.canonicalize();
  return report;
}

namespace {

bool in_component(AlgebraKind algebra, const BasisIndex& idx, std::int64_t degree) {
  if (idx.is_central()) return algebra == AlgebraKind::Virasoro && degree == 0;
  return idx.n == degree;
}

}  // namespace

bool is_graded(const OperatorSpec& op, std::int64_t window) {
  const auto* h = op.homogeneous();
  if (h == nullptr) throw AlgebraMismatch("grading is defined only for Witt/Virasoro operators");
  for (const auto& x : basis_in_window(h->algebra, window)) {
    auto image = apply_basis(op, x);
    if (!image) continue;
    const std::int64_t source_degree = x.is_central() ? 0 : x.n;
    for (const auto& idx : image->support()) {
      if (!in_component(h->algebra, idx, source_degree + h->degree)) return false;
    }
  }
  return true;
}

VerificationReport residual_antisymmetry_check(const OperatorSpec& op, std::int64_t window,
                                               const Scalar& delta) {
  const auto basis = basis_in_window(op.algebra(), window);
  VerificationReport report;
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      auto xy = delta_rb_residual(op, x, y, delta);
      auto yx = delta_rb_residual(op, y, x, delta);
      if (!xy || !yx) {
        ++report.skipped;
        continue;
      }
      ++report.checked;
      Element sum = *xy + *yx;
      if (!sum.is_zero()) report.violations.push_back({{x, y}, std::move(sum)});
    }
  }
  report.canonicalize();
  return report;
}

}  // namespace antirb
