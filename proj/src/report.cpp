#include "antirb/report.hpp"

#include <algorithm>

#include "antirb/errors.hpp"

namespace antirb {

void VerificationReport::canonicalize() {
  std::stable_sort(violations.begin(), violations.end(),
                   [](const Violation& a, const Violation& b) { return a.inputs < b.inputs; });
}

void VerificationReport::merge(const VerificationReport& other) {
  checked += other.checked;
  skipped += other.skipped;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  canonicalize();
}

VerificationReport check_jacobi(AlgebraKind algebra, std::int64_t window) {
  if (window < 1) throw WindowTooSmall("jacobi check needs window >= 1");
  const auto basis = basis_in_window(algebra, window);
  VerificationReport report;
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      const Element xy = basis_bracket(algebra, x, y);
      for (const auto& z : basis) {
        const Element ez = Element::basis(algebra, z);
        const Element ex = Element::basis(algebra, x);
        const Element ey = Element::basis(algebra, y);
        Element residual = bracket(xy, ez) + bracket(basis_bracket(algebra, y, z), ex) +
                           bracket(basis_bracket(algebra, z, x), ey);
        ++report.checked;
        if (!residual.is_zero()) report.violations.push_back({{x, y, z}, std::move(residual)});
      }
    }
  }
  report.canonicalize();
  return report;
}

VerificationReport check_antisymmetry(AlgebraKind algebra, std::int64_t window) {
  if (window < 1) throw WindowTooSmall("antisymmetry check needs window >= 1");
  const auto basis = basis_in_window(algebra, window);
  VerificationReport report;
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      Element residual = basis_bracket(algebra, x, y) + basis_bracket(algebra, y, x);
      ++report.checked;
      if (!residual.is_zero()) report.violations.push_back({{x, y}, std::move(residual)});
    }
  }
  report.canonicalize();
  return report;
}

}  // namespace antirb
