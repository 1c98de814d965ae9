#pragma once

#include <cstddef>
#include <vector>

#include "antirb/lie.hpp"

namespace antirb {

struct Violation {
  std::vector<BasisIndex> inputs;
  Element residual;
};

/// Outcome of a windowed identity check. Passing means no violations;
/// skipped evaluations never influence the status.
struct VerificationReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }

  /// Sorts violations by input tuple in canonical index order.
  void canonicalize();
  /// Merges counts and violations of `other`, then canonicalizes.
  void merge(const VerificationReport& other);
};

}  // namespace antirb
