#include "antirb/witt_virasoro.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "antirb/errors.hpp"

namespace antirb {

namespace {

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

bool divides(std::int64_t l, std::int64_t x) { return l != 0 && x % l == 0; }

// The nonzero branch of f(m)(f(0)(2m-k) + (m+k)f(m)) = 0 with f(0) = 1.
Scalar dichotomy_value(std::int64_t k, std::int64_t m) {
  return Scalar(Rational(k - 2 * m, m + k));
}

std::string kv(const std::string& key, const Scalar& value) {
  return key + "=" + value.to_string();
}

}  // namespace

std::string to_string(WittFamilyTag tag) {
  switch (tag) {
    case WittFamilyTag::I:
      return "I";
    case WittFamilyTag::II:
      return "II";
    case WittFamilyTag::III_thm:
      return "III_thm";
    case WittFamilyTag::III_prop4:
      return "III_prop4";
    case WittFamilyTag::Deg0:
      return "Deg0";
    case WittFamilyTag::SupportOrigin:
      return "SupportOrigin";
    case WittFamilyTag::SupportMinusK:
      return "SupportMinusK";
  }
  return "?";
}

std::optional<WittFamilyTag> parse_witt_family_tag(const std::string& name) {
  for (auto tag : {WittFamilyTag::I, WittFamilyTag::II, WittFamilyTag::III_thm,
                   WittFamilyTag::III_prop4, WittFamilyTag::Deg0, WittFamilyTag::SupportOrigin,
                   WittFamilyTag::SupportMinusK}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

bool is_paper_family(WittFamilyTag tag) { return tag != WittFamilyTag::SupportOrigin; }

std::string WittFamily::label() const {
  std::string out = to_string(tag) + "(k=" + std::to_string(k);
  if (tag == WittFamilyTag::III_thm || tag == WittFamilyTag::III_prop4) {
    out += ",l=" + std::to_string(l);
  }
  const char* name = "alpha";
  if (tag == WittFamilyTag::II) name = "beta";
  if (tag == WittFamilyTag::III_thm || tag == WittFamilyTag::III_prop4) name = "gamma";
  return out + "," + kv(name, param) + ")";
}

ClosedFormCoefficients witt_family_coefficients(const WittFamily& family) {
  const std::int64_t k = family.k;
  const std::int64_t l = family.l;
  const Scalar p = family.param;
  auto require = [&family](bool ok, const char* what) {
    if (!ok) throw InvalidFamilyParams(family.label() + ": " + what);
  };
  ClosedFormCoefficients out{family.label(), {}};
  switch (family.tag) {
    case WittFamilyTag::I:
      out.fn = [k, p](std::int64_t j) { return j == -k ? p : Scalar(); };
      break;
    case WittFamilyTag::SupportMinusK:
      require(k != 0, "requires k != 0");
      out.fn = [k, p](std::int64_t j) { return j == -k ? p : Scalar(); };
      break;
    case WittFamilyTag::II:
      require(k != 0, "requires k != 0");
      require(!p.is_zero(), "requires beta != 0");
      out.fn = [k, p](std::int64_t j) {
        if (j == 0) return p;
        if (j == -k) return Scalar(4) * p;
        return Scalar();
      };
      break;
    case WittFamilyTag::III_thm:
    case WittFamilyTag::III_prop4: {
      require(k != 0, "requires k != 0");
      require(l != 0, "requires l != 0");
      require(!divides(l, k), "requires l not dividing k");
      require(!p.is_zero(), "requires gamma != 0");
      // -k is never a multiple of l here, so the denominators never vanish.
      const std::int64_t numerator_shift = family.tag == WittFamilyTag::III_thm ? 3 * k : k;
      out.fn = [k, l, p, numerator_shift](std::int64_t j) {
        if (!divides(l, j)) return Scalar();
        return Scalar(Rational(numerator_shift - 2 * j, j + k)) * p;
      };
      break;
    }
    case WittFamilyTag::Deg0:
      require(k == 0, "requires k == 0");
      out.fn = [p](std::int64_t j) { return j == 0 ? p : Scalar(); };
      break;
    case WittFamilyTag::SupportOrigin:
      out.fn = [p](std::int64_t j) { return j == 0 ? p : Scalar(); };
      break;
  }
  return out;
}

OperatorSpec build_witt_family(const WittFamily& family) {
  HomogeneousOperator op{AlgebraKind::Witt, family.degree(), witt_family_coefficients(family),
                         Scalar(), Scalar(), Scalar(), {}};
  return OperatorSpec(std::move(op));
}

std::string to_string(VirFamilyTag tag) {
  switch (tag) {
    case VirFamilyTag::Deg0:
      return "Deg0";
    case VirFamilyTag::I:
      return "I";
    case VirFamilyTag::II:
      return "II";
    case VirFamilyTag::III:
      return "III";
    case VirFamilyTag::IV_printed:
      return "IV_printed";
    case VirFamilyTag::IV_signflip:
      return "IV_signflip";
  }
  return "?";
}

std::optional<VirFamilyTag> parse_vir_family_tag(const std::string& name) {
  for (auto tag : {VirFamilyTag::Deg0, VirFamilyTag::I, VirFamilyTag::II, VirFamilyTag::III,
                   VirFamilyTag::IV_printed, VirFamilyTag::IV_signflip}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

std::string VirFamily::label() const {
  std::string out = to_string(tag) + "(k=" + std::to_string(k);
  switch (tag) {
    case VirFamilyTag::Deg0:
      out += "," + kv("alpha", alpha) + "," + kv("theta", theta) + "," + kv("mu", mu) + "," +
             kv("nu", nu);
      break;
    case VirFamilyTag::I:
      out += "," + kv("theta", theta);
      break;
    case VirFamilyTag::II:
      out += "," + kv("alpha", alpha);
      break;
    case VirFamilyTag::III:
      out += "," + kv("beta", beta) + "," + kv("vartheta", vartheta);
      break;
    case VirFamilyTag::IV_printed:
    case VirFamilyTag::IV_signflip:
      out += "," + kv("mu", mu);
      break;
  }
  return out + ")";
}

OperatorSpec build_vir_family(const VirFamily& family) {
  const std::int64_t k = family.k;
  auto require = [&family](bool ok, const char* what) {
    if (!ok) throw InvalidFamilyParams(family.label() + ": " + what);
  };
  HomogeneousOperator op{AlgebraKind::Virasoro, family.degree(),
                         ClosedFormCoefficients{family.label(), {}}, Scalar(), Scalar(), Scalar(),
                         {}};
  ClosedFormCoefficients coeffs{family.label(), {}};
  switch (family.tag) {
    case VirFamilyTag::Deg0: {
      require(k == 0, "requires k == 0");
      const Scalar alpha = family.alpha;
      coeffs.fn = [alpha](std::int64_t j) { return j == 0 ? alpha : Scalar(); };
      op.theta = family.theta;
      op.mu = family.mu;
      op.nu = family.nu;
      break;
    }
    case VirFamilyTag::I:
      require(k != 0, "requires k != 0");
      coeffs.fn = [](std::int64_t) { return Scalar(); };
      op.theta = family.theta;
      break;
    case VirFamilyTag::II: {
      require(k != 0, "requires k != 0");
      require(!family.alpha.is_zero(), "requires alpha != 0");
      const Scalar alpha = family.alpha;
      coeffs.fn = [k, alpha](std::int64_t j) { return j == -k ? alpha : Scalar(); };
      break;
    }
    case VirFamilyTag::III: {
      require(k != 0, "requires k != 0");
      require(!family.beta.is_zero(), "requires beta != 0");
      const Scalar beta = family.beta;
      coeffs.fn = [k, beta](std::int64_t j) {
        if (j == 0) return beta;
        if (j == -k) return Scalar(4) * beta;
        return Scalar();
      };
      op.theta = family.vartheta;
      break;
    }
    case VirFamilyTag::IV_printed:
    case VirFamilyTag::IV_signflip: {
      require(k != 0, "requires k != 0");
      require(!family.mu.is_zero(), "requires mu != 0");
      Scalar c = Scalar(Rational(k * k - 1, 24)) * family.mu;
      if (family.tag == VirFamilyTag::IV_signflip) c = -c;
      coeffs.fn = [k, c](std::int64_t j) { return j == k ? c : Scalar(); };
      op.mu = family.mu;
      break;
    }
  }
  op.coeffs = std::move(coeffs);
  return OperatorSpec(std::move(op));
}

std::optional<Scalar> functional_eq_residual(const CoefficientSource& f, std::int64_t k,
                                             std::int64_t m, std::int64_t n) {
  auto fm = f.at(m);
  auto fn = f.at(n);
  auto fmn = f.at(m + n);
  if (!fm || !fn || !fmn) return std::nullopt;
  const Scalar lhs = *fm * *fn * Scalar(n - m);
  const Scalar rhs = *fmn * (*fm * Scalar(m - n + k) + *fn * Scalar(m - n - k));
  return lhs - rhs;
}

bool window_consistent(const CoefficientSource& f, std::int64_t k, std::int64_t window) {
  for (std::int64_t m = -window; m <= window; ++m) {
    for (std::int64_t n = std::max(-window, -window - m); n <= std::min(window, window - m); ++n) {
      auto r = functional_eq_residual(f, k, m, n);
      if (!r || !r->is_zero()) return false;
    }
  }
  return true;
}

std::string to_string(SolverBranch branch) {
  return branch == SolverBranch::F0Nonzero ? "f0" : "f0zero";
}

std::string to_string(Normalization n) {
  return n == Normalization::F0IsOne ? "f(0)=1" : "f(-k)=1";
}

Scalar SolutionCandidate::value(std::int64_t m) const {
  auto it = values.find(m);
  return it == values.end() ? Scalar() : it->second;
}

std::map<std::int64_t, Scalar> SolutionCandidate::nonzero_values() const {
  std::map<std::int64_t, Scalar> out;
  for (const auto& [m, v] : values) {
    if (!v.is_zero()) out.emplace(m, v);
  }
  return out;
}

CoefficientTable SolutionCandidate::as_table() const {
  return CoefficientTable{-window, window, nonzero_values()};
}

namespace {

// Periodic dichotomy pattern on lZ with the given f(0).
Scalar periodic_value(std::int64_t k, std::int64_t l, const Scalar& f0, std::int64_t x) {
  if (!divides(l, x)) return Scalar();
  if (x == 0) return f0;
  if (x == -k) return Scalar();
  return f0 * dichotomy_value(k, x);
}

std::optional<std::int64_t> periodic_period(const SolutionCandidate& c) {
  if (c.normalization != Normalization::F0IsOne) return std::nullopt;
  std::optional<std::int64_t> l;
  for (const auto& [m, v] : c.values) {
    if (m != 0 && !v.is_zero() && (!l || abs64(m) < *l)) l = abs64(m);
  }
  if (!l) return std::nullopt;
  const Scalar f0 = c.value(0);
  for (const auto& [m, v] : c.values) {
    if (v != periodic_value(c.k, *l, f0, m)) return std::nullopt;
  }
  return l;
}

}  // namespace

CoefficientTable natural_extension(const SolutionCandidate& c, std::int64_t new_window) {
  CoefficientTable table{-new_window, new_window, {}};
  if (auto l = periodic_period(c)) {
    const Scalar f0 = c.value(0);
    for (std::int64_t x = -new_window; x <= new_window; ++x) {
      Scalar v = periodic_value(c.k, *l, f0, x);
      if (!v.is_zero()) table.values.emplace(x, std::move(v));
    }
    return table;
  }
  table.values = c.nonzero_values();
  return table;
}

namespace {

// Depth-first search over the dichotomy choices with f(0) = 1. Indices are
// assigned forced-first, then by increasing |m|; every constraint (a, b) is
// checked as soon as a, b and a+b all carry values.
class DichotomySolver {
 public:
  DichotomySolver(std::int64_t k, std::int64_t window) : k_(k), w_(window) {
    const std::size_t size = static_cast<std::size_t>(2 * w_ + 1);
    values_.assign(size, Scalar());
    rank_.assign(size, 0);

    std::vector<std::int64_t> forced{0};
    if (k_ != 0) forced.push_back(-k_);
    if (k_ != 0 && k_ % 2 == 0) forced.push_back(k_ / 2);
    order_ = forced;
    for (std::int64_t r = 1; r <= w_; ++r) {
      for (std::int64_t m : {r, -r}) {
        if (std::find(forced.begin(), forced.end(), m) == forced.end()) order_.push_back(m);
      }
    }
    forced_count_ = forced.size();
    for (std::size_t i = 0; i < order_.size(); ++i) rank_[pos(order_[i])] = i;
    values_[pos(0)] = Scalar(1);

    buckets_.assign(order_.size(), {});
    for (std::int64_t a = -w_; a <= w_; ++a) {
      for (std::int64_t b = a + 1; b <= w_; ++b) {
        const std::int64_t s = a + b;
        if (s < -w_ || s > w_) continue;
        const std::size_t ready = std::max({rank_[pos(a)], rank_[pos(b)], rank_[pos(s)]});
        buckets_[ready].emplace_back(a, b);
      }
    }
  }

  std::vector<std::map<std::int64_t, Scalar>> run() {
    solutions_.clear();
    for (std::size_t d = 0; d < forced_count_; ++d) {
      if (!bucket_ok(d)) return {};
    }
    dfs(forced_count_);
    return solutions_;
  }

 private:
  std::size_t pos(std::int64_t m) const { return static_cast<std::size_t>(m + w_); }
  const Scalar& f(std::int64_t m) const { return values_[pos(m)]; }

  bool bucket_ok(std::size_t depth) const {
    for (const auto& [m, n] : buckets_[depth]) {
      const Scalar lhs = f(m) * f(n) * Scalar(n - m);
      const Scalar rhs = f(m + n) * (f(m) * Scalar(m - n + k_) + f(n) * Scalar(m - n - k_));
      if (lhs != rhs) return false;
    }
    return true;
  }

  void dfs(std::size_t depth) {
    if (depth == order_.size()) {
      std::map<std::int64_t, Scalar> out;
      for (std::int64_t m = -w_; m <= w_; ++m) out.emplace(m, f(m));
      solutions_.push_back(std::move(out));
      return;
    }
    const std::int64_t m = order_[depth];
    for (const Scalar& choice : {Scalar(), dichotomy_value(k_, m)}) {
      values_[pos(m)] = choice;
      if (bucket_ok(depth)) dfs(depth + 1);
      // Both choices coincide where the dichotomy value is zero.
      if (choice.is_zero() && dichotomy_value(k_, m).is_zero()) break;
    }
    values_[pos(m)] = Scalar();
  }

  std::int64_t k_;
  std::int64_t w_;
  std::vector<Scalar> values_;
  std::vector<std::size_t> rank_;
  std::vector<std::int64_t> order_;
  std::size_t forced_count_ = 0;
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> buckets_;
  std::vector<std::map<std::int64_t, Scalar>> solutions_;
};

void mark_stability(SolutionCandidate& c) {
  const std::int64_t doubled = 2 * c.window;
  c.stable = window_consistent(CoefficientSource(natural_extension(c, doubled)), c.k, doubled);
}

}  // namespace

std::vector<SolutionCandidate> enumerate_witt_solutions(std::int64_t k, std::int64_t window,
                                                        SolverBranch branch) {
  if (window < 2) throw WindowTooSmall("solver needs window >= 2");
  if (abs64(k) > window) throw WindowTooSmall("solver needs |k| <= window");
  std::vector<SolutionCandidate> out;
  if (branch == SolverBranch::F0Nonzero) {
    for (auto& values : DichotomySolver(k, window).run()) {
      SolutionCandidate c{k, window, std::move(values), Normalization::F0IsOne, false};
      mark_stability(c);
      out.push_back(std::move(c));
    }
  } else if (k != 0) {
    // With f(0) = 0 the n = 0 specialization reads (m+k) f(m)^2 = 0.
    SolutionCandidate c{k, window, {}, Normalization::FMinusKIsOne, false};
    for (std::int64_t m = -window; m <= window; ++m) c.values.emplace(m, Scalar(m == -k ? 1 : 0));
    if (window_consistent(CoefficientSource(c.as_table()), k, window)) {
      mark_stability(c);
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const SolutionCandidate& a, const SolutionCandidate& b) {
    return a.values < b.values;
  });
  return out;
}

std::string FamilyMatch::to_string() const {
  std::string out = antirb::to_string(tag);
  if (tag == WittFamilyTag::III_thm || tag == WittFamilyTag::III_prop4) {
    out += "(l=" + std::to_string(l) + ")";
  }
  return out;
}

bool Classification::paper_classified() const {
  return std::any_of(matches.begin(), matches.end(),
                     [](const FamilyMatch& m) { return is_paper_family(m.tag); });
}

namespace {

// λ != 0 with v = λ·g on every index of v, if one exists.
std::optional<Scalar> proportional(const std::map<std::int64_t, Scalar>& v,
                                   const std::function<Scalar(std::int64_t)>& g) {
  std::optional<Scalar> lambda;
  for (const auto& [m, value] : v) {
    const Scalar gm = g(m);
    if (gm.is_zero()) {
      if (!value.is_zero()) return std::nullopt;
      continue;
    }
    const Scalar ratio = value / gm;
    if (!lambda) {
      if (ratio.is_zero()) return std::nullopt;
      lambda = ratio;
    } else if (*lambda != ratio) {
      return std::nullopt;
    }
  }
  return lambda;
}

}  // namespace

Classification classify_solution(const SolutionCandidate& c) {
  Classification out;
  const std::int64_t k = c.k;
  auto try_family = [&](const WittFamily& family) {
    auto lambda = proportional(c.values, witt_family_coefficients(family).fn);
    if (lambda) out.matches.push_back({family.tag, family.l, *lambda});
  };
  try_family({WittFamilyTag::I, k, 0, Scalar(1)});
  if (k != 0 && k % 2 == 0) try_family({WittFamilyTag::II, k / 2, 0, Scalar(1)});
  if (k != 0) {
    for (auto tag : {WittFamilyTag::III_thm, WittFamilyTag::III_prop4}) {
      for (std::int64_t l = 2; l <= c.window; ++l) {
        if (!divides(l, k)) try_family({tag, k, l, Scalar(1)});
      }
    }
  }
  if (k == 0) try_family({WittFamilyTag::Deg0, 0, 0, Scalar(1)});
  if (k != 0) try_family({WittFamilyTag::SupportMinusK, k, 0, Scalar(1)});
  try_family({WittFamilyTag::SupportOrigin, k, 0, Scalar(1)});
  return out;
}

std::vector<Scalar> family_parameter_samples() {
  return {Scalar(1), Scalar::ratio(-5, 7), Scalar(Rational(1), Rational(1))};
}

namespace {

std::string describe_failure(const std::string& label, const VerificationReport& report) {
  std::string inputs;
  for (const auto& idx : report.violations.front().inputs) {
    if (!inputs.empty()) inputs += ",";
    inputs += idx.to_string();
  }
  return label + ": anti-Rota-Baxter identity fails at " +
         std::to_string(report.violations.size()) + " of " + std::to_string(report.checked) +
         " pairs; first at (" + inputs + ") with residual " +
         report.violations.front().residual.to_string();
}

std::string describe_values(const SolutionCandidate& c) {
  std::string out = "{";
  for (const auto& [m, v] : c.nonzero_values()) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(m) + ": " + v.to_string();
  }
  return out + "}";
}

void add_family(AdjudicationReport& report, const std::string& label, const OperatorSpec& op) {
  FamilyVerdict verdict{label, verify_identity(op, report.window, IdentityKind::anti_rb())};
  if (!verdict.report.passed()) report.findings.push_back(describe_failure(label, verdict.report));
  report.families.push_back(std::move(verdict));
}

void adjudicate_witt(AdjudicationReport& report) {
  const std::int64_t k = report.degree;
  const auto samples = family_parameter_samples();
  auto add = [&report](const WittFamily& f) { add_family(report, f.label(), build_witt_family(f)); };
  for (const auto& s : samples) add({WittFamilyTag::I, k, 0, s});
  if (k != 0 && k % 2 == 0) {
    for (const auto& s : samples) add({WittFamilyTag::II, k / 2, 0, s});
  }
  if (k != 0) {
    for (auto tag : {WittFamilyTag::III_thm, WittFamilyTag::III_prop4}) {
      for (std::int64_t l = 2; l <= 4; ++l) {
        if (divides(l, k)) continue;
        for (const auto& s : samples) add({tag, k, l, s});
      }
    }
    for (const auto& s : samples) add({WittFamilyTag::SupportMinusK, k, 0, s});
  } else {
    for (const auto& s : samples) add({WittFamilyTag::Deg0, 0, 0, s});
  }
  for (const auto& s : samples) add({WittFamilyTag::SupportOrigin, k, 0, s});

  for (auto branch : {SolverBranch::F0Nonzero, SolverBranch::F0Zero}) {
    for (auto& c : enumerate_witt_solutions(k, report.window, branch)) {
      Classification cls = classify_solution(c);
      if (c.stable && !cls.paper_classified()) {
        std::string tags;
        for (const auto& m : cls.matches) tags += (tags.empty() ? "" : ",") + m.to_string();
        report.findings.push_back("stable candidate " + describe_values(c) + " [" +
                                  (tags.empty() ? "no pattern" : tags) +
                                  "] is unclassified with respect to the printed families");
      }
      report.candidates.push_back({branch, std::move(c), std::move(cls)});
    }
  }
}

void adjudicate_virasoro(AdjudicationReport& report) {
  const std::int64_t k = report.degree;
  const auto samples = family_parameter_samples();
  auto add = [&report](const VirFamily& f) { add_family(report, f.label(), build_vir_family(f)); };
  if (k == 0) {
    const std::vector<std::array<Scalar, 4>> grid{
        {Scalar(1), Scalar(2), Scalar(3), Scalar(4)},
        {Scalar(1), Scalar::ratio(1, 2), Scalar(1), Scalar::ratio(1, 2)},
        {Scalar::ratio(-5, 7), Scalar(Rational(1), Rational(1)), Scalar(1), Scalar(0)}};
    for (const auto& g : grid) {
      VirFamily f;
      f.tag = VirFamilyTag::Deg0;
      f.k = 0;
      f.alpha = g[0];
      f.theta = g[1];
      f.mu = g[2];
      f.nu = g[3];
      add(f);
    }
    return;
  }
  for (const auto& s : samples) {
    VirFamily f;
    f.tag = VirFamilyTag::I;
    f.k = k;
    f.theta = s;
    add(f);
  }
  for (const auto& s : samples) {
    VirFamily f;
    f.tag = VirFamilyTag::II;
    f.k = k;
    f.alpha = s;
    add(f);
  }
  if (k % 2 == 0) {
    for (const auto& s : samples) {
      VirFamily f;
      f.tag = VirFamilyTag::III;
      f.k = k / 2;
      f.beta = s;
      f.vartheta = Scalar(1);
      add(f);
    }
  }
  std::size_t printed_pass = 0;
  std::size_t signflip_pass = 0;
  for (auto tag : {VirFamilyTag::IV_printed, VirFamilyTag::IV_signflip}) {
    for (const auto& s : samples) {
      VirFamily f;
      f.tag = tag;
      f.k = k;
      f.mu = s;
      add(f);
      if (report.families.back().report.passed()) {
        ++(tag == VirFamilyTag::IV_printed ? printed_pass : signflip_pass);
      }
    }
  }
  const std::size_t n = samples.size();
  report.findings.push_back("IV: printed coefficient +(k^2-1)/24 passes " +
                            std::to_string(printed_pass) + "/" + std::to_string(n) +
                            " samples; sign-flipped -(k^2-1)/24 passes " +
                            std::to_string(signflip_pass) + "/" + std::to_string(n) +
                            (k * k == 1 ? " (variants coincide at |k| = 1)" : ""));
}

}  // namespace

AdjudicationReport adjudicate(AlgebraKind algebra, std::int64_t k, std::int64_t window) {
  if (algebra == AlgebraKind::Sl2) throw AlgebraMismatch("adjudicate covers witt and virasoro");
  if (window < 2 * abs64(k) + 4) throw WindowTooSmall("adjudication needs window >= 2|k|+4");
  AdjudicationReport report{algebra, k, window, {}, {}, {}};
  if (algebra == AlgebraKind::Witt) {
    adjudicate_witt(report);
  } else {
    adjudicate_virasoro(report);
  }
  return report;
}

}  // namespace antirb
