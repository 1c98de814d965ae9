#include "antirb/sl2.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "antirb/errors.hpp"

namespace antirb {

namespace {

std::array<Scalar, 9> entries_of(const Matrix3& M) {
  return {M(0, 0), M(0, 1), M(0, 2), M(1, 0), M(1, 1), M(1, 2), M(2, 0), M(2, 1), M(2, 2)};
}

Matrix3 from_entries(const std::array<Scalar, 9>& e) {
  Matrix3 M;
  for (std::size_t i = 0; i < 9; ++i) M(i / 3, i % 3) = e[i];
  return M;
}

const Scalar& param(const Sl2Params& params, const std::string& name, Sl2Family tag) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw InvalidFamilyParams(to_string(tag) + ": missing parameter '" + name + "'");
  }
  return it->second;
}

}  // namespace

std::array<Scalar, 9> relations_residuals(const Matrix3& M) {
  const auto e = entries_of(M);
  std::array<Scalar, 9> out;
  for (std::size_t i = 0; i < 9; ++i) out[i] = sys1_relation(i, e);
  return out;
}

std::string to_string(Sl2Family tag) {
  return "F" + std::to_string(static_cast<int>(tag) + 1);
}

std::optional<Sl2Family> parse_sl2_family(const std::string& name) {
  for (auto tag : kAllSl2Families) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

const Sl2FamilyPattern& sl2_pattern(Sl2Family tag) {
  static const std::array<Sl2FamilyPattern, 10> patterns{{
      {Sl2Family::F1, {"d", "m"}, "", true},
      {Sl2Family::F2, {"d", "h"}, "h != 0", true},
      {Sl2Family::F3, {"b", "c"}, "c != 0", false},
      {Sl2Family::F4, {"b", "m"}, "b != 0", false},
      {Sl2Family::F5, {"d", "k", "m"}, "k != 0", true},
      {Sl2Family::F6, {"b", "k", "m"}, "b*k != 0", true},
      {Sl2Family::F7, {"b", "c", "d", "m"}, "c != 0", false},
      {Sl2Family::F8, {"a", "l"}, "a*l != 0", false},
      {Sl2Family::F9, {"a", "b", "c", "d", "h"}, "a != 0", false},
      {Sl2Family::F10, {"a", "c", "g"}, "c != 0, a != +-g", false},
  }};
  return patterns[static_cast<std::size_t>(tag)];
}

Matrix3 build_sl2_family(Sl2Family tag, const Sl2Params& params) {
  const auto& pattern = sl2_pattern(tag);
  for (const auto& [name, value] : params) {
    if (std::find(pattern.free_params.begin(), pattern.free_params.end(), name) ==
        pattern.free_params.end()) {
      throw InvalidFamilyParams(to_string(tag) + ": unknown parameter '" + name + "'");
    }
  }
  auto p = [&](const char* name) -> const Scalar& { return param(params, name, tag); };
  auto guard = [&](bool ok) {
    if (!ok) throw ExcludedLocus(pattern.excluded_locus);
  };
  const Scalar zero;
  const Scalar two(2);
  const Scalar four(4);
  switch (tag) {
    case Sl2Family::F1:
      return from_entries({zero, zero, zero, p("d"), zero, zero, zero, zero, p("m")});
    case Sl2Family::F2:
      guard(!p("h").is_zero());
      return from_entries({zero, zero, zero, p("d"), zero, p("h"), zero, zero, zero});
    case Sl2Family::F3:
      guard(!p("c").is_zero());
      return from_entries({zero, p("b"), p("c"), zero, zero, zero, zero, zero, zero});
    case Sl2Family::F4:
      guard(!p("b").is_zero());
      return from_entries({zero, p("b"), zero, zero, zero, zero, zero, zero, p("m")});
    case Sl2Family::F5: {
      const Scalar& k = p("k");
      guard(!k.is_zero());
      return from_entries({zero, zero, zero, p("d"), zero, -k / two, k, zero, p("m")});
    }
    case Sl2Family::F6: {
      const Scalar& k = p("k");
      guard(!(p("b") * k).is_zero());
      return from_entries({zero, p("b"), zero, zero, zero, -k / two, k, zero, p("m")});
    }
    case Sl2Family::F7: {
      const Scalar& b = p("b");
      const Scalar& c = p("c");
      const Scalar& d = p("d");
      guard(!c.is_zero());
      return from_entries(
          {zero, b, c, d, zero, b * d / (four * c), -(b * d) / (two * c), -two * c, p("m")});
    }
    case Sl2Family::F8: {
      const Scalar& a = p("a");
      const Scalar& l = p("l");
      guard(!(a * l).is_zero());
      return from_entries({a, -(l * l) / (four * a), zero, four * a * a * a / (l * l), -a, zero,
                           -four * a * a / l, l, zero});
    }
    case Sl2Family::F9: {
      const Scalar& a = p("a");
      const Scalar& b = p("b");
      const Scalar& c = p("c");
      const Scalar& d = p("d");
      const Scalar& h = p("h");
      guard(!a.is_zero());
      return from_entries({a, b, c, d, a, h, -two * h, -two * c,
                           (b * d - a * a - four * c * h) / (two * a)});
    }
    case Sl2Family::F10: {
      const Scalar& a = p("a");
      const Scalar& c = p("c");
      const Scalar& g = p("g");
      guard(!c.is_zero() && a != g && a != -g);
      const Scalar s = a + g;
      return from_entries({a, four * c * c * g / (s * s), c, a * s * s / (four * c * c), g,
                           s * s / (four * c), -(a * s) / c, -four * c * g / s, -s});
    }
  }
  throw InvalidFamilyParams("unknown sl2 family");
}

std::vector<Sl2Family> match_family(const Matrix3& M) {
  std::vector<Sl2Family> out;
  const Scalar& a = M(0, 0);
  const Scalar& b = M(0, 1);
  const Scalar& c = M(0, 2);
  const Scalar& d = M(1, 0);
  const Scalar& g = M(1, 1);
  const Scalar& h = M(1, 2);
  const Scalar& k = M(2, 0);
  const Scalar& l = M(2, 1);
  const Scalar& m = M(2, 2);
  auto try_build = [&](Sl2Family tag, std::optional<Matrix3> candidate) {
    if (candidate && *candidate == M) out.push_back(tag);
  };
  const Scalar zero;
  const Scalar two(2);
  const Scalar four(4);
  // Patterns are rebuilt without their side conditions, so boundary points
  // (c = 0 in F3, h = 0 in F2, ...) match whenever the formulas are defined.
  try_build(Sl2Family::F1, from_entries({zero, zero, zero, d, zero, zero, zero, zero, m}));
  try_build(Sl2Family::F2, from_entries({zero, zero, zero, d, zero, h, zero, zero, zero}));
  try_build(Sl2Family::F3, from_entries({zero, b, c, zero, zero, zero, zero, zero, zero}));
  try_build(Sl2Family::F4, from_entries({zero, b, zero, zero, zero, zero, zero, zero, m}));
  try_build(Sl2Family::F5, from_entries({zero, zero, zero, d, zero, -k / two, k, zero, m}));
  try_build(Sl2Family::F6, from_entries({zero, b, zero, zero, zero, -k / two, k, zero, m}));
  if (!c.is_zero()) {
    try_build(Sl2Family::F7, from_entries({zero, b, c, d, zero, b * d / (four * c),
                                           -(b * d) / (two * c), -two * c, m}));
  }
  if (!a.is_zero() && !l.is_zero()) {
    try_build(Sl2Family::F8, from_entries({a, -(l * l) / (four * a), zero,
                                           four * a * a * a / (l * l), -a, zero,
                                           -four * a * a / l, l, zero}));
  }
  if (!a.is_zero()) {
    try_build(Sl2Family::F9, from_entries({a, b, c, d, a, h, -two * h, -two * c,
                                           (b * d - a * a - four * c * h) / (two * a)}));
  }
  const Scalar s = a + g;
  if (!c.is_zero() && !s.is_zero()) {
    try_build(Sl2Family::F10,
              from_entries({a, four * c * c * g / (s * s), c, a * s * s / (four * c * c), g,
                            s * s / (four * c), -(a * s) / c, -four * c * g / s, -s}));
  }
  return out;
}

Scalar det(const Matrix3& M) {
  return M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) -
         M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
         M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
}

Matrix3 adjugate(const Matrix3& M) {
  Matrix3 adj;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // Cofactor C_ji lands at (i, j).
      const std::size_t r0 = (j + 1) % 3;
      const std::size_t r1 = (j + 2) % 3;
      const std::size_t c0 = (i + 1) % 3;
      const std::size_t c1 = (i + 2) % 3;
      adj(i, j) = M(r0, c0) * M(r1, c1) - M(r0, c1) * M(r1, c0);
    }
  }
  return adj;
}

Matrix3 inverse(const Matrix3& M) {
  const Scalar d = det(M);
  if (d.is_zero()) throw SingularMatrix();
  return d.inv() * adjugate(M);
}

ParamSampler::ParamSampler(std::uint64_t seed) : engine_(seed) {}

std::int64_t ParamSampler::next_int(std::int64_t lo, std::int64_t hi) {
  // Plain modulo keeps the stream identical across standard libraries.
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational ParamSampler::next_rational() {
  const std::int64_t num = next_int(-9, 9);
  const std::int64_t den = next_int(1, 9);
  return Rational(num, den);
}

Sl2Params sample_sl2_params(Sl2Family tag, ParamSampler& sampler) {
  const auto& pattern = sl2_pattern(tag);
  for (;;) {
    Sl2Params params;
    for (const auto& name : pattern.free_params) params[name] = Scalar(sampler.next_rational());
    try {
      build_sl2_family(tag, params);
      return params;
    } catch (const ExcludedLocus&) {
      // rejected; draw again
    }
  }
}

std::size_t FamilyVerification::relations_pass() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(),
                                                [](const auto& s) { return s.relations_zero; }));
}

std::size_t FamilyVerification::anti_rb_pass() const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](const auto& s) { return s.anti_rb.passed(); }));
}

std::size_t FamilyVerification::strong_pass() const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](const auto& s) { return s.strong.passed(); }));
}

FamilyVerification verify_family(Sl2Family tag, std::size_t samples, std::uint64_t seed) {
  ParamSampler sampler(seed);
  FamilyVerification out{tag, {}};
  for (std::size_t i = 0; i < samples; ++i) {
    FamilySample s;
    s.params = sample_sl2_params(tag, sampler);
    s.matrix = build_sl2_family(tag, s.params);
    const auto residuals = relations_residuals(s.matrix);
    s.relations_zero =
        std::all_of(residuals.begin(), residuals.end(), [](const Scalar& r) { return r.is_zero(); });
    const OperatorSpec op(s.matrix);
    s.anti_rb = verify_identity(op, 1, IdentityKind::anti_rb());
    s.strong = verify_identity(op, 1, IdentityKind::strong());
    out.samples.push_back(std::move(s));
  }
  return out;
}

Matrix3 GridHit::matrix() const {
  Matrix3 M;
  for (std::size_t i = 0; i < 9; ++i) M(i / 3, i % 3) = Scalar(entries[i]);
  return M;
}

GridResult grid_search(std::int64_t range, unsigned threads) {
  if (range < 1) throw WindowTooSmall("grid search needs range >= 1");
  const std::int64_t side = 2 * range + 1;
  const std::int64_t tasks = side * side * side;
  std::vector<std::vector<std::array<std::int64_t, 9>>> per_task(static_cast<std::size_t>(tasks));
  std::atomic<std::int64_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::int64_t task = next.fetch_add(1);
      if (task >= tasks) return;
      std::array<std::int64_t, 9> e{};
      e[0] = task / (side * side) - range;
      e[1] = (task / side) % side - range;
      e[2] = task % side - range;
      auto& hits = per_task[static_cast<std::size_t>(task)];
      // Odometer over the last six entries in lexicographic order.
      for (std::size_t i = 3; i < 9; ++i) e[i] = -range;
      for (;;) {
        bool zero = true;
        for (std::size_t r = 0; r < 9 && zero; ++r) zero = sys1_relation<std::int64_t>(r, e) == 0;
        if (zero) hits.push_back(e);
        std::size_t pos = 8;
        while (pos >= 3 && e[pos] == range) e[pos--] = -range;
        if (pos < 3) break;
        ++e[pos];
      }
    }
  };
  const unsigned n = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  GridResult result;
  result.range = range;
  result.candidates = static_cast<std::uint64_t>(tasks) * static_cast<std::uint64_t>(tasks) *
                      static_cast<std::uint64_t>(tasks);
  for (const auto& hits : per_task) {
    for (const auto& e : hits) {
      GridHit hit{e, {}};
      hit.matches = match_family(hit.matrix());
      if (hit.matches.empty()) result.flagged.push_back(result.hits.size());
      result.hits.push_back(std::move(hit));
    }
  }
  return result;
}

std::optional<Scalar> printed_invertibility_condition(Sl2Family tag, const Sl2Params& params) {
  auto p = [&](const char* name) -> const Scalar& { return param(params, name, tag); };
  switch (tag) {
    case Sl2Family::F6:
      return p("b") * p("k");
    case Sl2Family::F7: {
      const Scalar& b = p("b");
      const Scalar& c = p("c");
      const Scalar& d = p("d");
      const Scalar& m = p("m");
      return d * (b * b * b * d + Scalar(8) * c * c * b * m + Scalar(16) * c * c * c * c);
    }
    case Sl2Family::F9: {
      // Printed with the repeated diagonal entry named g.
      const Scalar& g = p("a");
      const Scalar& b = p("b");
      const Scalar& c = p("c");
      const Scalar& d = p("d");
      const Scalar& h = p("h");
      return b * b * d * d + Scalar(8) * c * c * d * g - Scalar(2) * b * d * g * g +
             g * g * g * g - Scalar(4) * b * c * d * h - Scalar(12) * c * g * g * h +
             Scalar(8) * b * g * h * h;
    }
    default:
      return std::nullopt;
  }
}

bool in_f9_closure(const Matrix3& M) {
  const Scalar two(2);
  const Scalar& a = M(0, 0);
  const Scalar& b = M(0, 1);
  const Scalar& c = M(0, 2);
  const Scalar& d = M(1, 0);
  const Scalar& h = M(1, 2);
  return M(1, 1) == a && M(2, 0) == -two * h && M(2, 1) == -two * c &&
         two * a * M(2, 2) == b * d - a * a - Scalar(4) * c * h;
}

Matrix3 AntiDerivationMatrix::matrix() const {
  const Scalar two(2);
  return from_entries({a11, a12, a13, a21, a11, a23, -two * a23, -two * a13, -two * a11});
}

AntiDerivationMatrix build_antiderivation(Scalar a11, Scalar a12, Scalar a13, Scalar a21,
                                          Scalar a23) {
  return {std::move(a11), std::move(a12), std::move(a13), std::move(a21), std::move(a23)};
}

Scalar antideriv_det(const AntiDerivationMatrix& A) {
  const Scalar two(2);
  return -two * A.a11 * A.a11 * A.a11 + two * A.a11 * A.a12 * A.a21 -
         two * A.a13 * A.a13 * A.a21 + Scalar(4) * A.a11 * A.a13 * A.a23 -
         two * A.a12 * A.a23 * A.a23;
}

AntiDerivationAdjugate antideriv_adjugate_entries(const AntiDerivationMatrix& A) {
  const Scalar two(2);
  return {-two * (A.a11 * A.a11 - A.a13 * A.a23), two * (A.a11 * A.a12 - A.a13 * A.a13),
          A.a12 * A.a23 - A.a11 * A.a13, two * (A.a11 * A.a21 - A.a23 * A.a23),
          A.a13 * A.a21 - A.a11 * A.a23};
}

Matrix3 antideriv_inverse_closed_form(const AntiDerivationMatrix& A) {
  const Scalar d = antideriv_det(A);
  if (d.is_zero()) throw SingularMatrix();
  const auto p = antideriv_adjugate_entries(A);
  if (p.a.is_zero()) throw DivisionByZero();
  const Scalar two(2);
  const Matrix3 shape = from_entries({p.a, p.b, p.c, p.d, p.a, p.h, -two * p.h, -two * p.c,
                                      (p.b * p.d - p.a * p.a - Scalar(4) * p.c * p.h) /
                                          (two * p.a)});
  return d.inv() * shape;
}

BridgeReport bridge_check(const AntiDerivationMatrix& A) {
  const Matrix3 M = A.matrix();
  const Matrix3 inv = inverse(M);
  BridgeReport report;
  report.derivation_identity =
      verify_identity(OperatorSpec(M), 1, IdentityKind::delta_derivation(Scalar(-1))).passed();
  report.inverse_anti_rb = verify_identity(OperatorSpec(inv), 1, IdentityKind::anti_rb()).passed();
  report.inverse_families = match_family(inv);
  report.inverse_matches_f9 = in_f9_closure(inv);
  if (!antideriv_adjugate_entries(A).a.is_zero()) {
    report.closed_form_agrees = antideriv_inverse_closed_form(A) == inv;
  }
  report.det_formula_agrees = antideriv_det(A) == det(M);
  return report;
}

AntiDerivationMatrix sample_invertible_antiderivation(ParamSampler& sampler) {
  for (;;) {
    AntiDerivationMatrix A{Scalar(sampler.next_rational()), Scalar(sampler.next_rational()),
                           Scalar(sampler.next_rational()), Scalar(sampler.next_rational()),
                           Scalar(sampler.next_rational())};
    if (!antideriv_det(A).is_zero()) return A;
  }
}

}  // namespace antirb
