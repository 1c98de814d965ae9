#pragma once

// Reference computations for the test suite. Nothing here calls into the
// library's arithmetic, brackets or solver: scalars are raw mpq_class pairs,
// elements are dense maps, and every formula is written out longhand.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "antirb/scalar.hpp"

namespace oracle {

struct Q2 {
  mpq_class re{0};
  mpq_class im{0};

  Q2() = default;
  Q2(long n) : re(n) {}  // NOLINT(google-explicit-constructor)
  Q2(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  static Q2 frac(long n, long d) {
    mpq_class q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    return Q2(q);
  }

  bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  friend Q2 operator+(const Q2& a, const Q2& b) { return {a.re + b.re, a.im + b.im}; }
  friend Q2 operator-(const Q2& a, const Q2& b) { return {a.re - b.re, a.im - b.im}; }
  friend Q2 operator*(const Q2& a, const Q2& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Q2 operator/(const Q2& a, const Q2& b) {
    mpq_class n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Q2 operator-() const { return {-re, -im}; }
  friend bool operator==(const Q2& a, const Q2& b) { return a.re == b.re && a.im == b.im; }
};

inline Q2 from(const antirb::Scalar& s) { return {s.re().value(), s.im().value()}; }

inline bool same(const antirb::Scalar& s, const Q2& q) { return from(s) == q; }

// ---- Witt / Virasoro, dense ------------------------------------------------

// Key kCentral stands for C.
inline constexpr std::int64_t kCentral = INT64_MIN;

using Vec = std::map<std::int64_t, Q2>;

inline void acc(Vec& v, std::int64_t key, const Q2& c) {
  if (c.zero()) return;
  Q2 s = v[key] + c;
  if (s.zero()) {
    v.erase(key);
  } else {
    v[key] = s;
  }
}

inline Vec scaled(const Vec& v, const Q2& c) {
  Vec out;
  for (const auto& [key, x] : v) acc(out, key, x * c);
  return out;
}

inline Vec plus(const Vec& a, const Vec& b) {
  Vec out = a;
  for (const auto& [key, x] : b) acc(out, key, x);
  return out;
}

inline Vec minus(const Vec& a, const Vec& b) { return plus(a, scaled(b, Q2(-1))); }

inline Vec bracket(const Vec& x, const Vec& y, bool central) {
  Vec out;
  for (const auto& [m, a] : x) {
    if (m == kCentral) continue;
    for (const auto& [n, b] : y) {
      if (n == kCentral) continue;
      acc(out, m + n, a * b * Q2(m - n));
      if (central && m + n == 0) acc(out, kCentral, a * b * Q2::frac(m * m * m - m, 12));
    }
  }
  return out;
}

// R(L_m) = f(m+k) L_{m+k} + t(m) C, R(C) = mu L_k + nu [k == 0] C.
struct GradedOp {
  std::int64_t k = 0;
  std::function<Q2(std::int64_t)> f;
  std::function<Q2(std::int64_t)> t = [](std::int64_t) { return Q2(); };
  Q2 mu;
  Q2 nu;

  Vec on_basis(std::int64_t key) const {
    Vec out;
    if (key == kCentral) {
      acc(out, k, mu);
      if (k == 0) acc(out, kCentral, nu);
      return out;
    }
    acc(out, key + k, f(key + k));
    acc(out, kCentral, t(key));
    return out;
  }

  Vec operator()(const Vec& v) const {
    Vec out;
    for (const auto& [key, c] : v) out = plus(out, scaled(on_basis(key), c));
    return out;
  }
};

// [Rx, Ry] - delta R([Rx, y] + [x, Ry])
inline Vec rb_residual(const GradedOp& R, std::int64_t x, std::int64_t y, const Q2& delta,
                       bool central) {
  Vec ex{{x, Q2(1)}}, ey{{y, Q2(1)}};
  Vec rx = R(ex), ry = R(ey);
  Vec inner = plus(bracket(rx, ey, central), bracket(ex, ry, central));
  return minus(bracket(rx, ry, central), scaled(R(inner), delta));
}

// f(m)f(n)(n-m) - f(m+n)(f(m)(m-n+k) + f(n)(m-n-k)), by direct substitution.
inline Q2 eq7(const std::function<Q2(std::int64_t)>& f, std::int64_t k, std::int64_t m,
              std::int64_t n) {
  const Q2 lhs = f(m) * f(n) * Q2(n - m);
  const Q2 rhs = f(m + n) * (f(m) * Q2(m - n + k) + f(n) * Q2(m - n - k));
  return lhs - rhs;
}

struct VecLess {
  bool operator()(const std::map<std::int64_t, Q2>& a, const std::map<std::int64_t, Q2>& b) const {
    auto key = [](const std::map<std::int64_t, Q2>& v) {
      std::vector<std::pair<std::int64_t, std::pair<mpq_class, mpq_class>>> out;
      for (const auto& [i, q] : v) out.push_back({i, {q.re, q.im}});
      return out;
    };
    const auto ka = key(a), kb = key(b);
    return std::lexicographical_compare(
        ka.begin(), ka.end(), kb.begin(), kb.end(), [](const auto& x, const auto& y) {
          if (x.first != y.first) return x.first < y.first;
          if (x.second.first != y.second.first) return x.second.first < y.second.first;
          return x.second.second < y.second.second;
        });
  }
};

using SolutionSet = std::set<std::map<std::int64_t, Q2>, VecLess>;

// Every f on [-N, N] with f(0) = 1 satisfying the functional equation on all
// in-window (m, n, m+n). Setting n = 0 forces f(m) into {0, (k-2m)/(m+k)}
// for m != -k and f(-k) = 0 for k != 0, so each index carries one bit.
inline SolutionSet exhaustive_dichotomy(std::int64_t k, std::int64_t N) {
  std::vector<std::int64_t> free;
  for (std::int64_t m = -N; m <= N; ++m) {
    if (m != 0 && m + k != 0) free.push_back(m);
  }
  SolutionSet out;
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::map<std::int64_t, Q2> f;
    f[0] = Q2(1);
    for (std::size_t b = 0; b < free.size(); ++b) {
      const std::int64_t m = free[b];
      if (mask >> b & 1) f[m] = Q2::frac(k - 2 * m, m + k);
    }
    auto fn = [&](std::int64_t j) {
      auto it = f.find(j);
      return it == f.end() ? Q2() : it->second;
    };
    bool ok = true;
    for (std::int64_t m = -N; m <= N && ok; ++m) {
      for (std::int64_t n = -N; n <= N && ok; ++n) {
        if (m + n < -N || m + n > N) continue;
        ok = eq7(fn, k, m, n).zero();
      }
    }
    if (!ok) continue;
    std::map<std::int64_t, Q2> nz;
    for (const auto& [j, v] : f) {
      if (!v.zero()) nz[j] = v;
    }
    out.insert(nz);
  }
  return out;
}

// ---- sl2, dense --------------------------------------------------------

using V3 = std::array<Q2, 3>;
using M3 = std::array<V3, 3>;

// [e1,e2] = e3, [e1,e3] = 2e1, [e2,e3] = -2e2
inline V3 sl2_bracket(const V3& x, const V3& y) {
  V3 z;
  const Q2 c12 = x[0] * y[1] - x[1] * y[0];
  const Q2 c13 = x[0] * y[2] - x[2] * y[0];
  const Q2 c23 = x[1] * y[2] - x[2] * y[1];
  z[2] = c12;
  z[0] = Q2(2) * c13;
  z[1] = Q2(-2) * c23;
  return z;
}

// Row i of M is R(e_i).
inline V3 apply_rows(const M3& M, const V3& v) {
  V3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[j] = out[j] + v[i] * M[i][j];
  }
  return out;
}

inline V3 unit(int i) {
  V3 v;
  v[i] = Q2(1);
  return v;
}

inline V3 add3(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

inline V3 sl2_rb_residual(const M3& M, int i, int j, const Q2& delta) {
  const V3 x = unit(i), y = unit(j);
  const V3 rx = apply_rows(M, x), ry = apply_rows(M, y);
  const V3 inner = apply_rows(M, add3(sl2_bracket(rx, y), sl2_bracket(x, ry)));
  const V3 lhs = sl2_bracket(rx, ry);
  return {lhs[0] - delta * inner[0], lhs[1] - delta * inner[1], lhs[2] - delta * inner[2]};
}

inline V3 sl2_strong_residual(const M3& M, int i, int j, int t) {
  const V3 x = unit(i), y = unit(j), z = unit(t);
  const V3 rx = apply_rows(M, x), ry = apply_rows(M, y), rz = apply_rows(M, z);
  return add3(add3(sl2_bracket(sl2_bracket(rx, ry), z), sl2_bracket(sl2_bracket(ry, rz), x)),
              sl2_bracket(sl2_bracket(rz, rx), y));
}

inline Q2 det3(const M3& M) {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
         M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

}  // namespace oracle
