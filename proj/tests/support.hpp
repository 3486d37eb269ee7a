#ifndef TORICSIP_TESTS_SUPPORT_HPP
#define TORICSIP_TESTS_SUPPORT_HPP

// Independent helpers for the tests: plain int64 enumeration and rational
// linear algebra that share no code with the library algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricsip/lattice.hpp"

namespace support {

using toricsip::IntMatrix;
using toricsip::IntVector;
using toricsip::Integer;
using Rational = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<std::int64_t>>;
using Point = std::vector<std::int64_t>;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                          std::int64_t lo, std::int64_t hi, bool no_zero_column) {
  while (true) {
    Dense a(rows, Point(cols));
    for (auto& r : a) {
      for (auto& x : r) x = uniform(rng, lo, hi);
    }
    bool ok = true;
    for (std::size_t j = 0; j < cols && no_zero_column; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < rows; ++i) any = any || a[i][j] != 0;
      ok = ok && any;
    }
    if (ok) return a;
  }
}

inline IntMatrix to_matrix(const Dense& a) {
  IntMatrix m(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) m(i, j) = a[i][j];
  }
  return m;
}

inline IntVector to_vector(const Point& p) {
  IntVector v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i];
  return v;
}

inline Point to_point(const IntVector& v) {
  Point p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = static_cast<std::int64_t>(v[i]);
  return p;
}

inline Point times(const Dense& a, const Point& z) {
  Point out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) out[i] += a[i][j] * z[j];
  }
  return out;
}

inline std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Visits every integer point of [lo, hi]^n.
inline void for_each_point(std::size_t n, std::int64_t lo, std::int64_t hi,
                           const std::function<void(const Point&)>& visit) {
  Point z(n, lo);
  while (true) {
    visit(z);
    std::size_t k = 0;
    while (k < n && z[k] == hi) z[k++] = lo;
    if (k == n) return;
    ++z[k];
  }
}

// Unpruned minimizer of c·z over {A z = b, 0 <= z <= bound}, ties broken by
// the lexicographically smallest z (the >_c-smallest solution).
inline std::optional<Point> brute_min(const Dense& a, const Point& b, const Point& c,
                                      std::int64_t bound) {
  std::optional<Point> best;
  for_each_point(c.size(), 0, bound, [&](const Point& z) {
    if (times(a, z) != b) return;
    if (!best) {
      best = z;
      return;
    }
    const auto cz = dot(c, z), cb = dot(c, *best);
    if (cz < cb || (cz == cb && z < *best)) best = z;
  });
  return best;
}

// Row echelon rank over Q.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t rational_rank(const Dense& a) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  return rational_rank(m);
}

// Coordinates of v in the basis B (vectors as columns), solved over Q.
// nullopt when v is outside the rational span.
inline std::optional<std::vector<Rational>> coordinates(const std::vector<IntVector>& basis,
                                                        const IntVector& v) {
  const std::size_t n = v.size(), k = basis.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = Rational(basis[j][i]);
    m[i][k] = Rational(v[i]);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t t = c; t <= k; ++t) m[i][t] -= f * m[r][t];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i) {
    if (m[i][k] != 0) return std::nullopt;
  }
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][k] / m[i][pivot_col[i]];
  return x;
}

inline bool is_integral(const std::vector<Rational>& x) {
  return std::all_of(x.begin(), x.end(),
                     [](const Rational& q) { return boost::multiprecision::denominator(q) == 1; });
}

// Sign-compatible and no larger in magnitude, coordinatewise.
inline bool conformal_leq(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] * b[i] < 0) return false;
    if ((a[i] < 0 ? -a[i] : a[i]) > (b[i] < 0 ? -b[i] : b[i])) return false;
  }
  return true;
}

// Graver basis inside [-bound, bound]^n by plain enumeration.
inline std::vector<Point> graver_in_box(const Dense& a, std::int64_t bound) {
  std::vector<Point> kernel;
  const std::size_t n = a.empty() ? 0 : a[0].size();
  for_each_point(n, -bound, bound, [&](const Point& z) {
    if (std::all_of(z.begin(), z.end(), [](auto x) { return x == 0; })) return;
    const Point az = times(a, z);
    if (std::all_of(az.begin(), az.end(), [](auto x) { return x == 0; })) kernel.push_back(z);
  });
  std::vector<Point> out;
  for (const auto& z : kernel) {
    bool minimal = true;
    for (const auto& y : kernel) {
      if (y != z && conformal_leq(y, z)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Per-variable bound on {z >= 0 : A z = b} for non-negative A without zero
// columns: z_j <= b_r / a_rj for any row r with a_rj > 0.
inline std::int64_t fiber_bound(const Dense& a, const Point& b) {
  std::int64_t bound = 0;
  for (std::size_t j = 0; j < a[0].size(); ++j) {
    std::int64_t best = -1;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (a[r][j] > 0) {
        const std::int64_t q = b[r] / a[r][j];
        if (best < 0 || q < best) best = q;
      }
    }
    bound = std::max(bound, best);
  }
  return bound;
}

inline std::vector<Point> points_of(const toricsip::VectorSet& s) {
  std::vector<Point> out;
  for (const auto& v : s) out.push_back(to_point(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace support

#endif  // TORICSIP_TESTS_SUPPORT_HPP
