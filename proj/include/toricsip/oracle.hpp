#ifndef TORICSIP_ORACLE_HPP
#define TORICSIP_ORACLE_HPP

// Brute-force ground truth. Depth-first enumeration of a box with interval
// pruning on the constraint rows (and on the objective once an incumbent
// exists). It deliberately uses none of the algebraic machinery, so it can
// certify the Gröbner/Graver code paths.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip::oracle {

inline constexpr std::uint64_t kDefaultNodeCap = 100'000'000;

struct IpProblem {
  IntMatrix a;
  IntVector b;
  IntVector c;
  Integer var_bound = 0;
};

enum class IpStatus { kOptimal, kInfeasibleInBox };

struct IpOutcome {
  IpStatus status = IpStatus::kInfeasibleInBox;
  std::optional<IntVector> solution;
  std::optional<Integer> value;
};

struct Options {
  std::uint64_t node_cap = kDefaultNodeCap;
};

namespace detail {

template <class T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
template <class T>
T ceil_div(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

template <class T>
T narrow(const Integer& x) {
  if constexpr (std::is_same_v<T, Integer>) {
    return x;
  } else {
    return x.template convert_to<T>();
  }
}

// True when every intermediate of a box search (residuals, suffix bounds,
// partial objectives) stays far inside int64.
inline bool fits_int64(const IntMatrix& a, const IntVector& b, const IntVector& lower,
                       const IntVector& upper, const IntVector& cost) {
  Integer box = 0;
  for (const auto& x : lower) box = std::max(box, Integer(abs(x)));
  for (const auto& x : upper) box = std::max(box, Integer(abs(x)));
  Integer total = 1;
  for (const auto& x : b) total += abs(x);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) total += abs(a(i, j)) * box;
  }
  for (const auto& x : cost) total += abs(x) * box;
  return 4 * total < (Integer(1) << 60);
}

// Enumerates integer points z with lower <= z <= upper and A z = b. The
// visitor is called on each solution in lexicographically increasing order.
// When `cost` is set, branches whose objective lower bound reaches
// `*cutoff` are skipped (the visitor may tighten the cutoff). T is Integer,
// or std::int64_t when fits_int64 holds.
template <class T>
class BoxSearch {
 public:
  using Visitor = std::function<bool(const IntVector&, const Integer& cost)>;

  BoxSearch(const IntMatrix& a, const IntVector& b, const IntVector& lower,
            const IntVector& upper, std::uint64_t node_cap)
      : m_(a.rows()), n_(a.cols()), node_cap_(node_cap), a_(m_ * n_), lower_(convert(lower)),
        upper_(convert(upper)), residual_(convert(b)), point_(n_, T(0)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] = narrow<T>(a(i, j));
    }
    suffix_lo_.assign(n_ + 1, std::vector<T>(m_, T(0)));
    suffix_hi_.assign(n_ + 1, std::vector<T>(m_, T(0)));
    for (std::size_t k = n_; k-- > 0;) {
      suffix_lo_[k] = suffix_lo_[k + 1];
      suffix_hi_[k] = suffix_hi_[k + 1];
      for (std::size_t i = 0; i < m_; ++i) {
        const T& coef = coef_at(i, k);
        if (coef == 0) continue;
        const T x = coef * lower_[k], y = coef * upper_[k];
        suffix_lo_[k][i] += (x < y ? x : y);
        suffix_hi_[k][i] += (x < y ? y : x);
      }
    }
  }

  void set_cost(const IntVector& cost) {
    cost_ = convert(cost);
    suffix_cost_.assign(n_ + 1, T(0));
    for (std::size_t k = n_; k-- > 0;) {
      const T x = cost_[k] * lower_[k], y = cost_[k] * upper_[k];
      suffix_cost_[k] = suffix_cost_[k + 1] + (x < y ? x : y);
    }
  }

  // Visitor returns false to stop the whole search.
  void run(const Visitor& visit, const std::optional<Integer>* cutoff) {
    visit_ = &visit;
    cutoff_ = cutoff;
    limit_.reset();
    if (cutoff_ && cutoff_->has_value() && fits_cutoff(**cutoff_)) refresh_limit();
    stopped_ = false;
    descend(0, T(0));
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static std::vector<T> convert(const IntVector& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(narrow<T>(x));
    return out;
  }

  const T& coef_at(std::size_t i, std::size_t k) const { return a_[i * n_ + k]; }

  static bool fits_cutoff(const Integer& x) {
    return std::is_same_v<T, Integer> || abs(x) < (Integer(1) << 60);
  }

  // The cutoff is only ever an objective value seen in this search, so it
  // narrows safely.
  void refresh_limit() {
    if (cutoff_ && cutoff_->has_value()) limit_ = narrow<T>(**cutoff_);
  }

  void descend(std::size_t k, const T& partial_cost) {
    if (k == n_) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (residual_[i] != 0) return;
      }
      IntVector z(n_);
      for (std::size_t j = 0; j < n_; ++j) z[j] = Integer(point_[j]);
      if (!(*visit_)(z, Integer(partial_cost))) stopped_ = true;
      refresh_limit();
      return;
    }
    // Range of values for coordinate k compatible with every row interval.
    T lo = lower_[k], hi = upper_[k];
    for (std::size_t i = 0; i < m_ && lo <= hi; ++i) {
      const T& coef = coef_at(i, k);
      const T& r = residual_[i];
      if (coef == 0) {
        if (r < suffix_lo_[k + 1][i] || r > suffix_hi_[k + 1][i]) return;
        continue;
      }
      // need suffix_lo <= r - coef*v <= suffix_hi
      const T num_lo = r - suffix_hi_[k + 1][i];
      const T num_hi = r - suffix_lo_[k + 1][i];
      T vl, vh;
      if (coef > 0) {
        vl = ceil_div<T>(num_lo, coef);
        vh = floor_div<T>(num_hi, coef);
      } else {
        vl = ceil_div<T>(num_hi, coef);
        vh = floor_div<T>(num_lo, coef);
      }
      if (vl > lo) lo = vl;
      if (vh < hi) hi = vh;
    }
    if (lo > hi) return;

    const bool costed = !cost_.empty();
    for (T v = lo; v <= hi; ++v) {
      if (++nodes_ > node_cap_) {
        throw ResourceError("oracle: node cap of " + std::to_string(node_cap_) +
                            " visited partial assignments exceeded");
      }
      T next_cost = partial_cost;
      if (costed) {
        next_cost += cost_[k] * v;
        if (limit_ && next_cost + suffix_cost_[k + 1] >= *limit_) {
          // cost is monotone in v unless the coefficient is negative
          if (cost_[k] >= 0) break;
          continue;
        }
      }
      point_[k] = v;
      for (std::size_t i = 0; i < m_; ++i) {
        if (coef_at(i, k) != 0) residual_[i] -= coef_at(i, k) * v;
      }
      descend(k + 1, next_cost);
      for (std::size_t i = 0; i < m_; ++i) {
        if (coef_at(i, k) != 0) residual_[i] += coef_at(i, k) * v;
      }
      if (stopped_) return;
    }
    point_[k] = T(0);
  }

  std::size_t m_, n_;
  std::uint64_t node_cap_;
  std::vector<T> a_;  // row-major
  std::vector<T> lower_, upper_;
  std::vector<T> residual_;
  std::vector<T> point_;
  std::vector<std::vector<T>> suffix_lo_, suffix_hi_;
  std::vector<T> cost_;
  std::vector<T> suffix_cost_;
  const Visitor* visit_ = nullptr;
  const std::optional<Integer>* cutoff_ = nullptr;
  std::optional<T> limit_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
};

// Runs `body` with a BoxSearch over the narrowest safe scalar type.
template <class Body>
void with_box_search(const IntMatrix& a, const IntVector& b, const IntVector& lower,
                     const IntVector& upper, const IntVector& cost, std::uint64_t node_cap,
                     Body&& body) {
  if (fits_int64(a, b, lower, upper, cost)) {
    BoxSearch<std::int64_t> search(a, b, lower, upper, node_cap);
    body(search);
  } else {
    BoxSearch<Integer> search(a, b, lower, upper, node_cap);
    body(search);
  }
}

inline IntVector filled(std::size_t n, const Integer& value) {
  IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = value;
  return v;
}

}  // namespace detail

// Minimizes c·z over A z = b, z in [0, var_bound]^n. Among minimizers the
// lexicographically smallest is returned, which is the optimum of the
// refined problem under >_c.
inline IpOutcome solve_bruteforce(const IpProblem& p, const Options& options = {}) {
  const std::size_t n = p.a.cols();
  ::toricsip::detail::require_same_size(n, p.c.size(), "solve_bruteforce: cols(A) vs dim(c)");
  ::toricsip::detail::require_same_size(p.a.rows(), p.b.size(),
                                        "solve_bruteforce: rows(A) vs dim(b)");
  if (p.var_bound.sign() < 0) throw PreconditionError("solve_bruteforce: negative var_bound");

  std::optional<Integer> best_value;
  std::optional<IntVector> best;
  const std::function<bool(const IntVector&, const Integer&)> visit =
      [&](const IntVector& z, const Integer& value) {
        if (!best_value || value < *best_value) {
          best_value = value;
          best = z;
        }
        return true;
      };
  detail::with_box_search(p.a, p.b, IntVector(n), detail::filled(n, p.var_bound), p.c,
                          options.node_cap, [&](auto& search) {
                            search.set_cost(p.c);
                            search.run(visit, &best_value);
                          });

  IpOutcome out;
  if (best) {
    out.status = IpStatus::kOptimal;
    out.solution = std::move(best);
    out.value = std::move(best_value);
  }
  return out;
}

// All ⊑-minimal nonzero kernel vectors of A inside [-bound, bound]^n. Since
// anything conforming to a box vector lies in the box, this is exactly the
// Graver basis intersected with the box.
inline VectorSet enumerate_graver_in_box(const IntMatrix& a, const Integer& bound,
                                         const Options& options = {}) {
  if (bound < 1) throw PreconditionError("enumerate_graver_in_box: bound must be >= 1");
  const std::size_t n = a.cols();
  std::vector<IntVector> points;
  const std::function<bool(const IntVector&, const Integer&)> visit =
      [&](const IntVector& z, const Integer&) {
        if (!z.is_zero()) points.push_back(z);
        return true;
      };
  detail::with_box_search(a, IntVector(a.rows()), detail::filled(n, -bound),
                          detail::filled(n, bound), IntVector(), options.node_cap,
                          [&](auto& search) { search.run(visit, nullptr); });

  // A proper conformal predecessor has strictly smaller 1-norm, and below
  // any non-minimal vector sits a minimal one, so comparing against the
  // minimal elements found so far suffices.
  std::vector<std::pair<Integer, IntVector>> by_norm;
  by_norm.reserve(points.size());
  for (auto& z : points) by_norm.emplace_back(norm1(z), std::move(z));
  std::stable_sort(by_norm.begin(), by_norm.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<IntVector> minimal;
  for (auto& [norm, z] : by_norm) {
    bool reducible = false;
    for (const auto& g : minimal) {
      if (conforms(g, z)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) minimal.push_back(std::move(z));
  }
  return VectorSet(std::move(minimal));
}

}  // namespace toricsip::oracle

#endif  // TORICSIP_ORACLE_HPP
