#ifndef TORICSIP_AUGMENT_HPP
#define TORICSIP_AUGMENT_HPP

// The augmentation algorithm: walk from a feasible point along improving
// test-set directions until none applies.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/lattice.hpp"
#include "toricsip/test_set.hpp"

namespace toricsip {

struct AugmentResult {
  IntVector solution;
  Integer value;
  std::uint64_t steps = 0;
};

// Directions of a test set (or a negation-closed Graver basis) that strictly
// improve >_c, prepared once so that many walks can share them. Immutable
// after construction; safe to use from several threads.
class Augmenter {
 public:
  Augmenter(const VectorSet& directions, const CostOrder& order) : order_(order) {
    for (const auto& t : directions) {
      detail::require_same_size(t.size(), order.dimension(), "Augmenter");
      if (order.direction(t) > 0) moves_.emplace_back(t);
    }
  }

  std::size_t size() const { return moves_.size(); }

  // Repeatedly subtracts the first direction t (in set order) with
  // z - t >= 0. Every accepted move strictly decreases z under >_c.
  AugmentResult run(IntVector z) const {
    if (!z.is_nonnegative()) throw PreconditionError("augment: start point is not non-negative");
    detail::require_same_size(z.size(), order_.dimension(), "augment");
    std::uint64_t steps = 0;
    std::uint64_t mask = detail::support_mask(z);
    while (true) {
      const detail::Binomial* chosen = nullptr;
      for (const auto& t : moves_) {
        if (detail::divides(t.lead, t.lead_mask, z, mask)) {
          chosen = &t;
          break;
        }
      }
      if (!chosen) break;
      z -= chosen->v;
      mask = detail::support_mask(z);
      ++steps;
    }
    Integer value = dot(order_.cost(), z);
    return AugmentResult{std::move(z), std::move(value), steps};
  }

 private:
  CostOrder order_;
  std::vector<detail::Binomial> moves_;
};

// Optimum of IP(>_c, b) reached from the feasible point z0 using the test
// set T.
inline AugmentResult augment(const IntVector& z0, const IntVector& c, const VectorSet& t,
                             const IntMatrix& a, const IntVector& b) {
  detail::require_same_size(a.cols(), z0.size(), "augment: cols(A) vs dim(z0)");
  detail::require_same_size(a.cols(), c.size(), "augment: cols(A) vs dim(c)");
  detail::require_same_size(a.rows(), b.size(), "augment: rows(A) vs dim(b)");
  if (!z0.is_nonnegative() || !(a * z0 == b)) {
    throw PreconditionError("augment: start point is infeasible");
  }
  return Augmenter(t, CostOrder(c)).run(z0);
}

namespace detail {

struct PhaseOneSystem {
  IntMatrix extended;
  IntVector cost;
  IntVector start;
};

// [A | D] with one artificial column per row, signed like the row's
// right-hand side, so that (0, |b|) is feasible.
inline PhaseOneSystem phase_one_system(const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  PhaseOneSystem s{IntMatrix(m, n + m), IntVector(n + m), IntVector(n + m)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.extended(i, j) = a(i, j);
    s.extended(i, n + i) = b[i].sign() < 0 ? -1 : 1;
    s.cost[n + i] = 1;
    s.start[n + i] = abs(b[i]);
  }
  return s;
}

inline std::vector<int> sign_pattern(const IntVector& b) {
  std::vector<int> p(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) p[i] = b[i].sign() < 0 ? -1 : 1;
  return p;
}

}  // namespace detail

// Feasible z >= 0 with A z = b, found by minimizing the sum of artificial
// variables with the augmentation algorithm. nullopt when infeasible.
inline std::optional<IntVector> phase_one_feasible(const IntMatrix& a, const IntVector& b) {
  detail::require_same_size(a.rows(), b.size(), "phase_one_feasible");
  const std::size_t n = a.cols();
  if (b.is_zero()) return IntVector(n);
  auto sys = detail::phase_one_system(a, b);
  const auto ts = test_set(sys.extended, sys.cost);
  const auto result = Augmenter(ts.elements, ts.order).run(sys.start);
  if (!result.value.is_zero()) return std::nullopt;
  return IntVector(std::vector<Integer>(result.solution.begin(),
                                        result.solution.begin() + static_cast<std::ptrdiff_t>(n)));
}

// Phase-I with the extended test sets cached per right-hand-side sign
// pattern, for callers that solve many systems with the same A.
class PhaseOneSolver {
 public:
  explicit PhaseOneSolver(IntMatrix a) : a_(std::move(a)) {}

  std::optional<IntVector> solve(const IntVector& b) {
    detail::require_same_size(a_.rows(), b.size(), "PhaseOneSolver");
    const std::size_t n = a_.cols();
    if (b.is_zero()) return IntVector(n);
    auto sys = detail::phase_one_system(a_, b);
    const Augmenter* walker = nullptr;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto key = detail::sign_pattern(b);
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        const auto ts = test_set(sys.extended, sys.cost);
        it = cache_.emplace(std::move(key), std::make_unique<Augmenter>(ts.elements, ts.order))
                 .first;
        ++test_sets_built_;
      }
      walker = it->second.get();
    }
    const auto result = walker->run(sys.start);
    if (!result.value.is_zero()) return std::nullopt;
    return IntVector(std::vector<Integer>(
        result.solution.begin(), result.solution.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  std::size_t test_sets_built() const {
    std::lock_guard<std::mutex> lock(mu_);
    return test_sets_built_;
  }

 private:
  IntMatrix a_;
  mutable std::mutex mu_;
  std::map<std::vector<int>, std::unique_ptr<Augmenter>> cache_;
  std::size_t test_sets_built_ = 0;
};

}  // namespace toricsip

#endif  // TORICSIP_AUGMENT_HPP
