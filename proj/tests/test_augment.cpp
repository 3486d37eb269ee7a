#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "support.hpp"
#include "toricsip/augment.hpp"
#include "toricsip/errors.hpp"
#include "toricsip/test_set.hpp"

using namespace toricsip;

TEST_CASE("augment examples") {
  const IntMatrix a{{1, 1, 1}};
  const VectorSet t{IntVector{-1, 1, 0}, IntVector{0, -1, 1}};
  const auto r = augment(IntVector{0, 0, 3}, IntVector{1, 2, 3}, t, a, IntVector{3});
  CHECK(r.solution == IntVector{3, 0, 0});
  CHECK(r.value == 3);
  CHECK(r.steps == 6);

  const auto none = augment(IntVector{0, 2, 1}, IntVector{1, 2, 3}, VectorSet(), a, IntVector{3});
  CHECK(none.solution == IntVector{0, 2, 1});
  CHECK(none.steps == 0);

  const auto fixed = augment(IntVector{3, 0, 0}, IntVector{1, 2, 3}, t, a, IntVector{3});
  CHECK(fixed.solution == IntVector{3, 0, 0});
  CHECK(fixed.steps == 0);
}

TEST_CASE("augment rejects bad input") {
  const IntMatrix a{{1, 1, 1}};
  CHECK_THROWS_AS(augment(IntVector{1, 1, 0}, IntVector{1, 2, 3}, VectorSet(), a, IntVector{3}),
                  PreconditionError);
  CHECK_THROWS_AS(augment(IntVector{4, -1, 0}, IntVector{1, 2, 3}, VectorSet(), a, IntVector{3}),
                  PreconditionError);
  CHECK_THROWS_AS(augment(IntVector{3, 0}, IntVector{1, 2, 3}, VectorSet(), a, IntVector{3}),
                  DimensionError);
}

TEST_CASE("zero-cost directions are taken only when they improve the refinement") {
  // c·t = 0 both ways; only the lexicographic decrease is accepted
  const IntMatrix a{{1, 1}};
  const VectorSet graver{IntVector{1, -1}, IntVector{-1, 1}};
  const auto r = augment(IntVector{2, 0}, IntVector{0, 0}, graver, a, IntVector{2});
  CHECK(r.solution == IntVector{0, 2});
  CHECK(r.steps == 2);
}

TEST_CASE("exactness and start-point independence") {
  std::mt19937_64 rng(31);
  for (int m = 0; m < 5; ++m) {
    const std::size_t cols = 3 + m % 2;
    const auto dense = support::random_dense(rng, 1 + m % 2, cols, 0, 3, true);
    const auto a = support::to_matrix(dense);
    support::Point c(cols);
    for (auto& x : c) x = support::uniform(rng, 0, 5);
    const auto ts = test_set(a, support::to_vector(c));
    std::map<support::Point, support::Point> optimum;
    support::for_each_point(cols, 0, 6, [&](const support::Point& z) {
      const auto b = support::times(dense, z);
      auto it = optimum.find(b);
      if (it == optimum.end()) {
        it = optimum.emplace(b, *support::brute_min(dense, b, c, support::fiber_bound(dense, b)))
                 .first;
      }
      const auto r = augment(support::to_vector(z), support::to_vector(c), ts.elements, a,
                             support::to_vector(b));
      CHECK(support::to_point(r.solution) == it->second);
      CHECK(r.value == support::dot(c, it->second));
    });
  }
}

TEST_CASE("phase one") {
  const IntMatrix a{{1, 1, 1}};
  const auto z = phase_one_feasible(a, IntVector{3});
  REQUIRE(z);
  CHECK(z->is_nonnegative());
  CHECK(a * *z == IntVector{3});
  CHECK(phase_one_feasible(a, IntVector{0}) == IntVector(3));
  CHECK_FALSE(phase_one_feasible(IntMatrix{{2}}, IntVector{3}));
  CHECK_FALSE(phase_one_feasible(IntMatrix{{1, 1}}, IntVector{-1}));
}

TEST_CASE("phase one agrees with enumeration on feasibility") {
  std::mt19937_64 rng(77);
  for (int m = 0; m < 6; ++m) {
    const auto dense = support::random_dense(rng, 2, 3, -2, 3, true);
    const auto a = support::to_matrix(dense);
    PhaseOneSolver solver(a);
    for (int k = 0; k < 15; ++k) {
      support::Point b(2);
      for (auto& x : b) x = support::uniform(rng, -6, 6);
      bool feasible = false;
      support::for_each_point(3, 0, 12, [&](const support::Point& z) {
        feasible = feasible || support::times(dense, z) == b;
      });
      const auto z = solver.solve(support::to_vector(b));
      const auto z2 = phase_one_feasible(a, support::to_vector(b));
      CAPTURE(m);
      CAPTURE(k);
      // enumeration in [0,12]^3 can only under-report feasibility
      if (feasible) CHECK(z.has_value());
      CHECK(z.has_value() == z2.has_value());
      if (z) {
        CHECK(z->is_nonnegative());
        CHECK(a * *z == support::to_vector(b));
      }
    }
    CHECK(solver.test_sets_built() <= 4);  // one per sign pattern of b
  }
}
