#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "support.hpp"
#include "toricsip/errors.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/instances.hpp"
#include "toricsip/oracle.hpp"
#include "toricsip/test_set.hpp"
#include "toricsip/toric.hpp"

using namespace toricsip;

namespace {

void check_reduced_basis(const GroebnerBasis& gb, const IntMatrix& a) {
  const auto& c = gb.order.cost();
  for (const auto& g : gb.elements) {
    CHECK(a.in_kernel(g));
    const Integer cg = dot(c, g);
    CHECK(cg.sign() >= 0);
    if (cg.is_zero()) CHECK(gb.order.direction(g) > 0);
    const auto gs = sign_split(g);
    for (const auto& h : gb.elements) {
      if (h == g) continue;
      const auto hs = sign_split(h);
      CHECK_FALSE(leq(hs.positive, gs.positive));
      CHECK_FALSE(leq(hs.positive, gs.negative));
    }
  }
}

}  // namespace

TEST_CASE("orient") {
  CostOrder c123(IntVector{1, 2, 3});
  CHECK(orient(IntVector{1, -1, 0}, c123) == IntVector{-1, 1, 0});
  CHECK(orient(IntVector{1, -1}, CostOrder(IntVector{3, 1})) == IntVector{1, -1});
  const IntVector v{2, 0, -1};
  CHECK(orient(orient(v, c123), c123) == orient(v, c123));
  CHECK_THROWS_AS(orient(IntVector{0, 0, 0}, c123), PreconditionError);
}

TEST_CASE("normal_form") {
  CostOrder c123(IntVector{1, 2, 3});
  const VectorSet g{IntVector{-1, 1, 0}};
  CHECK(normal_form(IntVector{-3, 3, 0}, g, c123).is_zero());
  // leading part e3 is not divisible by e2, the trailing e2 is
  CHECK(normal_form(IntVector{0, -1, 1}, g, c123) == IntVector{-1, 0, 1});
  CHECK(normal_form(IntVector{-1, 1, 0}, g, c123).is_zero());
}

TEST_CASE("buchberger examples") {
  CostOrder c123(IntVector{1, 2, 3});
  const auto gb = buchberger(VectorSet{IntVector{-1, 1, 0}, IntVector{0, -1, 1}}, c123);
  CHECK(gb.elements == VectorSet{IntVector{-1, 0, 1}, IntVector{-1, 1, 0}});
  CHECK(buchberger(VectorSet{IntVector{1, -1, 0}}, c123).elements == VectorSet{IntVector{-1, 1, 0}});
  CHECK_THROWS_AS(buchberger(VectorSet{IntVector{1, -1}}, c123), DimensionError);
}

TEST_CASE("test_set examples") {
  CHECK(test_set(IntMatrix{{1, 1, 1}}, IntVector{1, 2, 3}).elements ==
        VectorSet{IntVector{-1, 0, 1}, IntVector{-1, 1, 0}});
  CHECK(test_set(IntMatrix::identity(2), IntVector{4, 1}).elements.size() == 0);
  const auto t12 = test_set(IntMatrix{{1, 2}}, IntVector{1, 1});
  CHECK(t12.elements == VectorSet{IntVector{2, -1}});
  // test-set property for every b <= 10 by enumeration
  for (std::int64_t b = 0; b <= 10; ++b) {
    const auto best = support::brute_min({{1, 2}}, {b}, {1, 1}, 10);
    REQUIRE(best);
    for (std::int64_t y = 0; 2 * y <= b; ++y) {
      const support::Point z{b - 2 * y, y};
      if (z == *best) continue;
      CHECK(leq(IntVector{2, 0}, support::to_vector(z)));
    }
  }
  CHECK_THROWS_AS(test_set(IntMatrix{{1, 1}}, IntVector{1, -1}), PreconditionError);
}

TEST_CASE("HS recourse basis is reduced and lies in the kernel") {
  const auto w = hs_recourse();
  const auto gb = test_set(w, hs_cost());
  CHECK(gb.elements.size() > 0);
  check_reduced_basis(gb, w);
}

TEST_CASE("test-set property, exhaustive on small matrices") {
  std::mt19937_64 rng(41);
  for (int m = 0; m < 5; ++m) {
    const std::size_t rows = 1 + m % 2, cols = 3 + m % 2;
    const auto dense = support::random_dense(rng, rows, cols, 0, 3, true);
    const auto a = support::to_matrix(dense);
    support::Point c(cols);
    for (auto& x : c) x = support::uniform(rng, 0, 4);
    const auto gb = test_set(a, support::to_vector(c));
    check_reduced_basis(gb, a);
    std::map<support::Point, support::Point> optimum;
    support::for_each_point(cols, 0, 4, [&](const support::Point& z) {
      const auto b = support::times(dense, z);
      auto it = optimum.find(b);
      if (it == optimum.end()) {
        it = optimum.emplace(b, *support::brute_min(dense, b, c, support::fiber_bound(dense, b)))
                 .first;
      }
      if (z == it->second) return;
      const IntVector zv = support::to_vector(z);
      bool improving = false;
      for (const auto& t : gb.elements) {
        if (leq(sign_split(t).positive, zv)) improving = true;
      }
      CAPTURE(m);
      CHECK(improving);
    });
  }
}

TEST_CASE("reduced basis does not depend on the seed order") {
  std::mt19937_64 rng(8);
  const std::vector<IntMatrix> fixtures{hs_recourse(), IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}},
                                        IntMatrix{{2, 3, 1, 0}, {1, 0, 2, 4}}};
  const std::vector<IntVector> costs{hs_cost(), IntVector{1, 0, 2, 1}, IntVector{3, 1, 0, 2}};
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto gens = toric_generating_set(fixtures[f]).generators;
    const CostOrder order(costs[f]);
    const auto reference = buchberger(gens, order);
    for (int round = 0; round < 10; ++round) {
      std::vector<IntVector> seed(gens.begin(), gens.end());
      std::shuffle(seed.begin(), seed.end(), rng);
      for (auto& v : seed) {
        if (rng() & 1) v = -v;
      }
      CHECK(buchberger(seed, order).elements == reference.elements);
    }
  }
}
