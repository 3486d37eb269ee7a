#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "support.hpp"
#include "toricsip/errors.hpp"
#include "toricsip/oracle.hpp"

using namespace toricsip;
using oracle::IpProblem;
using oracle::IpStatus;

TEST_CASE("solve_bruteforce examples") {
  auto r = oracle::solve_bruteforce(IpProblem{IntMatrix{{1, 1, 1}}, IntVector{3}, IntVector{1, 2, 3}, 3});
  REQUIRE(r.status == IpStatus::kOptimal);
  CHECK(*r.solution == IntVector{3, 0, 0});
  CHECK(*r.value == 3);

  r = oracle::solve_bruteforce(IpProblem{IntMatrix{{1, 1, 1}}, IntVector{0}, IntVector{5, 0, 2}, 4});
  REQUIRE(r.status == IpStatus::kOptimal);
  CHECK(r.solution->is_zero());
  CHECK(*r.value == 0);

  r = oracle::solve_bruteforce(IpProblem{IntMatrix{{2}}, IntVector{3}, IntVector{1}, 5});
  CHECK(r.status == IpStatus::kInfeasibleInBox);
  CHECK_FALSE(r.solution);
  CHECK_FALSE(r.value);
}

TEST_CASE("solve_bruteforce breaks cost ties toward the >_c-smallest point") {
  // c·z = 0 on the whole fiber; lexicographically smallest is (0,0,2)
  auto r = oracle::solve_bruteforce(IpProblem{IntMatrix{{1, 1, 1}}, IntVector{2}, IntVector{0, 0, 0}, 2});
  REQUIRE(r.status == IpStatus::kOptimal);
  CHECK(*r.solution == IntVector{0, 0, 2});
}

TEST_CASE("solve_bruteforce agrees with unpruned enumeration") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    const std::size_t rows = 1 + round % 2, cols = 2 + round % 3;
    const auto a = support::random_dense(rng, rows, cols, -2, 3, true);
    support::Point c(cols), z(cols);
    for (auto& x : c) x = support::uniform(rng, 0, 4);
    for (auto& x : z) x = support::uniform(rng, 0, 4);
    const auto b = support::times(a, z);
    const auto expect = support::brute_min(a, b, c, 5);
    const auto got = oracle::solve_bruteforce(
        IpProblem{support::to_matrix(a), support::to_vector(b), support::to_vector(c), 5});
    REQUIRE(expect);
    REQUIRE(got.status == IpStatus::kOptimal);
    CHECK(support::to_point(*got.solution) == *expect);
    CHECK(*got.value == support::dot(c, *expect));
    CHECK((support::to_matrix(a) * *got.solution) == support::to_vector(b));
  }
}

TEST_CASE("solve_bruteforce is invariant under variable permutation") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 30; ++round) {
    const std::size_t cols = 3 + round % 2;
    const auto a = support::random_dense(rng, 2, cols, 0, 3, true);
    support::Point c(cols), z(cols);
    for (auto& x : c) x = support::uniform(rng, 1, 5);  // positive: unique optimal value
    for (auto& x : z) x = support::uniform(rng, 0, 3);
    const auto b = support::times(a, z);
    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    support::Dense pa(a.size(), support::Point(cols));
    support::Point pc(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < a.size(); ++i) pa[i][j] = a[i][perm[j]];
      pc[j] = c[perm[j]];
    }
    const auto r1 = oracle::solve_bruteforce(
        IpProblem{support::to_matrix(a), support::to_vector(b), support::to_vector(c), 6});
    const auto r2 = oracle::solve_bruteforce(
        IpProblem{support::to_matrix(pa), support::to_vector(b), support::to_vector(pc), 6});
    REQUIRE(r1.status == IpStatus::kOptimal);
    REQUIRE(r2.status == IpStatus::kOptimal);
    CHECK(*r1.value == *r2.value);
    // the permuted solution, mapped back, is optimal for the original
    IntVector back(cols);
    for (std::size_t j = 0; j < cols; ++j) back[perm[j]] = (*r2.solution)[j];
    CHECK((support::to_matrix(a) * back) == support::to_vector(b));
    CHECK(dot(support::to_vector(c), back) == *r1.value);
  }
}

TEST_CASE("node cap raises a resource error") {
  IpProblem p{IntMatrix{{1, 1, 1, 1, 1, 1}}, IntVector{30}, IntVector{1, 1, 1, 1, 1, 1}, 30};
  CHECK_THROWS_AS(oracle::solve_bruteforce(p, oracle::Options{100}), ResourceError);
  CHECK_THROWS_AS(oracle::enumerate_graver_in_box(IntMatrix{{1, 1, 1, 1}}, 6, oracle::Options{50}),
                  ResourceError);
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(oracle::solve_bruteforce(IpProblem{IntMatrix{{1, 1}}, IntVector{1}, IntVector{1}, 2}),
                  DimensionError);
  CHECK_THROWS_AS(oracle::enumerate_graver_in_box(IntMatrix{{1, 1}}, 0), PreconditionError);
}

TEST_CASE("enumerate_graver_in_box examples") {
  CHECK(oracle::enumerate_graver_in_box(IntMatrix{{1, 1}}, 3) ==
        VectorSet{IntVector{1, -1}, IntVector{-1, 1}});
  CHECK(oracle::enumerate_graver_in_box(IntMatrix{{1, 2}}, 4) ==
        VectorSet{IntVector{2, -1}, IntVector{-2, 1}});
  CHECK(oracle::enumerate_graver_in_box(IntMatrix::identity(2), 3).size() == 0);
}

TEST_CASE("enumerate_graver_in_box agrees with plain enumeration") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 8; ++round) {
    const auto a = support::random_dense(rng, 1 + round % 2, 4, -2, 3, true);
    CHECK(support::points_of(oracle::enumerate_graver_in_box(support::to_matrix(a), 4)) ==
          support::graver_in_box(a, 4));
  }
}
