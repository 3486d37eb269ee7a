#ifndef TORICSIP_TORIC_HPP
#define TORICSIP_TORIC_HPP

// Generating set of the toric ideal I_A by coordinate-flip saturation.
//
// A lattice basis is first rearranged so that, coordinate by coordinate,
// its entries share one sign. Flipping the negative coordinates J gives a
// lattice whose ideal is generated by the flipped basis. Coordinates are
// then restored one at a time: for j in J, a reduced Gröbner basis under an
// order that compares coordinate j first is computed and coordinate j is
// negated in every element. The result generates I_A.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip {

struct ToricGenerators {
  IntMatrix matrix;
  VectorSet generators;
};

inline IntVector flip_coordinate(IntVector v, std::size_t j) {
  if (j >= v.size()) throw DimensionError("flip_coordinate: index out of range");
  v[j] = -v[j];
  return v;
}

namespace detail {

struct OrthantScore {
  std::size_t mixed = 0;    // coordinates carrying both signs
  std::size_t flipped = 0;  // |J|
  std::vector<int> signs;   // per basis vector

  bool better_than(const OrthantScore& o) const {
    return mixed != o.mixed ? mixed < o.mixed : flipped < o.flipped;
  }
};

inline OrthantScore score_signs(const std::vector<IntVector>& basis, std::vector<int> signs) {
  OrthantScore s;
  const std::size_t n = basis.empty() ? 0 : basis.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    bool pos = false, neg = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const int e = basis[k][i].sign() * signs[k];
      pos |= e > 0;
      neg |= e < 0;
    }
    if (pos && neg) ++s.mixed;
    if (neg) ++s.flipped;
  }
  s.signs = std::move(signs);
  return s;
}

// Best sign assignment for the basis vectors: exhaustive for small rank,
// greedy single flips otherwise.
inline OrthantScore best_signs(const std::vector<IntVector>& basis) {
  const std::size_t r = basis.size();
  if (r <= 10) {
    OrthantScore best;
    bool have = false;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << r); ++mask) {
      std::vector<int> signs(r);
      for (std::size_t k = 0; k < r; ++k) signs[k] = (mask >> k) & 1 ? -1 : 1;
      auto s = score_signs(basis, std::move(signs));
      if (!have || s.better_than(best)) {
        best = std::move(s);
        have = true;
      }
    }
    return best;
  }
  OrthantScore best = score_signs(basis, std::vector<int>(r, 1));
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t k = 0; k < r; ++k) {
      auto signs = best.signs;
      signs[k] = -signs[k];
      auto s = score_signs(basis, std::move(signs));
      if (s.better_than(best)) {
        best = std::move(s);
        improved = true;
      }
    }
  }
  return best;
}

// Greedy unimodular moves b_k <- b_k ± b_l that reduce the number of mixed
// coordinates (then |J|). Returns the signed basis and the flip set J.
inline std::pair<std::vector<IntVector>, std::vector<std::size_t>> same_orthant_basis(
    std::vector<IntVector> basis) {
  OrthantScore current = best_signs(basis);
  bool improved = true;
  while (improved && current.mixed > 0) {
    improved = false;
    for (std::size_t k = 0; k < basis.size() && !improved; ++k) {
      for (std::size_t l = 0; l < basis.size() && !improved; ++l) {
        if (k == l) continue;
        for (int s : {1, -1}) {
          auto trial = basis;
          if (s > 0) {
            trial[k] += basis[l];
          } else {
            trial[k] -= basis[l];
          }
          auto score = best_signs(trial);
          if (score.better_than(current)) {
            basis = std::move(trial);
            current = std::move(score);
            improved = true;
            break;
          }
        }
      }
    }
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (current.signs[k] < 0) basis[k] = -std::move(basis[k]);
  }
  std::vector<std::size_t> flips;
  const std::size_t n = basis.empty() ? 0 : basis.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& b : basis) {
      if (b[i].sign() < 0) {
        flips.push_back(i);
        break;
      }
    }
  }
  return {std::move(basis), std::move(flips)};
}

}  // namespace detail

inline ToricGenerators toric_generating_set(const IntMatrix& a) {
  const std::size_t n = a.cols();
  auto [basis, flips] = detail::same_orthant_basis(kernel_basis(a));

  std::vector<IntVector> current;
  current.reserve(basis.size());
  for (auto& b : basis) {
    for (std::size_t j : flips) b = flip_coordinate(std::move(b), j);
    current.push_back(std::move(b));
  }

  for (std::size_t j : flips) {
    const auto gb = buchberger(VectorSet(current), CostOrder::elimination(n, j));
    current.clear();
    for (const auto& g : gb.elements) current.push_back(flip_coordinate(g, j));
  }

  std::vector<IntVector> normalized;
  normalized.reserve(current.size());
  for (auto& g : current) normalized.push_back(sign_normalized(std::move(g)));
  return ToricGenerators{a, VectorSet(std::move(normalized))};
}

}  // namespace toricsip

#endif  // TORICSIP_TORIC_HPP
