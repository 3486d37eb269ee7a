#ifndef TORICSIP_GRAVER_HPP
#define TORICSIP_GRAVER_HPP

// Graver bases by completion (Pottier style): start from a lattice basis and
// its negation, add pairwise sums, and reduce each sum by subtracting
// elements that conform to it. Sums are processed in increasing 1-norm.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip {

struct GraverBasis {
  IntMatrix matrix;
  VectorSet elements;  // closed under negation
};

struct GraverOptions {
  std::size_t max_elements = 200'000;
};

namespace detail {

struct SignedElement {
  IntVector v;
  std::uint64_t pos_mask = 0;
  std::uint64_t neg_mask = 0;

  explicit SignedElement(IntVector x) : v(std::move(x)) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << (i % 64);
      if (v[i].sign() > 0) pos_mask |= bit;
      if (v[i].sign() < 0) neg_mask |= bit;
    }
  }
};

inline bool mask_conforms(const SignedElement& h, const SignedElement& s) {
  return (h.pos_mask & ~s.pos_mask) == 0 && (h.neg_mask & ~s.neg_mask) == 0;
}

inline Integer sum_norm(const IntVector& f, const IntVector& g) {
  Integer total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += abs(f[i] + g[i]);
  return total;
}

}  // namespace detail

inline GraverBasis graver_basis(const IntMatrix& a, const GraverOptions& options = {}) {
  using detail::SignedElement;
  std::vector<SignedElement> elems;
  std::map<Integer, std::vector<std::pair<std::size_t, std::size_t>>> pending;

  const auto add = [&](IntVector v) {
    if (elems.size() + 1 > options.max_elements) {
      throw ResourceError("graver_basis: element cap of " +
                          std::to_string(options.max_elements) + " reached");
    }
    SignedElement e(std::move(v));
    const std::size_t idx = elems.size();
    for (std::size_t k = 0; k < idx; ++k) {
      const SignedElement& f = elems[k];
      // sign-compatible sums reduce to zero at once
      if ((f.pos_mask & e.neg_mask) == 0 && (f.neg_mask & e.pos_mask) == 0) continue;
      pending[detail::sum_norm(f.v, e.v)].emplace_back(k, idx);
    }
    elems.push_back(std::move(e));
  };

  const auto reduce = [&](IntVector s) {
    while (true) {
      SignedElement probe(s);
      bool moved = false;
      for (const auto& h : elems) {
        if (!detail::mask_conforms(h, probe)) continue;
        if (conforms(h.v, s)) {
          s -= h.v;
          moved = true;
          break;
        }
      }
      if (!moved || s.is_zero()) return s;
    }
  };

  for (const auto& b : kernel_basis(a)) {
    for (IntVector v : {b, IntVector(-b)}) {
      v = reduce(std::move(v));
      if (!v.is_zero()) add(std::move(v));
    }
  }

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    for (const auto& [i, j] : node.mapped()) {
      IntVector s = elems[i].v + elems[j].v;
      if (s.is_zero()) continue;
      s = reduce(std::move(s));
      if (s.is_zero()) continue;
      IntVector neg = -s;
      add(std::move(s));
      neg = reduce(std::move(neg));
      if (!neg.is_zero()) add(std::move(neg));
    }
  }

  // Keep the ⊑-minimal elements; close under negation.
  std::vector<IntVector> minimal;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    bool dominated = false;
    for (std::size_t l = 0; l < elems.size() && !dominated; ++l) {
      if (l == k || elems[l].v == elems[k].v) continue;
      dominated = detail::mask_conforms(elems[l], elems[k]) && conforms(elems[l].v, elems[k].v);
    }
    if (!dominated) {
      minimal.push_back(elems[k].v);
      minimal.push_back(-elems[k].v);
    }
  }
  return GraverBasis{a, VectorSet(std::move(minimal))};
}

// Every Gröbner basis element appears in the Graver basis up to sign.
inline bool contains_groebner(const GroebnerBasis& g, const GraverBasis& graver) {
  if (g.matrix.cols() != 0 && !(g.matrix == graver.matrix)) {
    throw PreconditionError("contains_groebner: bases belong to different matrices");
  }
  for (const auto& v : g.elements) {
    if (!graver.elements.contains(v) && !graver.elements.contains(-v)) return false;
  }
  return true;
}

// Block data of a two-stage problem with N scenarios.
struct SipBlockStructure {
  IntMatrix first_stage;  // A (m0 x d)
  IntMatrix technology;   // T (m x d)
  IntMatrix recourse;     // W (m x n)
  std::size_t scenarios = 1;
};

// The stacked matrix
//   [ A 0 ... 0 ]
//   [ T W ... 0 ]
//   [ ...       ]
//   [ T 0 ... W ]
// with first-stage columns first, then one recourse block per scenario.
inline IntMatrix stacked_matrix(const SipBlockStructure& s) {
  const std::size_t d = s.first_stage.cols();
  const std::size_t n = s.recourse.cols();
  const std::size_t m0 = s.first_stage.rows();
  const std::size_t m = s.recourse.rows();
  if (s.technology.cols() != d || s.technology.rows() != m) {
    throw DimensionError("stacked_matrix: technology block has the wrong shape");
  }
  IntMatrix out(m0 + s.scenarios * m, d + s.scenarios * n);
  for (std::size_t i = 0; i < m0; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = s.first_stage(i, j);
  }
  for (std::size_t k = 0; k < s.scenarios; ++k) {
    const std::size_t r0 = m0 + k * m;
    const std::size_t c0 = d + k * n;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < d; ++j) out(r0 + i, j) = s.technology(i, j);
      for (std::size_t j = 0; j < n; ++j) out(r0 + i, c0 + j) = s.recourse(i, j);
    }
  }
  return out;
}

// Graver basis of the N-scenario matrix from that of the one-scenario
// matrix, valid when the first-stage block has trivial real kernel: each
// element (0, v) is placed in every scenario block.
inline GraverBasis lift_sip_graver(const GraverBasis& single, const SipBlockStructure& s) {
  const std::size_t d = s.first_stage.cols();
  const std::size_t n = s.recourse.cols();
  if (rank(s.first_stage) != d) {
    throw PreconditionError(
        "lift_sip_graver: first-stage matrix has a nontrivial kernel over the reals");
  }
  SipBlockStructure one = s;
  one.scenarios = 1;
  if (!(single.matrix == stacked_matrix(one))) {
    throw PreconditionError("lift_sip_graver: basis does not belong to the one-scenario matrix");
  }
  std::vector<IntVector> lifted;
  for (const auto& g : single.elements) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!g[j].is_zero()) {
        throw PreconditionError("lift_sip_graver: element with nonzero first-stage part");
      }
    }
    for (std::size_t k = 0; k < s.scenarios; ++k) {
      IntVector v(d + s.scenarios * n);
      for (std::size_t j = 0; j < n; ++j) v[d + k * n + j] = g[d + j];
      lifted.push_back(std::move(v));
    }
  }
  return GraverBasis{stacked_matrix(s), VectorSet(std::move(lifted))};
}

}  // namespace toricsip

#endif  // TORICSIP_GRAVER_HPP
