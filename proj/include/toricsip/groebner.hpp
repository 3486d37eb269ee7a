#ifndef TORICSIP_GROEBNER_HPP
#define TORICSIP_GROEBNER_HPP

// Buchberger completion carried out directly on lattice vectors. A vector g
// stands for the binomial x^{g+} - x^{g-}; it is kept oriented so that g+ is
// the leading monomial under >_c. S-pairs, reduction and inter-reduction are
// all vector additions, and common monomial factors cancel automatically.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip {

struct GroebnerBasis {
  IntMatrix matrix;
  CostOrder order;
  VectorSet elements;
};

// Returns v or -v, whichever has its positive part leading under the order.
inline IntVector orient(const IntVector& v, const CostOrder& order) {
  const auto dir = order.direction(v);
  if (dir == 0) throw PreconditionError("orient: zero vector");
  return dir > 0 ? v : -v;
}

namespace detail {

inline std::uint64_t support_mask(const IntVector& v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].sign() != 0) m |= std::uint64_t{1} << (i % 64);
  }
  return m;
}

// An oriented lattice vector with its leading (positive) and trailing
// (negative) exponent vectors cached.
struct Binomial {
  IntVector v;
  IntVector lead;
  IntVector tail;
  std::uint64_t lead_mask = 0;
  std::uint64_t tail_mask = 0;

  Binomial() = default;
  explicit Binomial(IntVector oriented) : v(std::move(oriented)) { refresh(); }

  void refresh() {
    auto split = sign_split(v);
    lead = std::move(split.positive);
    tail = std::move(split.negative);
    lead_mask = support_mask(lead);
    tail_mask = support_mask(tail);
  }
};

// mask test first; the exact test only runs when supports are compatible
inline bool divides(const IntVector& lead, std::uint64_t lead_mask, const IntVector& m,
                    std::uint64_t m_mask) {
  if ((lead_mask & ~m_mask) != 0) return false;
  for (std::size_t i = 0; i < lead.size(); ++i) {
    if (lead[i] > m[i]) return false;
  }
  return true;
}

// Reduces r in place against `basis`, skipping index `skip`. With
// `reduce_tail`, the trailing monomial is reduced as well. Returns false when
// r reduces to zero.
inline bool reduce(Binomial& r, const std::vector<Binomial>& basis, const CostOrder& order,
                   bool reduce_tail, std::size_t skip = static_cast<std::size_t>(-1)) {
  while (true) {
    bool moved = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip) continue;
      const Binomial& g = basis[k];
      if (divides(g.lead, g.lead_mask, r.lead, r.lead_mask)) {
        r.v -= g.v;
        moved = true;
      } else if (reduce_tail && divides(g.lead, g.lead_mask, r.tail, r.tail_mask)) {
        r.v += g.v;
        moved = true;
      }
      if (moved) break;
    }
    if (!moved) return true;
    const auto dir = order.direction(r.v);
    if (dir == 0) return false;
    if (dir < 0) r.v = -std::move(r.v);
    r.refresh();
  }
}

inline std::vector<Binomial> to_binomials(const VectorSet& set, const CostOrder& order) {
  std::vector<Binomial> out;
  out.reserve(set.size());
  for (const auto& g : set) {
    if (g.is_zero()) continue;
    out.emplace_back(orient(g, order));
  }
  return out;
}

struct PendingPair {
  Integer weight;  // c·lcm
  IntVector lcm;
  std::size_t i;
  std::size_t j;
};

}  // namespace detail

// Normal form of v with respect to G (elements oriented). Leading parts are
// reduced until no element's leading part divides the leading part of the
// remainder; with `full`, the trailing part is reduced too.
inline IntVector normal_form(const IntVector& v, const VectorSet& g, const CostOrder& order,
                             bool full = true) {
  if (v.is_zero()) return v;
  detail::Binomial r(orient(v, order));
  const auto basis = detail::to_binomials(g, order);
  if (!detail::reduce(r, basis, order, full)) return IntVector(v.size());
  return r.v;
}

// Completes `seed` to the reduced Gröbner basis of the lattice ideal it
// generates, with respect to `order`. Seed vectors are inserted in the given
// order; pairs are processed smallest lcm first; pairs whose leading
// monomials are coprime are skipped.
inline GroebnerBasis buchberger(const std::vector<IntVector>& seed, const CostOrder& order) {
  using detail::Binomial;
  const std::size_t n = order.dimension();
  for (const auto& s : seed) detail::require_same_size(s.size(), n, "buchberger");

  std::vector<Binomial> basis;
  const auto pair_less = [&order](const detail::PendingPair& a, const detail::PendingPair& b) {
    // priority_queue pops the largest, so "less" means "processed later"
    if (a.weight != b.weight) return a.weight > b.weight;
    for (std::size_t k : order.priority()) {
      if (a.lcm[k] != b.lcm[k]) return a.lcm[k] > b.lcm[k];
    }
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  };
  std::priority_queue<detail::PendingPair, std::vector<detail::PendingPair>, decltype(pair_less)>
      pairs(pair_less);

  const auto add = [&](Binomial b) {
    const std::size_t idx = basis.size();
    for (std::size_t k = 0; k < idx; ++k) {
      const Binomial& f = basis[k];
      if ((f.lead_mask & b.lead_mask) == 0) continue;  // coprime leads
      bool overlap = false;
      IntVector lcm(n);
      for (std::size_t t = 0; t < n; ++t) {
        lcm[t] = f.lead[t] > b.lead[t] ? f.lead[t] : b.lead[t];
        if (f.lead[t].sign() > 0 && b.lead[t].sign() > 0) overlap = true;
      }
      if (!overlap) continue;
      Integer w = dot(order.cost(), lcm);
      pairs.push({std::move(w), std::move(lcm), k, idx});
    }
    basis.push_back(std::move(b));
  };

  for (const auto& s : seed) {
    if (s.is_zero()) continue;
    Binomial b(orient(s, order));
    if (detail::reduce(b, basis, order, false)) add(std::move(b));
  }

  while (!pairs.empty()) {
    const detail::PendingPair p = pairs.top();
    pairs.pop();
    IntVector s = basis[p.j].v - basis[p.i].v;
    if (s.is_zero()) continue;
    Binomial b(orient(s, order));
    if (detail::reduce(b, basis, order, false)) add(std::move(b));
  }

  // Minimal basis: drop every element whose leading monomial is divisible
  // by the leading monomial of an element that comes earlier under >_c.
  std::sort(basis.begin(), basis.end(), [&order](const Binomial& a, const Binomial& b) {
    const auto d = order.direction(a.lead - b.lead);
    if (d != 0) return d < 0;
    return a.v < b.v;
  });
  std::vector<Binomial> minimal;
  for (auto& g : basis) {
    bool redundant = false;
    for (const auto& h : minimal) {
      if (detail::divides(h.lead, h.lead_mask, g.lead, g.lead_mask)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(std::move(g));
  }

  // Tail reduction; leading monomials are already minimal generators of the
  // initial ideal so they stay fixed.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    Binomial r = minimal[k];
    detail::reduce(r, minimal, order, true, k);
    minimal[k] = std::move(r);
  }

  std::vector<IntVector> elements;
  elements.reserve(minimal.size());
  for (auto& g : minimal) elements.push_back(std::move(g.v));
  return GroebnerBasis{IntMatrix(), order, VectorSet(std::move(elements))};
}

inline GroebnerBasis buchberger(const VectorSet& seed, const CostOrder& order) {
  return buchberger(seed.items(), order);
}

}  // namespace toricsip

#endif  // TORICSIP_GROEBNER_HPP
