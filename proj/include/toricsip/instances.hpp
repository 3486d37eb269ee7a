#ifndef TORICSIP_INSTANCES_HPP
#define TORICSIP_INSTANCES_HPP

// Benchmark problem generators: the Hemmecke–Schultz two-stage program in
// slack form, and a small stochastic network design problem.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "toricsip/errors.hpp"
#include "toricsip/instance.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip {

namespace detail {

// Uniform integer in [lo, hi] from raw mt19937_64 output by rejection, so
// that instances do not depend on the standard library's distributions.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

}  // namespace detail

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct HsConfig {
  std::size_t scenarios = 1;
  std::uint64_t seed = 1;
  std::array<Interval, 4> box{{{300, 12000}, {300, 12000}, {200, 12000}, {200, 12000}}};

  static HsConfig scaled(std::size_t n, std::uint64_t seed) {
    HsConfig c;
    c.scenarios = n;
    c.seed = seed;
    c.box = {{{3, 12}, {3, 12}, {2, 12}, {2, 12}}};
    return c;
  }
};

// Recourse matrix over (y1, y2, y3, y4, u1, u2, u3, u4).
inline IntMatrix hs_recourse() {
  return IntMatrix{{1, 0, 1, 0, -1, 0, 0, 0},
                   {0, 1, 0, 1, 0, -1, 0, 0},
                   {2, 1, 0, 0, 0, 0, 1, 0},
                   {1, 2, 0, 0, 0, 0, 0, 1}};
}
inline IntVector hs_cost() { return IntVector{16, 19, 47, 54, 0, 0, 0, 0}; }
inline IntVector hs_gamma() { return IntVector{35, 40}; }

inline SipInstance gen_hs(const HsConfig& config) {
  if (config.scenarios == 0) throw PreconditionError("gen_hs: need at least one scenario");
  for (const auto& iv : config.box) {
    if (iv.lo < 0 || iv.lo > iv.hi) throw PreconditionError("gen_hs: invalid box interval");
  }
  SipInstance inst;
  inst.gamma = hs_gamma();
  inst.technology = IntMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}};
  inst.recourse = hs_recourse();
  inst.first_stage_bounds = IntVector{config.box[0].hi, config.box[1].hi};
  std::mt19937_64 rng(config.seed);
  for (std::size_t j = 0; j < config.scenarios; ++j) {
    Scenario s;
    s.p_num = 1;
    s.p_den = config.scenarios;
    s.cost = hs_cost();
    s.rhs = IntVector(4);
    for (std::size_t k = 0; k < 4; ++k) {
      s.rhs[k] = detail::uniform_int(rng, config.box[k].lo, config.box[k].hi);
    }
    inst.scenarios.push_back(std::move(s));
  }
  return inst;
}

// Closed-form feasible recourse for first-stage x and scenario ξ: cover
// shortfalls with y3/y4, surpluses with u1/u2, and put ξ3, ξ4 in u3/u4.
inline IntVector hs_feasible(const IntVector& x, const IntVector& xi) {
  detail::require_same_size(x.size(), 2, "hs_feasible: x");
  detail::require_same_size(xi.size(), 4, "hs_feasible: xi");
  if (xi[2].sign() < 0 || xi[3].sign() < 0) {
    throw PreconditionError("hs_feasible: xi3 and xi4 must be non-negative");
  }
  const auto pos = [](const Integer& v) { return v.sign() > 0 ? v : Integer(0); };
  IntVector z(8);
  z[2] = pos(xi[0] - x[0]);
  z[3] = pos(xi[1] - x[1]);
  z[4] = pos(x[0] - xi[0]);
  z[5] = pos(x[1] - xi[1]);
  z[6] = xi[2];
  z[7] = xi[3];
  return z;
}

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
};

// All defaults live here: unit capacities, fixed cost 3 and flow cost 1 per
// arc, one commodity, one origin-destination demand in [0, max_demand] per
// scenario and commodity.
struct SndConfig {
  std::size_t vertices = 3;
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 0}};
  std::size_t commodities = 1;
  std::size_t scenarios = 1;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> fixed_costs;    // c_a; empty = 3 each
  std::vector<std::int64_t> flow_costs;     // q_ac, arc-major; empty = 1 each
  std::vector<std::int64_t> capacities;     // u_a; empty = 1 each
  std::int64_t max_demand = 1;
  // Explicit demands d[scenario][commodity][vertex]; replaces sampling.
  std::optional<std::vector<std::vector<std::vector<std::int64_t>>>> demands;

  // Directed cycle on k vertices.
  static SndConfig cycle(std::size_t k) {
    SndConfig c;
    c.vertices = k;
    c.arcs.clear();
    for (std::size_t v = 0; v < k; ++v) c.arcs.push_back({v, (v + 1) % k});
    return c;
  }
};

// Variables: first stage (x_a..., s_a...) with x_a + s_a = 1; recourse
// (y_ac arc-major..., w_a...). Rows: flow conservation per (vertex,
// commodity), then capacity per arc: Σ_c y_ac + w_a - u_a x_a = 0.
inline SipInstance gen_snd(const SndConfig& config) {
  const std::size_t na = config.arcs.size();
  const std::size_t nv = config.vertices;
  const std::size_t nc = config.commodities;
  if (na == 0 || nv == 0 || nc == 0 || config.scenarios == 0) {
    throw PreconditionError("gen_snd: empty topology, commodity set or scenario set");
  }
  for (const auto& a : config.arcs) {
    if (a.tail >= nv || a.head >= nv || a.tail == a.head) {
      throw PreconditionError("gen_snd: invalid arc");
    }
  }
  const auto pick = [](const std::vector<std::int64_t>& v, std::size_t i, std::int64_t dflt,
                       std::size_t expect, const char* what) {
    if (v.empty()) return dflt;
    if (v.size() != expect) throw DimensionError(std::string("gen_snd: ") + what);
    return v[i];
  };

  SipInstance inst;
  inst.gamma = IntVector(2 * na);
  for (std::size_t a = 0; a < na; ++a) {
    inst.gamma[a] = pick(config.fixed_costs, a, 3, na, "fixed_costs");
  }
  FirstStageConstraints fc{IntMatrix(na, 2 * na), IntVector(na)};
  for (std::size_t a = 0; a < na; ++a) {
    fc.a(a, a) = 1;
    fc.a(a, na + a) = 1;
    fc.b[a] = 1;
  }
  inst.first_stage_constraints = std::move(fc);
  inst.first_stage_bounds = IntVector(2 * na);
  for (std::size_t k = 0; k < 2 * na; ++k) inst.first_stage_bounds[k] = 1;

  const std::size_t rows = nv * nc + na;
  const std::size_t cols = na * nc + na;
  inst.recourse = IntMatrix(rows, cols);
  inst.technology = IntMatrix(rows, 2 * na);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t col = a * nc + c;
      inst.recourse(config.arcs[a].tail * nc + c, col) += 1;
      inst.recourse(config.arcs[a].head * nc + c, col) -= 1;
      inst.recourse(nv * nc + a, col) = 1;
    }
    inst.recourse(nv * nc + a, na * nc + a) = 1;
    inst.technology(nv * nc + a, a) = -pick(config.capacities, a, 1, na, "capacities");
  }
  IntVector cost(cols);
  for (std::size_t k = 0; k < na * nc; ++k) {
    cost[k] = pick(config.flow_costs, k, 1, na * nc, "flow_costs");
  }

  std::mt19937_64 rng(config.seed);
  for (std::size_t j = 0; j < config.scenarios; ++j) {
    Scenario s;
    s.p_num = 1;
    s.p_den = config.scenarios;
    s.cost = cost;
    s.rhs = IntVector(rows);
    for (std::size_t c = 0; c < nc; ++c) {
      std::vector<std::int64_t> d(nv, 0);
      if (config.demands) {
        const auto& table = *config.demands;
        if (j >= table.size() || c >= table[j].size() || table[j][c].size() != nv) {
          throw DimensionError("gen_snd: demand table shape");
        }
        d = table[j][c];
      } else {
        const auto origin = static_cast<std::size_t>(
            detail::uniform_int(rng, 0, static_cast<std::int64_t>(nv) - 1));
        auto dest = static_cast<std::size_t>(
            detail::uniform_int(rng, 0, static_cast<std::int64_t>(nv) - 2));
        if (dest >= origin) ++dest;
        const std::int64_t amount = detail::uniform_int(rng, 0, config.max_demand);
        d[origin] += amount;
        d[dest] -= amount;
      }
      std::int64_t balance = 0;
      for (auto v : d) balance += v;
      if (balance != 0) {
        throw PreconditionError("gen_snd: demands of scenario " + std::to_string(j) +
                                ", commodity " + std::to_string(c) + " do not balance");
      }
      for (std::size_t v = 0; v < nv; ++v) s.rhs[v * nc + c] = d[v];
    }
    inst.scenarios.push_back(std::move(s));
  }
  return inst;
}

}  // namespace toricsip

#endif  // TORICSIP_INSTANCES_HPP
