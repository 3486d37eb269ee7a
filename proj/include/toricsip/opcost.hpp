#ifndef TORICSIP_OPCOST_HPP
#define TORICSIP_OPCOST_HPP

// Opportunity cost matrices α_ij = γ·x_i + Q(x_i, ξ_j), where
// Q(x, ξ_j) = min { c_j·y : W y = h_j - T_j x, y >= 0 }, computed three ways:
//   kernel  one toric generating set of W, one reduced Gröbner basis per
//           distinct scenario cost, augmentation per cell;
//   graver  one Graver basis of W, augmentation per cell;
//   oracle  brute-force enumeration per cell.
// Cells are independent and may be evaluated concurrently; the result does
// not depend on the schedule.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "toricsip/augment.hpp"
#include "toricsip/errors.hpp"
#include "toricsip/graver.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/instance.hpp"
#include "toricsip/lattice.hpp"
#include "toricsip/oracle.hpp"
#include "toricsip/test_set.hpp"
#include "toricsip/toric.hpp"

namespace toricsip {

enum class Method { kKernel, kGraver, kOracle };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kKernel: return "kernel";
    case Method::kGraver: return "graver";
    case Method::kOracle: return "oracle";
  }
  return "?";
}

using DecisionList = std::vector<IntVector>;

enum class CellStatus { kOk, kInfeasible };

struct PhaseTimings {
  std::int64_t toric_us = 0;
  std::int64_t groebner_us = 0;
  std::int64_t graver_us = 0;
  std::int64_t augment_us = 0;
  std::int64_t oracle_us = 0;
};

// Instrumentation: how often each expensive step ran during one build.
struct BasisCounters {
  std::size_t toric_runs = 0;
  std::size_t buchberger_runs = 0;
  std::size_t graver_runs = 0;
  std::size_t phase_one_test_sets = 0;
  std::size_t oracle_solves = 0;
  std::size_t generators = 0;        // size of the toric generating set
  std::size_t groebner_elements = 0; // summed over the distinct costs
  std::size_t graver_elements = 0;
  std::uint64_t augment_steps = 0;
};

struct OppCostMatrix {
  Method method = Method::kKernel;
  bool q_only = false;
  std::size_t size = 0;
  std::vector<std::optional<Integer>> values;  // row-major; empty when infeasible
  std::vector<CellStatus> status;
  DecisionList decisions;
  PhaseTimings timings;
  BasisCounters counters;

  const std::optional<Integer>& at(std::size_t i, std::size_t j) const {
    return values.at(i * size + j);
  }
  CellStatus status_at(std::size_t i, std::size_t j) const { return status.at(i * size + j); }
  bool same_values(const OppCostMatrix& o) const {
    return size == o.size && values == o.values && status == o.status;
  }
};

struct OpcostOptions {
  bool q_only = false;
  std::size_t threads = 0;  // 0: all available
  std::optional<Integer> oracle_bound;
  std::uint64_t node_cap = oracle::kDefaultNodeCap;
  std::size_t graver_max_elements = GraverOptions{}.max_elements;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(k) for k in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown.
inline void parallel_for(std::size_t count, std::size_t threads,
                         const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::atomic<bool> stop{false};
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      while (!stop.load()) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

inline Integer max_abs(const IntVector& v) {
  Integer m = 0;
  for (const auto& x : v) {
    if (abs(x) > m) m = abs(x);
  }
  return m;
}

}  // namespace detail

// Feasible point of W y = b built only from columns of W that are (signed
// multiples of) unit vectors: each nonzero row is covered by one such column
// whose sign matches and whose coefficient divides b_r. For the
// Hemmecke–Schultz recourse this reproduces the textbook closed form.
inline std::optional<IntVector> unit_column_feasible(const IntMatrix& w, const IntVector& b) {
  detail::require_same_size(w.rows(), b.size(), "unit_column_feasible");
  IntVector y(w.cols());
  for (std::size_t r = 0; r < w.rows(); ++r) {
    if (b[r].is_zero()) continue;
    bool covered = false;
    for (std::size_t k = 0; k < w.cols() && !covered; ++k) {
      const Integer& coef = w(r, k);
      if (coef.is_zero() || coef.sign() != b[r].sign() || b[r] % coef != 0) continue;
      bool unit = true;
      for (std::size_t i = 0; i < w.rows() && unit; ++i) {
        if (i != r && !w(i, k).is_zero()) unit = false;
      }
      if (!unit) continue;
      y[k] = b[r] / coef;
      covered = true;
    }
    if (!covered) return std::nullopt;
  }
  return y;
}

// Box size used by the oracle when none is given: twice the largest
// magnitude among right-hand sides and first-stage bounds.
inline Integer default_oracle_bound(const SipInstance& inst) {
  Integer m = 1;
  m = std::max(m, detail::max_abs(inst.first_stage_bounds));
  for (const auto& s : inst.scenarios) m = std::max(m, detail::max_abs(s.rhs));
  if (inst.first_stage_constraints) {
    m = std::max(m, detail::max_abs(inst.first_stage_constraints->b));
  }
  return 2 * m;
}

// The one-scenario matrix [[A, 0], [T, W]] (or [T W] without a first-stage
// block), with first-stage variables first.
inline IntMatrix one_scenario_matrix(const SipInstance& inst, std::size_t j) {
  SipBlockStructure s;
  s.first_stage = inst.first_stage_constraints ? inst.first_stage_constraints->a
                                               : IntMatrix(0, inst.first_stage_dim());
  s.technology = inst.technology_for(j);
  s.recourse = inst.recourse;
  s.scenarios = 1;
  return stacked_matrix(s);
}

inline IntVector one_scenario_rhs(const SipInstance& inst, std::size_t j) {
  std::vector<Integer> out;
  if (inst.first_stage_constraints) {
    for (const auto& v : inst.first_stage_constraints->b) out.push_back(v);
  }
  for (const auto& v : inst.scenarios[j].rhs) out.push_back(v);
  return IntVector(std::move(out));
}

inline IntVector one_scenario_cost(const SipInstance& inst, std::size_t j) {
  std::vector<Integer> out(inst.gamma.begin(), inst.gamma.end());
  for (const auto& v : inst.scenarios[j].cost) out.push_back(v);
  return IntVector(std::move(out));
}

// x_j = first-stage part of the >_c-optimum of the one-scenario problem
// min γ·x + c_j·y over the stacked system, for every scenario j.
inline DecisionList single_scenario_decisions(const SipInstance& inst, Method method,
                                              const OpcostOptions& options = {}) {
  validate(inst);
  if (inst.first_stage_bounds.empty() && !inst.first_stage_constraints) {
    throw PreconditionError(
        "single_scenario_decisions: first stage is unbounded (no bounds or constraints)");
  }
  if (!inst.gamma.is_nonnegative()) {
    throw PreconditionError("single_scenario_decisions: first-stage costs must be non-negative");
  }
  const std::size_t d = inst.first_stage_dim();
  const std::size_t n = inst.scenarios.size();
  const Integer bound = options.oracle_bound ? *options.oracle_bound : default_oracle_bound(inst);

  // Bases are shared between scenarios with the same stacked matrix / cost.
  std::map<std::size_t, IntMatrix> matrices;  // scenario -> stacked matrix (dedup below)
  std::vector<IntMatrix> distinct;
  std::vector<std::size_t> matrix_of(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix s = one_scenario_matrix(inst, j);
    auto it = std::find(distinct.begin(), distinct.end(), s);
    matrix_of[j] = static_cast<std::size_t>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(std::move(s));
  }
  std::vector<std::optional<VectorSet>> generators(distinct.size());
  std::vector<std::unique_ptr<PhaseOneSolver>> phase_one;
  for (const auto& s : distinct) phase_one.push_back(std::make_unique<PhaseOneSolver>(s));
  std::map<std::pair<std::size_t, IntVector>, std::unique_ptr<Augmenter>> walkers;

  DecisionList out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const IntMatrix& s = distinct[matrix_of[j]];
    const IntVector b = one_scenario_rhs(inst, j);
    const IntVector c = one_scenario_cost(inst, j);
    IntVector solution;
    if (method == Method::kOracle) {
      oracle::IpProblem p{s, b, c, bound};
      auto r = oracle::solve_bruteforce(p, oracle::Options{options.node_cap});
      if (r.status != oracle::IpStatus::kOptimal) {
        throw PreconditionError("single_scenario_decisions: scenario " + std::to_string(j) +
                                " has no feasible point in the oracle box");
      }
      solution = *r.solution;
    } else {
      auto key = std::make_pair(matrix_of[j], c);
      auto it = walkers.find(key);
      if (it == walkers.end()) {
        auto& gens = generators[matrix_of[j]];
        VectorSet directions;
        if (method == Method::kKernel) {
          if (!gens) gens = toric_generating_set(s).generators;
          directions = test_set(s, c, *gens).elements;
        } else {
          if (!gens) {
            gens = graver_basis(s, GraverOptions{options.graver_max_elements}).elements;
          }
          directions = *gens;
        }
        it = walkers.emplace(key, std::make_unique<Augmenter>(directions, CostOrder(c))).first;
      }
      auto start = unit_column_feasible(s, b);
      if (!start) start = phase_one[matrix_of[j]]->solve(b);
      if (!start) {
        throw PreconditionError("single_scenario_decisions: scenario " + std::to_string(j) +
                                " is infeasible");
      }
      solution = it->second->run(*start).solution;
    }
    out.emplace_back(std::vector<Integer>(solution.begin(),
                                          solution.begin() + static_cast<std::ptrdiff_t>(d)));
  }
  return out;
}

namespace detail {

inline void check_decisions(const SipInstance& inst, const DecisionList& decisions) {
  validate(inst);
  if (decisions.size() != inst.scenarios.size()) {
    throw DimensionError("opcost: need one decision per scenario");
  }
  for (const auto& x : decisions) {
    require_same_size(x.size(), inst.first_stage_dim(), "opcost: decision dimension");
    if (!x.is_nonnegative()) throw PreconditionError("opcost: decisions must be non-negative");
    if (inst.first_stage_constraints) {
      const auto& fc = *inst.first_stage_constraints;
      if (!(fc.a * x == fc.b)) {
        throw PreconditionError("opcost: decision violates the first-stage constraints");
      }
    }
  }
}

inline OppCostMatrix empty_matrix(Method m, const DecisionList& decisions,
                                  const OpcostOptions& options) {
  OppCostMatrix out;
  out.method = m;
  out.q_only = options.q_only;
  out.size = decisions.size();
  out.values.assign(out.size * out.size, std::nullopt);
  out.status.assign(out.size * out.size, CellStatus::kInfeasible);
  out.decisions = decisions;
  return out;
}

// Shared cell loop for the two augmentation-based methods; walker_of[j] is
// the prepared direction set for scenario j's cost.
inline void fill_by_augmentation(const SipInstance& inst, OppCostMatrix& out,
                                 const std::vector<const Augmenter*>& walker_of,
                                 const OpcostOptions& options) {
  const std::size_t n = out.size;
  PhaseOneSolver phase_one(inst.recourse);
  std::atomic<std::uint64_t> steps{0};
  const auto start = Clock::now();
  parallel_for(n * n, resolve_threads(options.threads), [&](std::size_t cell) {
    const std::size_t i = cell / n, j = cell % n;
    const IntVector b = rhs(inst, out.decisions[i], j);
    auto y = unit_column_feasible(inst.recourse, b);
    if (!y) y = phase_one.solve(b);
    if (!y) return;
    const auto r = walker_of[j]->run(std::move(*y));
    steps += r.steps;
    Integer value = r.value;
    if (!options.q_only) value += dot(inst.gamma, out.decisions[i]);
    out.values[cell] = std::move(value);
    out.status[cell] = CellStatus::kOk;
  });
  out.timings.augment_us = micros_since(start);
  out.counters.augment_steps = steps.load();
  out.counters.phase_one_test_sets = phase_one.test_sets_built();
}

}  // namespace detail

inline OppCostMatrix opcost_kernel(const SipInstance& inst, const DecisionList& decisions,
                                   const OpcostOptions& options = {}) {
  detail::check_decisions(inst, decisions);
  auto out = detail::empty_matrix(Method::kKernel, decisions, options);

  auto t0 = detail::Clock::now();
  const auto generators = toric_generating_set(inst.recourse).generators;
  out.timings.toric_us = detail::micros_since(t0);
  out.counters.toric_runs = 1;
  out.counters.generators = generators.size();

  t0 = detail::Clock::now();
  std::map<IntVector, std::unique_ptr<Augmenter>> by_cost;
  std::vector<const Augmenter*> walker_of(out.size);
  for (std::size_t j = 0; j < out.size; ++j) {
    const IntVector& c = inst.scenarios[j].cost;
    auto it = by_cost.find(c);
    if (it == by_cost.end()) {
      const auto gb = test_set(inst.recourse, c, generators);
      ++out.counters.buchberger_runs;
      out.counters.groebner_elements += gb.elements.size();
      it = by_cost.emplace(c, std::make_unique<Augmenter>(gb.elements, gb.order)).first;
    }
    walker_of[j] = it->second.get();
  }
  out.timings.groebner_us = detail::micros_since(t0);

  detail::fill_by_augmentation(inst, out, walker_of, options);
  return out;
}

inline OppCostMatrix opcost_graver(const SipInstance& inst, const DecisionList& decisions,
                                   const OpcostOptions& options = {}) {
  detail::check_decisions(inst, decisions);
  auto out = detail::empty_matrix(Method::kGraver, decisions, options);

  auto t0 = detail::Clock::now();
  const auto graver = graver_basis(inst.recourse, GraverOptions{options.graver_max_elements});
  out.timings.graver_us = detail::micros_since(t0);
  out.counters.graver_runs = 1;
  out.counters.graver_elements = graver.elements.size();

  // Per-cost filtering of the improving directions is part of augmentation.
  t0 = detail::Clock::now();
  std::map<IntVector, std::unique_ptr<Augmenter>> by_cost;
  std::vector<const Augmenter*> walker_of(out.size);
  for (std::size_t j = 0; j < out.size; ++j) {
    const IntVector& c = inst.scenarios[j].cost;
    auto it = by_cost.find(c);
    if (it == by_cost.end()) {
      it = by_cost.emplace(c, std::make_unique<Augmenter>(graver.elements, CostOrder(c))).first;
    }
    walker_of[j] = it->second.get();
  }
  const auto prep_us = detail::micros_since(t0);

  detail::fill_by_augmentation(inst, out, walker_of, options);
  out.timings.augment_us += prep_us;
  return out;
}

inline OppCostMatrix opcost_oracle(const SipInstance& inst, const DecisionList& decisions,
                                   const OpcostOptions& options = {}) {
  detail::check_decisions(inst, decisions);
  auto out = detail::empty_matrix(Method::kOracle, decisions, options);
  const Integer bound = options.oracle_bound ? *options.oracle_bound : default_oracle_bound(inst);
  const std::size_t n = out.size;
  const auto t0 = detail::Clock::now();
  detail::parallel_for(n * n, detail::resolve_threads(options.threads), [&](std::size_t cell) {
    const std::size_t i = cell / n, j = cell % n;
    oracle::IpProblem p{inst.recourse, rhs(inst, decisions[i], j), inst.scenarios[j].cost,
                        bound};
    const auto r = oracle::solve_bruteforce(p, oracle::Options{options.node_cap});
    if (r.status != oracle::IpStatus::kOptimal) return;
    Integer value = *r.value;
    if (!options.q_only) value += dot(inst.gamma, decisions[i]);
    out.values[cell] = std::move(value);
    out.status[cell] = CellStatus::kOk;
  });
  out.timings.oracle_us = detail::micros_since(t0);
  out.counters.oracle_solves = n * n;
  return out;
}

inline OppCostMatrix opcost(Method method, const SipInstance& inst, const DecisionList& decisions,
                            const OpcostOptions& options = {}) {
  switch (method) {
    case Method::kKernel: return opcost_kernel(inst, decisions, options);
    case Method::kGraver: return opcost_graver(inst, decisions, options);
    case Method::kOracle: return opcost_oracle(inst, decisions, options);
  }
  throw PreconditionError("opcost: unknown method");
}

}  // namespace toricsip

#endif  // TORICSIP_OPCOST_HPP
