#ifndef TORICSIP_INSTANCE_HPP
#define TORICSIP_INSTANCE_HPP

// Two-stage stochastic integer program data:
//   min γ·x + Σ_j p_j c_j·y_j  s.t.  A x = b,  T_j x + W y_j = h_j,  x, y_j >= 0.
// W is shared by all scenarios; T may be overridden per scenario.

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricsip/errors.hpp"
#include "toricsip/lattice.hpp"

namespace toricsip {

struct Scenario {
  Integer p_num = 1;
  Integer p_den = 1;
  IntVector cost;  // c_j, non-negative
  IntVector rhs;   // h_j
  std::optional<IntMatrix> technology;  // T_j when scenario-dependent

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct FirstStageConstraints {
  IntMatrix a;
  IntVector b;

  friend bool operator==(const FirstStageConstraints&, const FirstStageConstraints&) = default;
};

struct SipInstance {
  IntVector gamma;
  IntMatrix technology;
  IntMatrix recourse;
  // A priori upper bounds on optimal first-stage decisions; size 0 or dim(γ).
  IntVector first_stage_bounds;
  std::optional<FirstStageConstraints> first_stage_constraints;
  std::vector<Scenario> scenarios;

  std::size_t first_stage_dim() const { return gamma.size(); }
  std::size_t recourse_dim() const { return recourse.cols(); }

  const IntMatrix& technology_for(std::size_t j) const {
    const auto& s = scenarios.at(j);
    return s.technology ? *s.technology : technology;
  }

  friend bool operator==(const SipInstance&, const SipInstance&) = default;
};

// Throws PreconditionError/DimensionError describing the first violation.
inline void validate(const SipInstance& inst) {
  const std::size_t d = inst.first_stage_dim();
  const std::size_t m = inst.recourse.rows();
  const std::size_t n = inst.recourse.cols();
  if (inst.technology.rows() != m || inst.technology.cols() != d) {
    throw DimensionError("instance: technology must be rows(W) x dim(gamma)");
  }
  if (!inst.first_stage_bounds.empty() && inst.first_stage_bounds.size() != d) {
    throw DimensionError("instance: first_stage_bounds must match dim(gamma)");
  }
  if (!inst.first_stage_bounds.is_nonnegative()) {
    throw PreconditionError("instance: first_stage_bounds must be non-negative");
  }
  if (inst.first_stage_constraints) {
    const auto& fc = *inst.first_stage_constraints;
    if (fc.a.cols() != d || fc.a.rows() != fc.b.size()) {
      throw DimensionError("instance: first_stage_constraints shape mismatch");
    }
  }
  if (inst.scenarios.empty()) throw PreconditionError("instance: no scenarios");
  boost::multiprecision::cpp_rational total = 0;
  for (std::size_t j = 0; j < inst.scenarios.size(); ++j) {
    const auto& s = inst.scenarios[j];
    const std::string where = "instance: scenario " + std::to_string(j) + ": ";
    if (s.cost.size() != n) throw DimensionError(where + "cost must match cols(W)");
    if (s.rhs.size() != m) throw DimensionError(where + "rhs must match rows(W)");
    if (!s.cost.is_nonnegative()) throw PreconditionError(where + "cost must be non-negative");
    if (s.p_den.sign() <= 0 || s.p_num.sign() < 0) {
      throw PreconditionError(where + "probability must be num/den with den > 0, num >= 0");
    }
    if (s.technology && (s.technology->rows() != m || s.technology->cols() != d)) {
      throw DimensionError(where + "technology must be rows(W) x dim(gamma)");
    }
    total += boost::multiprecision::cpp_rational(s.p_num, s.p_den);
  }
  if (total != 1) throw PreconditionError("instance: probabilities do not sum to 1");
}

// b(x, ξ_j) = h_j - T_j x.
inline IntVector rhs(const SipInstance& inst, const IntVector& x, std::size_t j) {
  if (j >= inst.scenarios.size()) throw DimensionError("rhs: scenario index out of range");
  detail::require_same_size(x.size(), inst.first_stage_dim(), "rhs: decision dimension");
  return inst.scenarios[j].rhs - inst.technology_for(j) * x;
}

}  // namespace toricsip

#endif  // TORICSIP_INSTANCE_HPP
