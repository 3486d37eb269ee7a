#ifndef TORICSIP_IO_HPP
#define TORICSIP_IO_HPP

// JSON and CSV formats. Integers are JSON numbers when |x| <= 2^53 and
// decimal strings otherwise; readers accept both.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricsip/errors.hpp"
#include "toricsip/graver.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/instance.hpp"
#include "toricsip/lattice.hpp"
#include "toricsip/opcost.hpp"
#include "toricsip/toric.hpp"

namespace toricsip::io {

using Json = nlohmann::ordered_json;

// Malformed input; maps to "bad input" at the command line.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json to_json(const Integer& x) {
  static const Integer limit = Integer(1) << 53;
  if (abs(x) <= limit) return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw FormatError("expected a decimal integer, got \"" + s + "\"");
    }
    return Integer(s);
  }
  throw FormatError("expected an integer, got " + j.dump());
}

inline Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an integer array, got " + j.dump());
  std::vector<Integer> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return IntVector(std::move(out));
}

inline Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

// A matrix with no rows cannot record its column count in [[...]] form; the
// optional "cols" field of the object form carries it.
inline IntMatrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("matrix")) throw FormatError("matrix object needs a \"matrix\" field");
    IntMatrix m = matrix_from_json(j.at("matrix"));
    if (m.rows() == 0 && j.contains("cols")) {
      return IntMatrix(0, static_cast<std::size_t>(integer_from_json(j.at("cols"))));
    }
    return m;
  }
  if (!j.is_array()) throw FormatError("expected a matrix (array of rows)");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw FormatError("matrix rows have different lengths");
  }
  return IntMatrix::from_rows(rows, cols);
}

inline Json to_json(const VectorSet& s) {
  Json out = Json::array();
  for (const auto& v : s) out.push_back(to_json(v));
  return out;
}

inline Json to_json(const SipInstance& inst) {
  Json out;
  out["gamma"] = to_json(inst.gamma);
  out["technology"] = to_json(inst.technology);
  out["recourse"] = to_json(inst.recourse);
  out["first_stage_bounds"] = to_json(inst.first_stage_bounds);
  if (inst.first_stage_constraints) {
    out["first_stage_constraints"] = {{"A", to_json(inst.first_stage_constraints->a)},
                                      {"b", to_json(inst.first_stage_constraints->b)}};
  }
  Json scenarios = Json::array();
  for (const auto& s : inst.scenarios) {
    Json js;
    js["p_num"] = to_json(s.p_num);
    js["p_den"] = to_json(s.p_den);
    js["cost"] = to_json(s.cost);
    js["rhs"] = to_json(s.rhs);
    if (s.technology) js["technology"] = to_json(*s.technology);
    scenarios.push_back(std::move(js));
  }
  out["scenarios"] = std::move(scenarios);
  return out;
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

// Zero-row matrices read back as 0 x 0; restore the intended width.
inline IntMatrix sized_matrix(const Json& j, std::size_t cols) {
  IntMatrix m = matrix_from_json(j);
  if (m.rows() == 0) return IntMatrix(0, cols);
  return m;
}

}  // namespace detail

inline SipInstance instance_from_json(const Json& j) {
  SipInstance inst;
  inst.gamma = vector_from_json(detail::field(j, "gamma"));
  const std::size_t d = inst.gamma.size();
  inst.technology = detail::sized_matrix(detail::field(j, "technology"), d);
  inst.recourse = matrix_from_json(detail::field(j, "recourse"));
  if (j.contains("first_stage_bounds")) {
    inst.first_stage_bounds = vector_from_json(j.at("first_stage_bounds"));
  }
  if (j.contains("first_stage_constraints") && !j.at("first_stage_constraints").is_null()) {
    const Json& fc = j.at("first_stage_constraints");
    inst.first_stage_constraints = FirstStageConstraints{
        detail::sized_matrix(detail::field(fc, "A"), d), vector_from_json(detail::field(fc, "b"))};
  }
  const Json& scenarios = detail::field(j, "scenarios");
  if (!scenarios.is_array()) throw FormatError("\"scenarios\" must be an array");
  for (const auto& js : scenarios) {
    Scenario s;
    s.p_num = integer_from_json(detail::field(js, "p_num"));
    s.p_den = integer_from_json(detail::field(js, "p_den"));
    s.cost = vector_from_json(detail::field(js, "cost"));
    s.rhs = vector_from_json(detail::field(js, "rhs"));
    if (js.contains("technology")) s.technology = detail::sized_matrix(js.at("technology"), d);
    inst.scenarios.push_back(std::move(s));
  }
  validate(inst);
  return inst;
}

inline Json decisions_to_json(const DecisionList& d) {
  Json out = Json::array();
  for (const auto& x : d) out.push_back(to_json(x));
  return out;
}

inline DecisionList decisions_from_json(const Json& j) {
  const Json& list = j.is_object() ? detail::field(j, "decisions") : j;
  if (!list.is_array()) throw FormatError("decisions must be an array of vectors");
  DecisionList out;
  for (const auto& x : list) out.push_back(vector_from_json(x));
  return out;
}

inline Json basis_to_json(const IntMatrix& a, const VectorSet& elements,
                          const IntVector* cost = nullptr) {
  Json out;
  out["matrix"] = to_json(a);
  out["cols"] = a.cols();
  if (cost) out["cost"] = to_json(*cost);
  out["size"] = elements.size();
  out["elements"] = to_json(elements);
  return out;
}

inline VectorSet basis_elements_from_json(const Json& j) {
  const Json& list = j.is_object() ? detail::field(j, "elements") : j;
  std::vector<IntVector> out;
  for (const auto& v : list) out.push_back(vector_from_json(v));
  return VectorSet(std::move(out));
}

// Row i = decision index, column j = scenario index.
inline std::string matrix_csv(const OppCostMatrix& m) {
  std::ostringstream os;
  os << "decision";
  for (std::size_t j = 0; j < m.size; ++j) os << ',' << j;
  os << '\n';
  for (std::size_t i = 0; i < m.size; ++i) {
    os << i;
    for (std::size_t j = 0; j < m.size; ++j) {
      const auto& v = m.at(i, j);
      os << ',';
      if (v) {
        os << *v;
      } else {
        os << "infeasible";
      }
    }
    os << '\n';
  }
  return os.str();
}

// Inverse of matrix_csv: the values only.
inline std::vector<std::optional<Integer>> values_from_csv(const std::string& text,
                                                           std::size_t* size = nullptr) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("decision", 0) != 0) {
    throw FormatError("matrix CSV must start with a \"decision,...\" header");
  }
  std::size_t n = 0;
  for (char ch : line) n += (ch == ',');
  std::vector<std::optional<Integer>> out;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // decision index
    std::size_t cols = 0;
    while (std::getline(ls, cell, ',')) {
      ++cols;
      if (cell == "infeasible") {
        out.emplace_back(std::nullopt);
      } else {
        out.emplace_back(integer_from_json(Json(cell)));
      }
    }
    if (cols != n) throw FormatError("matrix CSV row has the wrong number of cells");
    ++rows;
  }
  if (rows != n) throw FormatError("matrix CSV is not square");
  if (size) *size = n;
  return out;
}

inline Json timings_to_json(const PhaseTimings& t) {
  return Json{{"toric", t.toric_us},     {"groebner", t.groebner_us}, {"graver", t.graver_us},
              {"augment", t.augment_us}, {"oracle", t.oracle_us}};
}

inline Json counters_to_json(const BasisCounters& c) {
  return Json{{"toric_runs", c.toric_runs},
              {"buchberger_runs", c.buchberger_runs},
              {"graver_runs", c.graver_runs},
              {"phase_one_test_sets", c.phase_one_test_sets},
              {"oracle_solves", c.oracle_solves},
              {"generators", c.generators},
              {"groebner_elements", c.groebner_elements},
              {"graver_elements", c.graver_elements},
              {"augment_steps", c.augment_steps}};
}

// The CSV content plus decisions, method and per-phase timings (µs).
inline Json matrix_to_json(const OppCostMatrix& m, bool with_timings = true) {
  Json out;
  out["method"] = method_name(m.method);
  out["q_only"] = m.q_only;
  out["size"] = m.size;
  Json values = Json::array();
  for (std::size_t i = 0; i < m.size; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size; ++j) {
      const auto& v = m.at(i, j);
      row.push_back(v ? to_json(*v) : Json("infeasible"));
    }
    values.push_back(std::move(row));
  }
  out["values"] = std::move(values);
  out["decisions"] = decisions_to_json(m.decisions);
  if (with_timings) out["timings_us"] = timings_to_json(m.timings);
  out["counters"] = counters_to_json(m.counters);
  return out;
}

inline OppCostMatrix matrix_from_json_doc(const Json& j) {
  OppCostMatrix m;
  const std::string method = detail::field(j, "method").get<std::string>();
  if (method == "kernel") {
    m.method = Method::kKernel;
  } else if (method == "graver") {
    m.method = Method::kGraver;
  } else if (method == "oracle") {
    m.method = Method::kOracle;
  } else {
    throw FormatError("unknown method \"" + method + "\"");
  }
  m.q_only = j.value("q_only", false);
  const Json& values = detail::field(j, "values");
  m.size = values.size();
  for (const auto& row : values) {
    if (row.size() != m.size) throw FormatError("matrix values are not square");
    for (const auto& v : row) {
      if (v.is_string() && v.get<std::string>() == "infeasible") {
        m.values.emplace_back(std::nullopt);
        m.status.push_back(CellStatus::kInfeasible);
      } else {
        m.values.emplace_back(integer_from_json(v));
        m.status.push_back(CellStatus::kOk);
      }
    }
  }
  m.decisions = decisions_from_json(detail::field(j, "decisions"));
  return m;
}

}  // namespace toricsip::io

#endif  // TORICSIP_IO_HPP
