#ifndef TORICSIP_CLI_HPP
#define TORICSIP_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 verification mismatch,
// 2 bad input, 3 resource cap hit.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricsip/augment.hpp"
#include "toricsip/errors.hpp"
#include "toricsip/graver.hpp"
#include "toricsip/groebner.hpp"
#include "toricsip/instances.hpp"
#include "toricsip/io.hpp"
#include "toricsip/opcost.hpp"
#include "toricsip/oracle.hpp"
#include "toricsip/test_set.hpp"
#include "toricsip/toric.hpp"

#ifndef TORICSIP_FIXTURE_DIR
#define TORICSIP_FIXTURE_DIR "fixtures"
#endif

namespace toricsip::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kBadInput = 2, kResource = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::FormatError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline io::Json read_json(const std::string& path) {
  try {
    return io::Json::parse(read_file(path));
  } catch (const io::Json::parse_error& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::FormatError("cannot write " + path);
  out << text;
}

inline std::string dump(const io::Json& j) { return j.dump() + "\n"; }

inline std::uint64_t node_cap() {
  const char* env = std::getenv("OPCOST_NODE_CAP");
  if (!env || !*env) return oracle::kDefaultNodeCap;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw io::FormatError(std::string("OPCOST_NODE_CAP is not a positive integer: ") + env);
  }
}

inline Method parse_method(const std::string& s) {
  if (s == "kernel") return Method::kKernel;
  if (s == "graver") return Method::kGraver;
  if (s == "oracle") return Method::kOracle;
  throw io::FormatError("unknown method " + s);
}

// Sum of per-cell hashes: independent of the order cells are visited in.
inline std::uint64_t checksum(const OppCostMatrix& m) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < m.size; ++i) {
    for (std::size_t j = 0; j < m.size; ++j) {
      const auto& v = m.at(i, j);
      const std::string cell =
          std::to_string(i) + ":" + std::to_string(j) + ":" + (v ? v->str() : "infeasible");
      std::uint64_t h = 1469598103934665603ull;  // FNV-1a
      for (unsigned char ch : cell) {
        h ^= ch;
        h *= 1099511628211ull;
      }
      total += h;
    }
  }
  return total;
}

inline std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      if (item.find_first_not_of("0123456789") != std::string::npos) throw io::FormatError(item);
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw io::FormatError("bad list entry \"" + item + "\"");
    }
  }
  return out;
}

// Verification report: one line per check, no timings, so that two runs on
// the same fixtures print the same text.
class Report {
 public:
  explicit Report(std::ostream& os) : os_(os) {}
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    os_ << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) os_ << "  " << detail;
    os_ << '\n';
    if (!ok) ++failures_;
  }
  std::size_t failures() const { return failures_; }

 private:
  std::ostream& os_;
  std::size_t failures_ = 0;
};

inline void verify_instance(const std::string& name, const SipInstance& inst, Report& report,
                            const OpcostOptions& options) {
  const auto decisions = single_scenario_decisions(inst, Method::kKernel, options);
  report.check(name + ": decisions kernel = graver",
               decisions == single_scenario_decisions(inst, Method::kGraver, options));
  report.check(name + ": decisions kernel = oracle",
               decisions == single_scenario_decisions(inst, Method::kOracle, options));
  const auto k = opcost_kernel(inst, decisions, options);
  const auto g = opcost_graver(inst, decisions, options);
  const auto o = opcost_oracle(inst, decisions, options);
  std::ostringstream sum;
  sum << "checksum=" << checksum(k);
  report.check(name + ": kernel = oracle", k.same_values(o), sum.str());
  report.check(name + ": graver = oracle", g.same_values(o));
  bool diagonal = true;
  for (std::size_t j = 0; j < k.size; ++j) {
    for (std::size_t i = 0; i < k.size; ++i) {
      if (!k.at(j, j) || (k.at(i, j) && *k.at(i, j) < *k.at(j, j))) diagonal = false;
    }
  }
  report.check(name + ": diagonal is column minimum", diagonal);
  std::vector<IntVector> costs;
  for (const auto& sc : inst.scenarios) costs.push_back(sc.cost);
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  report.check(name + ": basis reuse counters",
               k.counters.toric_runs == 1 && k.counters.buchberger_runs == costs.size() &&
                   g.counters.graver_runs == 1);
  auto serial = options;
  serial.threads = 1;
  report.check(name + ": schedule independence",
               opcost_kernel(inst, decisions, serial).same_values(k));
}

inline void verify_matrix(const std::string& name, const IntMatrix& a, const IntVector& c,
                          Report& report) {
  const auto gb = test_set(a, c);
  std::mt19937_64 rng(7);
  auto seed = toric_generating_set(a).generators;
  bool unique = true;
  for (int round = 0; round < 5; ++round) {
    std::vector<IntVector> items(seed.begin(), seed.end());
    std::shuffle(items.begin(), items.end(), rng);
    for (auto& v : items) {
      if (rng() & 1) v = -v;
    }
    std::vector<IntVector> padded = items;
    for (std::size_t k = 0; k + 1 < items.size(); ++k) padded.push_back(items[k] + items[k + 1]);
    if (!(buchberger(padded, gb.order).elements == gb.elements)) unique = false;
  }
  std::ostringstream sizes;
  sizes << "groebner=" << gb.elements.size();
  report.check(name + ": reduced basis independent of seed", unique, sizes.str());
  const auto graver = graver_basis(a);
  sizes.str("");
  sizes << "graver=" << graver.elements.size();
  report.check(name + ": groebner within graver", contains_groebner(gb, graver), sizes.str());
  const auto boxed = oracle::enumerate_graver_in_box(a, 6);
  std::vector<IntVector> in_box;
  for (const auto& v : graver.elements) {
    bool inside = true;
    for (const auto& x : v) inside = inside && abs(x) <= 6;
    if (inside) in_box.push_back(v);
  }
  report.check(name + ": graver agrees with box enumeration", VectorSet(in_box) == boxed);
}

inline void verify_lift(const std::string& name, const io::Json& j, Report& report) {
  SipBlockStructure s;
  s.first_stage = io::matrix_from_json(io::detail::field(j, "A"));
  s.technology = io::matrix_from_json(io::detail::field(j, "T"));
  s.recourse = io::matrix_from_json(io::detail::field(j, "W"));
  s.scenarios = 1;
  const auto single = graver_basis(stacked_matrix(s));
  for (const auto& n : io::detail::field(j, "N")) {
    s.scenarios = n.get<std::size_t>();
    const bool same = lift_sip_graver(single, s).elements == graver_basis(stacked_matrix(s)).elements;
    report.check(name + ": lift N=" + std::to_string(s.scenarios), same);
  }
}

inline int verify(const std::string& dir, std::ostream& os, const OpcostOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw io::FormatError("fixture directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  Report report(os);
  for (const auto& path : files) {
    const auto j = read_json(path.string());
    const std::string name = path.filename().string();
    // Plain instance files are recognised by their "gamma" field.
    const std::string kind = j.contains("gamma") ? "instance" : j.value("kind", std::string());
    if (kind == "instance") {
      verify_instance(name, io::instance_from_json(j), report, options);
    } else if (kind == "matrices") {
      std::size_t k = 0;
      for (const auto& entry : io::detail::field(j, "cases")) {
        verify_matrix(name + "[" + std::to_string(k++) + "]",
                      io::matrix_from_json(io::detail::field(entry, "A")),
                      io::vector_from_json(io::detail::field(entry, "c")), report);
      }
    } else if (kind == "lift") {
      verify_lift(name, j, report);
    } else {
      throw io::FormatError(name + ": unknown fixture kind " + kind);
    }
  }
  os << (report.failures() == 0 ? "all checks passed" : "checks failed: ")
     << (report.failures() == 0 ? std::string() : std::to_string(report.failures())) << '\n';
  return report.failures() == 0 ? kOk : kMismatch;
}

}  // namespace detail

inline int run(int argc, char** argv) {
  CLI::App app{"Test sets, Graver bases and opportunity cost matrices for two-stage stochastic IPs"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads for opcost cells (0 = all available)")
      ->capture_default_str();
  app.fallthrough();

  // gen-hs / gen-snd
  std::size_t n = 2;
  std::uint64_t seed = 1;
  bool scaled = false;
  std::string out;
  auto* gen_hs_cmd = app.add_subcommand("gen-hs", "Write a Hemmecke-Schultz instance");
  auto* gen_snd_cmd = app.add_subcommand("gen-snd", "Write a network design instance");
  std::size_t cycle = 3, commodities = 1;
  std::int64_t max_demand = 1;
  for (auto* cmd : {gen_hs_cmd, gen_snd_cmd}) {
    cmd->add_option("--n", n, "Scenario count")->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    cmd->add_option("--out", out, "Output path (default stdout)");
  }
  gen_hs_cmd->add_flag("--scaled", scaled, "Use the box [3,12]^2 x [2,12]^2");
  gen_snd_cmd->add_flag("--scaled", scaled, "Accepted for symmetry; SND defaults are already small");
  gen_snd_cmd->add_option("--cycle", cycle, "Vertices of the directed cycle topology")
      ->capture_default_str();
  gen_snd_cmd->add_option("--commodities", commodities)->capture_default_str();
  gen_snd_cmd->add_option("--max-demand", max_demand)->capture_default_str();

  // toric / groebner / graver
  std::string matrix_path;
  std::string cost_text;
  std::size_t max_elements = GraverOptions{}.max_elements;
  auto* toric_cmd = app.add_subcommand("toric", "Generating set of the toric ideal of A");
  auto* groebner_cmd = app.add_subcommand("groebner", "Reduced Groebner basis of I_A under >_c");
  auto* graver_cmd = app.add_subcommand("graver", "Graver basis of A");
  for (auto* cmd : {toric_cmd, groebner_cmd, graver_cmd}) {
    cmd->add_option("matrix", matrix_path, "Matrix JSON ([[...]] or {\"matrix\": ...}), - for stdin")
        ->required();
    cmd->add_option("--out", out, "Output path (default stdout)");
  }
  groebner_cmd->add_option("--cost", cost_text, "Cost vector, comma separated or JSON array")
      ->required();
  graver_cmd->add_option("--max-elements", max_elements, "Element cap")->capture_default_str();

  // opcost
  std::string instance_path, method_text = "kernel", decisions_src = "single-scenario", meta;
  bool q_only = false;
  auto* opcost_cmd = app.add_subcommand("opcost", "Opportunity cost matrix of an instance");
  opcost_cmd->add_option("instance", instance_path, "Instance JSON, - for stdin")->required();
  opcost_cmd->add_option("--method", method_text, "kernel | graver | oracle")
      ->check(CLI::IsMember({"kernel", "graver", "oracle"}))
      ->capture_default_str();
  opcost_cmd->add_option("--decisions", decisions_src, "Decision list JSON file, or single-scenario")
      ->capture_default_str();
  opcost_cmd->add_flag("--q-only", q_only, "Omit the first-stage term gamma.x");
  opcost_cmd->add_option("--out", out, "CSV output path (default stdout)");
  opcost_cmd->add_option("--meta", meta, "Metadata JSON output path");

  // bench
  std::string n_list = "10,50,100", cycle_list, methods_text = "kernel,graver";
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep, one JSON record per line");
  bench_cmd->add_option("--n-list", n_list, "Scenario counts")->capture_default_str();
  bench_cmd->add_option("--cycle-list", cycle_list,
                        "Network design cycle sizes (sweeps the variable count)");
  bench_cmd->add_option("--methods", methods_text)->capture_default_str();
  bench_cmd->add_option("--seed", seed)->capture_default_str();
  bench_cmd->add_flag("--scaled", scaled, "Scaled Hemmecke-Schultz box");
  bench_cmd->add_option("--out", out, "Output path (default stdout)");

  // verify
  std::string fixtures = TORICSIP_FIXTURE_DIR;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-method and invariant checks on fixtures");
  verify_cmd->add_option("--fixtures", fixtures, "Fixture directory")->capture_default_str();
  verify_cmd->add_option("--out", out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    OpcostOptions options;
    options.threads = threads;
    options.node_cap = detail::node_cap();
    options.graver_max_elements = max_elements;

    if (*gen_hs_cmd) {
      HsConfig config = scaled ? HsConfig::scaled(n, seed) : HsConfig{};
      config.scenarios = n;
      config.seed = seed;
      detail::write_text(out, detail::dump(io::to_json(gen_hs(config))));
    } else if (*gen_snd_cmd) {
      SndConfig config = SndConfig::cycle(cycle);
      config.scenarios = n;
      config.seed = seed;
      config.commodities = commodities;
      config.max_demand = max_demand;
      detail::write_text(out, detail::dump(io::to_json(gen_snd(config))));
    } else if (*toric_cmd || *groebner_cmd || *graver_cmd) {
      const IntMatrix a = io::matrix_from_json(detail::read_json(matrix_path));
      if (*toric_cmd) {
        detail::write_text(out,
                           detail::dump(io::basis_to_json(a, toric_generating_set(a).generators)));
      } else if (*groebner_cmd) {
        io::Json cj;
        if (!cost_text.empty() && cost_text.front() == '[') {
          cj = io::Json::parse(cost_text);
        } else {
          cj = io::Json::array();
          std::stringstream ss(cost_text);
          std::string item;
          while (std::getline(ss, item, ',')) cj.push_back(item);  // strings keep the sign
        }
        const IntVector c = io::vector_from_json(cj);
        const auto gb = test_set(a, c);
        detail::write_text(out, detail::dump(io::basis_to_json(a, gb.elements, &c)));
      } else {
        const auto g = graver_basis(a, GraverOptions{max_elements});
        detail::write_text(out, detail::dump(io::basis_to_json(a, g.elements)));
      }
    } else if (*opcost_cmd) {
      const SipInstance inst = io::instance_from_json(detail::read_json(instance_path));
      const Method method = detail::parse_method(method_text);
      options.q_only = q_only;
      const DecisionList decisions =
          decisions_src == "single-scenario"
              ? single_scenario_decisions(inst, method, options)
              : io::decisions_from_json(detail::read_json(decisions_src));
      const auto m = opcost(method, inst, decisions, options);
      detail::write_text(out, io::matrix_csv(m));
      if (!meta.empty()) detail::write_text(meta, io::matrix_to_json(m).dump(2) + "\n");
    } else if (*bench_cmd) {
      std::vector<Method> methods;
      std::stringstream ms(methods_text);
      for (std::string item; std::getline(ms, item, ',');) {
        if (!item.empty()) methods.push_back(detail::parse_method(item));
      }
      std::vector<std::pair<std::string, SipInstance>> runs;
      const auto ns = detail::parse_list(n_list);
      const auto cycles = detail::parse_list(cycle_list);
      if (cycles.empty()) {
        for (auto k : ns) {
          HsConfig config = scaled ? HsConfig::scaled(k, seed) : HsConfig{};
          config.scenarios = k;
          config.seed = seed;
          runs.emplace_back(scaled ? "hs-scaled" : "hs", gen_hs(config));
        }
      } else {
        for (auto cyc : cycles) {
          for (auto k : ns) {
            SndConfig config = SndConfig::cycle(cyc);
            config.scenarios = k;
            config.seed = seed;
            runs.emplace_back("snd-cycle" + std::to_string(cyc), gen_snd(config));
          }
        }
      }
      std::ostringstream lines;
      for (const auto& [problem, inst] : runs) {
        for (Method method : methods) {
          const auto start = std::chrono::steady_clock::now();
          const auto decisions = single_scenario_decisions(inst, method, options);
          const auto decided = std::chrono::steady_clock::now();
          const auto m = opcost(method, inst, decisions, options);
          const auto total = toricsip::detail::micros_since(start);
          io::Json rec;
          rec["method"] = method_name(method);
          rec["problem"] = problem;
          rec["scenarios"] = inst.scenarios.size();
          rec["variables"] = inst.recourse_dim();
          rec["first_stage_variables"] = inst.first_stage_dim();
          rec["timings_us"] = io::timings_to_json(m.timings);
          rec["decisions_us"] =
              std::chrono::duration_cast<std::chrono::microseconds>(decided - start).count();
          rec["total_us"] = total;
          rec["basis_sizes"] = {{"generators", m.counters.generators},
                                {"groebner_elements", m.counters.groebner_elements},
                                {"graver_elements", m.counters.graver_elements}};
          rec["checksum"] = detail::checksum(m);
          lines << rec.dump() << '\n';
          if (out.empty() || out == "-") {
            std::cout << rec.dump() << '\n' << std::flush;
          }
        }
      }
      if (!out.empty() && out != "-") detail::write_text(out, lines.str());
    } else if (*verify_cmd) {
      std::ostringstream report;
      const int code = detail::verify(fixtures, report, options);
      detail::write_text(out, report.str());
      return code;
    }
    return kOk;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const io::Json::exception& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace toricsip::cli

#endif  // TORICSIP_CLI_HPP
