#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mckp/model.hpp"
#include "mckp/oracle.hpp"
#include "mckp/solvers.hpp"

namespace mckp {

enum class Method { kOnline, kOffline, kLocal, kGreedy, kGlobal };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::kOnline:
      return "online";
    case Method::kOffline:
      return "offline";
    case Method::kLocal:
      return "local";
    case Method::kGreedy:
      return "greedy";
    case Method::kGlobal:
      return "global";
  }
  return "unknown";
}

inline Method parse_method(const std::string& name) {
  if (name == "online") return Method::kOnline;
  if (name == "offline") return Method::kOffline;
  if (name == "local") return Method::kLocal;
  if (name == "greedy") return Method::kGreedy;
  if (name == "global") return Method::kGlobal;
  throw ParamError("unknown method: " + name);
}

enum class OracleMode { kLp, kExhaustive, kNone };

inline std::string oracle_mode_name(OracleMode mode) {
  switch (mode) {
    case OracleMode::kLp:
      return "lp";
    case OracleMode::kExhaustive:
      return "exhaustive";
    case OracleMode::kNone:
      return "none";
  }
  return "unknown";
}

inline OracleMode parse_oracle_mode(const std::string& name) {
  if (name == "lp") return OracleMode::kLp;
  if (name == "exhaustive") return OracleMode::kExhaustive;
  if (name == "none") return OracleMode::kNone;
  throw ParamError("unknown oracle mode: " + name);
}

struct BenchDataset {
  std::string name;
  Instance instance;
};

struct BenchConfig {
  std::vector<BenchDataset> datasets;
  std::vector<Method> methods = {Method::kOnline, Method::kOffline,
                                 Method::kLocal, Method::kGreedy,
                                 Method::kGlobal};
  OracleMode oracle = OracleMode::kLp;
  double budget = 0.0;
  std::uint64_t seed = 0;
  int threshold_batch = 1;
  PoolWeightMode pool_weights = PoolWeightMode::kIncremental;
  std::uint64_t max_combos = 10'000'000;
  bool time_per_decision = false;
};

struct BenchRow {
  Method method = Method::kOnline;
  Assignment assignment;
  double total_value = 0.0;
  double total_weight = 0.0;
  bool feasible = false;
  std::optional<double> optimality_rate;
  double wall_clock_ms = 0.0;
  std::optional<double> median_decision_ns;
};

struct BenchDatasetReport {
  std::string name;
  std::string error;  // empty on success
  std::optional<OracleResult> oracle;
  std::vector<BenchRow> rows;
};

struct BenchReport {
  double budget = 0.0;
  std::uint64_t seed = 0;
  OracleMode oracle = OracleMode::kLp;
  std::string config_digest;
  std::vector<Method> methods;
  std::vector<BenchDatasetReport> datasets;

  bool has_errors() const {
    for (const BenchDatasetReport& d : datasets) {
      if (!d.error.empty()) return true;
    }
    return false;
  }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string config_digest(const BenchConfig& config) {
  std::ostringstream os;
  os << "budget=" << format_double(config.budget) << ";seed=" << config.seed
     << ";oracle=" << oracle_mode_name(config.oracle)
     << ";batch=" << config.threshold_batch << ";pool="
     << (config.pool_weights == PoolWeightMode::kIncremental ? "incremental"
                                                             : "raw")
     << ";max_combos=" << config.max_combos << ";methods=";
  for (const Method m : config.methods) os << method_name(m) << ',';
  os << ";datasets=";
  for (const BenchDataset& d : config.datasets) os << d.name << ',';
  std::ostringstream hex;
  hex << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(os.str());
  return hex.str();
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[mid];
  return 0.5 * (xs[mid - 1] + xs[mid]);
}

inline double stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double acc = 0.0;
  for (const double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

inline BenchRow run_method(const Instance& instance, Method method,
                           const BenchConfig& config) {
  BenchRow row;
  row.method = method;
  std::vector<double> latencies;
  SolverConfig solver_config;
  solver_config.threshold_batch = config.threshold_batch;
  solver_config.pool_weights = config.pool_weights;
  if (config.time_per_decision) solver_config.step_latency_ns = &latencies;

  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::kOnline:
      row.assignment = solve_online(instance, solver_config).assignment;
      break;
    case Method::kOffline:
      row.assignment = solve_offline_mckp(instance, solver_config).assignment;
      break;
    case Method::kLocal:
      row.assignment = solve_local(instance);
      break;
    case Method::kGreedy:
      row.assignment = solve_greedy(instance).assignment;
      break;
    case Method::kGlobal:
      row.assignment = solve_global(instance);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();
  row.wall_clock_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  if (config.time_per_decision && !latencies.empty()) {
    row.median_decision_ns = median(std::move(latencies));
  }

  const EvalResult eval = evaluate_assignment(instance, row.assignment);
  row.total_value = eval.total_value;
  row.total_weight = eval.total_weight;
  row.feasible = eval.feasible;
  return row;
}

}  // namespace detail

// Runs every configured method on every dataset at the configured budget.
// Dataset failures (unreadable input, infeasible oracle) are recorded on the
// dataset entry and do not abort the remaining datasets.
inline BenchReport run_bench(const BenchConfig& config) {
  BenchReport report;
  report.budget = config.budget;
  report.seed = config.seed;
  report.oracle = config.oracle;
  report.config_digest = detail::config_digest(config);
  report.methods = config.methods;
  report.datasets.reserve(config.datasets.size());

  for (const BenchDataset& dataset : config.datasets) {
    BenchDatasetReport entry;
    entry.name = dataset.name;
    try {
      const Instance instance = dataset.instance.with_capacity(config.budget);

      std::future<OracleResult> oracle_future;
      if (config.oracle != OracleMode::kNone) {
        oracle_future = std::async(std::launch::async, [&] {
          return config.oracle == OracleMode::kLp
                     ? lp_upper_bound(instance)
                     : exhaustive_optimum(instance, config.max_combos);
        });
      }
      std::vector<std::future<BenchRow>> row_futures;
      row_futures.reserve(config.methods.size());
      for (const Method method : config.methods) {
        row_futures.push_back(std::async(std::launch::async, [&, method] {
          return detail::run_method(instance, method, config);
        }));
      }

      if (oracle_future.valid()) entry.oracle = oracle_future.get();
      for (std::future<BenchRow>& f : row_futures) {
        entry.rows.push_back(f.get());
      }
      if (entry.oracle && entry.oracle->value > 0.0) {
        for (BenchRow& row : entry.rows) {
          row.optimality_rate = row.total_value / entry.oracle->value;
        }
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
      entry.rows.clear();
    }
    report.datasets.push_back(std::move(entry));
  }
  return report;
}

// JSON rendering. Timing fields (wall_clock_ms, median_decision_ns) are the
// only run-dependent values; everything else is reproducible per seed.
inline nlohmann::ordered_json report_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["budget"] = report.budget;
  j["seed"] = report.seed;
  j["oracle"] = oracle_mode_name(report.oracle);
  j["config_digest"] = report.config_digest;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const Method m : report.methods) methods.push_back(method_name(m));
  j["methods"] = std::move(methods);
  if (report.oracle == OracleMode::kLp) {
    j["rate_basis"] =
        "conservative: denominators are LP upper bounds, so rates may "
        "understate true optimality";
  } else if (report.oracle == OracleMode::kExhaustive) {
    j["rate_basis"] = "exact optimum denominators";
  } else {
    j["rate_basis"] = "no oracle: raw totals only";
  }

  nlohmann::ordered_json datasets = nlohmann::ordered_json::array();
  for (const BenchDatasetReport& d : report.datasets) {
    nlohmann::ordered_json jd;
    jd["name"] = d.name;
    if (!d.error.empty()) {
      jd["error"] = d.error;
      datasets.push_back(std::move(jd));
      continue;
    }
    if (d.oracle) {
      jd["oracle_bound_type"] = bound_type_name(d.oracle->bound_type);
      jd["oracle_value"] = d.oracle->value;
      jd["oracle_feasible"] = d.oracle->feasible;
      if (d.oracle->value <= 0.0) {
        jd["rate_flag"] =
            "oracle value not positive: raw totals reported, no rates";
      }
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BenchRow& row : d.rows) {
      nlohmann::ordered_json jr;
      jr["method"] = method_name(row.method);
      jr["total_value"] = row.total_value;
      jr["total_weight"] = row.total_weight;
      jr["feasible"] = row.feasible;
      if (row.optimality_rate) jr["optimality_rate"] = *row.optimality_rate;
      jr["wall_clock_ms"] = row.wall_clock_ms;
      if (row.median_decision_ns) {
        jr["median_decision_ns"] = *row.median_decision_ns;
      }
      rows.push_back(std::move(jr));
    }
    jd["rows"] = std::move(rows);
    datasets.push_back(std::move(jd));
  }
  j["datasets"] = std::move(datasets);
  return j;
}

inline std::string render_text_table(const BenchReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "dataset" << std::setw(9) << "method"
     << std::right << std::setw(16) << "total_value" << std::setw(16)
     << "total_weight" << std::setw(10) << "feasible" << std::setw(10)
     << "rate" << '\n';
  for (const BenchDatasetReport& d : report.datasets) {
    if (!d.error.empty()) {
      os << std::left << std::setw(16) << d.name << "error: " << d.error
         << '\n';
      continue;
    }
    for (const BenchRow& row : d.rows) {
      os << std::left << std::setw(16) << d.name << std::setw(9)
         << method_name(row.method) << std::right << std::fixed
         << std::setprecision(3) << std::setw(16) << row.total_value
         << std::setw(16) << row.total_weight << std::setw(10)
         << (row.feasible ? "yes" : "no");
      if (row.optimality_rate) {
        os << std::setw(10) << std::setprecision(4) << *row.optimality_rate;
      } else {
        os << std::setw(10) << "n/a";
      }
      os << '\n';
      os.unsetf(std::ios::fixed);
    }
  }
  return os.str();
}

struct DynamicsSummary {
  std::size_t steps = 0;
  double budget = 0.0;
  double max_overshoot = 0.0;
  double final_cum_weight = 0.0;
  double threshold_std_mid60 = 0.0;
  double threshold_std_first5 = 0.0;
};

// Step-by-step view of a solve: the capacity recovery behaviour and how the
// threshold settles after the initial pool warm-up.
inline DynamicsSummary summarize_dynamics(const SolveTrace& trace) {
  DynamicsSummary s;
  const std::size_t n = trace.records.size();
  s.steps = n;
  if (n == 0) return s;
  const TraceRecord& first = trace.records.front();
  s.budget = first.remaining_capacity + first.cum_weight;
  s.final_cum_weight = trace.records.back().cum_weight;
  for (const TraceRecord& r : trace.records) {
    s.max_overshoot = std::max(s.max_overshoot, r.cum_weight - s.budget);
  }

  std::vector<double> mid;
  std::vector<double> head;
  for (std::size_t i = 0; i < n; ++i) {
    if (!trace.records[i].threshold_angle) continue;
    if (i >= n / 5 && i < 4 * n / 5) mid.push_back(*trace.records[i].threshold_angle);
    if (i < n / 20) head.push_back(*trace.records[i].threshold_angle);
  }
  s.threshold_std_mid60 = detail::stddev(mid);
  s.threshold_std_first5 = detail::stddev(head);
  return s;
}

inline nlohmann::ordered_json dynamics_to_json(const DynamicsSummary& s) {
  nlohmann::ordered_json j;
  j["steps"] = s.steps;
  j["budget"] = s.budget;
  j["max_overshoot"] = s.max_overshoot;
  j["final_cum_weight"] = s.final_cum_weight;
  j["threshold_std_mid60"] = s.threshold_std_mid60;
  j["threshold_std_first5"] = s.threshold_std_first5;
  return j;
}

inline void export_dynamics(const SolveTrace& trace, std::ostream& csv_out,
                            std::ostream& summary_out) {
  write_trace_csv(trace, csv_out);
  summary_out << dynamics_to_json(summarize_dynamics(trace)).dump(2) << '\n';
}

}  // namespace mckp
