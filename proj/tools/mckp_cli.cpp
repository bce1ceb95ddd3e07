#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mckp/bench.hpp"
#include "mckp/csv_io.hpp"
#include "mckp/model.hpp"
#include "mckp/oracle.hpp"
#include "mckp/solvers.hpp"
#include "mckp/synthgen.hpp"

namespace {

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string field = text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw mckp::ParamError("bad discount level: '" + field + "'");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size()) {
      throw mckp::ParamError("bad discount level: '" + field + "'");
    }
    levels.push_back(v);
    pos = comma + 1;
  }
  return levels;
}

mckp::SimParams load_params_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mckp::ParamError("cannot open params file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw mckp::ParamError("bad params JSON in " + path + ": " + e.what());
  }
  mckp::SimParams p;
  for (const auto& [key, value] : j.items()) {
    if (key == "conv_scale") {
      p.conv_scale = value.get<double>();
    } else if (key == "conv_var_scale") {
      p.conv_var_scale = value.get<double>();
    } else if (key == "price") {
      p.price = value.get<double>();
    } else if (key == "commission") {
      p.commission = value.get<double>();
    } else if (key == "revenue_var") {
      p.revenue_var = value.get<double>();
    } else if (key == "discount_levels") {
      p.discount_levels = value.get<std::vector<double>>();
    } else if (key == "seed") {
      p.seed = value.get<std::uint64_t>();
    } else {
      throw mckp::ParamError("unknown params field: " + key);
    }
  }
  return p;
}

void write_text_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mckp::ParamError("cannot open output file: " + path);
  out << content;
}

struct SharedFlags {
  double budget = 0.0;
  std::uint64_t seed = 0;
  int threshold_batch = 1;
  std::string pool_weights = "incremental";
};

mckp::PoolWeightMode parse_pool_mode(const std::string& name) {
  if (name == "incremental") return mckp::PoolWeightMode::kIncremental;
  if (name == "raw") return mckp::PoolWeightMode::kRaw;
  throw mckp::ParamError("unknown pool-weights mode: " + name);
}

int run_gen(std::int64_t customers, const std::string& levels_str,
            bool seed_given, std::uint64_t seed, const std::string& params_path,
            const std::string& out_path) {
  mckp::SimParams params;
  std::string effective_params = params_path;
  if (effective_params.empty()) {
    if (const char* env = std::getenv("MCKP_CONFIG")) effective_params = env;
  }
  if (!effective_params.empty()) params = load_params_json(effective_params);
  if (!levels_str.empty()) params.discount_levels = parse_levels(levels_str);
  if (seed_given) params.seed = seed;

  const mckp::Instance instance = mckp::generate(params, customers);
  write_text_file(out_path, mckp::instance_to_csv(instance));
  return 0;
}

int run_solve(const std::string& input, const SharedFlags& shared,
              const std::string& method_name, const std::string& trace_path,
              const std::string& out_path) {
  const mckp::Method method = mckp::parse_method(method_name);
  const mckp::Instance instance =
      mckp::load_instance_csv_file(input, shared.budget);

  mckp::SolverConfig config;
  config.threshold_batch = shared.threshold_batch;
  config.pool_weights = parse_pool_mode(shared.pool_weights);

  mckp::Assignment assignment;
  std::optional<mckp::SolveTrace> trace;
  switch (method) {
    case mckp::Method::kOnline: {
      mckp::SolveResult r = mckp::solve_online(instance, config);
      assignment = std::move(r.assignment);
      trace = std::move(r.trace);
      break;
    }
    case mckp::Method::kOffline: {
      mckp::SolveResult r = mckp::solve_offline_mckp(instance, config);
      assignment = std::move(r.assignment);
      trace = std::move(r.trace);
      break;
    }
    case mckp::Method::kGreedy:
      assignment = mckp::solve_greedy(instance).assignment;
      break;
    case mckp::Method::kLocal:
      assignment = mckp::solve_local(instance);
      break;
    case mckp::Method::kGlobal:
      assignment = mckp::solve_global(instance);
      break;
  }

  if (!trace_path.empty()) {
    if (!trace) {
      throw mckp::ParamError("--trace requires method online or offline");
    }
    std::ofstream csv_out(trace_path, std::ios::binary);
    if (!csv_out) {
      throw mckp::ParamError("cannot open trace file: " + trace_path);
    }
    std::ofstream summary_out(trace_path + ".summary.json", std::ios::binary);
    mckp::export_dynamics(*trace, csv_out, summary_out);
  }
  if (!out_path.empty()) {
    std::ostringstream os;
    mckp::write_assignment_csv(instance, assignment, os);
    write_text_file(out_path, os.str());
  }

  const mckp::EvalResult eval = mckp::evaluate_assignment(instance, assignment);
  nlohmann::ordered_json j;
  j["method"] = method_name;
  j["budget"] = shared.budget;
  j["total_value"] = eval.total_value;
  j["total_weight"] = eval.total_weight;
  j["feasible"] = eval.feasible;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_oracle(const std::string& input, double budget, const std::string& mode,
               std::uint64_t max_combos, const std::string& out_path) {
  const mckp::Instance instance = mckp::load_instance_csv_file(input, budget);
  mckp::OracleResult result;
  if (mode == "exhaustive") {
    result = mckp::exhaustive_optimum(instance, max_combos);
  } else if (mode == "lp") {
    result = mckp::lp_upper_bound(instance);
  } else {
    throw mckp::ParamError("unknown oracle mode: " + mode);
  }
  nlohmann::ordered_json j;
  j["bound_type"] = mckp::bound_type_name(result.bound_type);
  j["value"] = result.value;
  j["feasible"] = result.feasible;
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
  return 0;
}

int run_bench_cmd(const std::vector<std::string>& inputs,
                  const SharedFlags& shared,
                  const std::vector<std::string>& method_names,
                  const std::string& oracle_name, std::uint64_t max_combos,
                  bool time_per_decision, const std::string& out_path) {
  mckp::BenchConfig config;
  config.budget = shared.budget;
  config.seed = shared.seed;
  config.threshold_batch = shared.threshold_batch;
  config.pool_weights = parse_pool_mode(shared.pool_weights);
  config.oracle = mckp::parse_oracle_mode(oracle_name);
  config.max_combos = max_combos;
  config.time_per_decision = time_per_decision;
  if (!method_names.empty()) {
    config.methods.clear();
    for (const std::string& name : method_names) {
      config.methods.push_back(mckp::parse_method(name));
    }
  }
  for (const std::string& path : inputs) {
    config.datasets.push_back(
        {std::filesystem::path(path).stem().string(),
         mckp::load_instance_csv_file(path, shared.budget)});
  }

  const mckp::BenchReport report = mckp::run_bench(config);
  const std::string json_text = mckp::report_to_json(report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << json_text;
  } else {
    write_text_file(out_path, json_text);
  }
  std::cerr << mckp::render_text_table(report);
  for (const mckp::BenchDatasetReport& d : report.datasets) {
    if (!d.error.empty()) {
      std::cerr << "dataset " << d.name << " failed: " << d.error << '\n';
    }
  }
  return report.has_errors() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver suite for budget-constrained promotion assignment"};
  app.require_subcommand(1);

  SharedFlags shared;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance CSV");
  std::int64_t gen_customers = 0;
  std::string gen_levels;
  std::uint64_t gen_seed = 0;
  std::string gen_params;
  std::string gen_out = "-";
  gen->add_option("--customers", gen_customers, "Number of customers")
      ->required();
  gen->add_option("--levels", gen_levels,
                  "Comma-separated discount levels, first must be 0");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--params", gen_params,
                  "SimParams JSON file (default: $MCKP_CONFIG if set)");
  gen->add_option("--out", gen_out, "Output CSV path, '-' for stdout");

  auto* solve = app.add_subcommand("solve", "Solve one instance CSV");
  std::string solve_input;
  std::string solve_method = "online";
  std::string solve_trace;
  std::string solve_out;
  solve->add_option("--input", solve_input, "Instance CSV")->required();
  solve->add_option("--budget", shared.budget, "Capacity (default 0)");
  solve->add_option("--seed", shared.seed, "Unused; accepted for symmetry");
  solve->add_option("--method", solve_method,
                    "online|offline|local|greedy|global");
  solve->add_option("--threshold-batch", shared.threshold_batch,
                    "Rebuild the threshold every N customers");
  solve->add_option("--pool-weights", shared.pool_weights, "incremental|raw");
  solve->add_option("--trace", solve_trace,
                    "Write step trace CSV here plus <path>.summary.json");
  solve->add_option("--out", solve_out, "Write assignment CSV here");

  auto* oracle = app.add_subcommand("oracle", "Bound or solve exactly");
  std::string oracle_input;
  std::string oracle_mode = "lp";
  std::uint64_t oracle_combos = 10'000'000;
  std::string oracle_out;
  oracle->add_option("--input", oracle_input, "Instance CSV")->required();
  oracle->add_option("--budget", shared.budget, "Capacity (default 0)");
  oracle->add_option("--mode", oracle_mode, "exhaustive|lp");
  oracle->add_option("--max-combos", oracle_combos,
                     "Assignment count cap for exhaustive mode");
  oracle->add_option("--out", oracle_out, "Output JSON path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Compare methods across datasets");
  std::vector<std::string> bench_inputs;
  std::vector<std::string> bench_methods;
  std::string bench_oracle = "lp";
  std::uint64_t bench_combos = 10'000'000;
  bool bench_tpd = false;
  std::string bench_out;
  bench->add_option("--input", bench_inputs, "Instance CSVs")->required();
  bench->add_option("--budget", shared.budget, "Capacity (default 0)");
  bench->add_option("--seed", shared.seed, "Recorded in the report");
  bench->add_option("--method", bench_methods,
                    "Methods to run (repeatable; default all)");
  bench->add_option("--oracle", bench_oracle, "lp|exhaustive|none");
  bench->add_option("--threshold-batch", shared.threshold_batch,
                    "Rebuild the threshold every N customers");
  bench->add_option("--pool-weights", shared.pool_weights, "incremental|raw");
  bench->add_option("--max-combos", bench_combos,
                    "Assignment count cap for the exhaustive oracle");
  bench->add_flag("--time-per-decision", bench_tpd,
                  "Report median per-decision latency for online/offline");
  bench->add_option("--out", bench_out, "Report JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return run_gen(gen_customers, gen_levels, gen_seed_opt->count() > 0,
                     gen_seed, gen_params, gen_out);
    }
    if (solve->parsed()) {
      return run_solve(solve_input, shared, solve_method, solve_trace,
                       solve_out);
    }
    if (oracle->parsed()) {
      return run_oracle(oracle_input, shared.budget, oracle_mode,
                        oracle_combos, oracle_out);
    }
    if (bench->parsed()) {
      return run_bench_cmd(bench_inputs, shared, bench_methods, bench_oracle,
                           bench_combos, bench_tpd, bench_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
