#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hdcarp/bench.h"
#include "hdcarp/oracle.h"
#include "hdcarp/separation.h"
#include "json.hpp"

using namespace hdcarp;

namespace {

constexpr int kExitFault = 1;
constexpr int kExitInvalid = 2;

// Raised for bad input (infeasible solution, invalid instance).
struct Invalid {
  std::vector<std::string> reasons;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Fault("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Fault("cannot write " + path.string());
  }
  out << text;
}

Instance load_checked(const std::string& path) {
  Instance inst = load_instance(path);
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw Invalid{std::move(violations)};
  }
  return inst;
}

void require_feasible(const Instance& inst, const Solution& sol, Variant variant) {
  std::vector<std::string> violations;
  try {
    violations = check_feasible(inst, sol, variant);
  } catch (const Fault& e) {
    violations.push_back(e.what());
  }
  if (!violations.empty()) {
    throw Invalid{std::move(violations)};
  }
}

void print_objective(const Objective& obj, const char* key = "objective") {
  nlohmann::ordered_json j;
  j[key] = obj.t;
  std::cout << j.dump() << "\n";
}

struct SolveArgs {
  std::string algo = "ils";
  std::string variant = "p";
  std::string in;
  std::string out;
  std::uint64_t seed = 1;
  std::string insertion = "append";
  AlgorithmParams params;
};

void add_params(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--seed", a.seed, "RNG seed");
  cmd->add_option("--threads", a.params.threads, "worker threads for local search")->check(CLI::PositiveNumber);
  cmd->add_option("--insertion", a.insertion, "greedy insertion rule")->check(CLI::IsMember({"append", "best"}));
  cmd->add_option("--ils-iters", a.params.ils.k_max, "ILS iterations")->check(CLI::NonNegativeNumber);
  cmd->add_option("--ea-iters", a.params.ea.k_max, "EA generations")->check(CLI::NonNegativeNumber);
  cmd->add_option("--ea-lambda", a.params.ea.lambda, "EA population size")->check(CLI::Range(1, 1000000));
  cmd->add_option("--aco-ants", a.params.aco.n_ant, "ants per ACO iteration")->check(CLI::PositiveNumber);
  cmd->add_option("--aco-iters", a.params.aco.k_max, "ACO iterations")->check(CLI::NonNegativeNumber);
  cmd->add_option("--aco-rho", a.params.aco.rho, "pheromone evaporation rate")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--aco-beta", a.params.aco.beta, "distance exponent")->check(CLI::NonNegativeNumber);
}

const auto kVariants = CLI::IsMember({"p", "u", "P", "U"});

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical directed capacitated arc routing solvers"};
  app.require_subcommand(1);

  GenSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic instance");
  gen_cmd->add_option("--arcs", gen.num_arcs, "number of arcs")->required()->check(CLI::Range(4, 1000000));
  gen_cmd->add_option("--vehicles", gen.num_vehicles, "fleet size")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--classes", gen.num_classes, "priority classes")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen_out, "instance file")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run a heuristic");
  solve_cmd->add_option("--algo", solve.algo, "algorithm")
      ->check(CLI::IsMember({"greedy", "ls", "ils", "ea", "aco"}));
  solve_cmd->add_option("--variant", solve.variant, "p or u")->check(kVariants);
  solve_cmd->add_option("--in", solve.in, "instance file")->required();
  solve_cmd->add_option("--out", solve.out, "solution file")->required();
  add_params(solve_cmd, solve);

  std::string eval_in, eval_sol, eval_variant = "p";
  auto* eval_cmd = app.add_subcommand("eval", "check and evaluate a solution");
  eval_cmd->add_option("--in", eval_in, "instance file")->required();
  eval_cmd->add_option("--sol", eval_sol, "solution file")->required();
  eval_cmd->add_option("--variant", eval_variant, "p or u")->check(kVariants);

  std::string oracle_in, oracle_out, oracle_variant = "p";
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search on tiny instances");
  oracle_cmd->add_option("--in", oracle_in, "instance file")->required();
  oracle_cmd->add_option("--variant", oracle_variant, "p or u")->check(kVariants);
  oracle_cmd->add_option("--out", oracle_out, "optional solution file");

  std::string milp_in, milp_variant = "p", milp_mode = "deferred", milp_dir, milp_stage_values, milp_point,
                       milp_cuts_out, milp_solver;
  auto* milp_cmd = app.add_subcommand("milp", "emit lexicographic MILP stages in LP format");
  milp_cmd->add_option("--in", milp_in, "instance file")->required();
  milp_cmd->add_option("--variant", milp_variant, "p or u")->check(kVariants);
  milp_cmd->add_option("--mode", milp_mode, "connectivity cuts")->check(CLI::IsMember({"enumerate", "deferred"}));
  milp_cmd->add_option("--out-dir", milp_dir, "output directory")->required();
  milp_cmd->add_option("--stage-values", milp_stage_values, "comma-separated optimal T_1,T_2,... to fix");
  milp_cmd->add_option("--point", milp_point, "solution values to separate (name value lines)");
  milp_cmd->add_option("--cuts-out", milp_cuts_out, "JSON-lines file for separated cuts");
  milp_cmd->add_option("--solver-cmd", milp_solver, "external solver command using {lp} and {sol}");

  SolveArgs refine;
  refine.params.threads = 1;
  std::string refine_sol;
  auto* refine_cmd = app.add_subcommand("refine", "local search on a given solution");
  refine_cmd->add_option("--in", refine.in, "instance file")->required();
  refine_cmd->add_option("--sol", refine_sol, "solution file")->required();
  refine_cmd->add_option("--variant", refine.variant, "p or u")->check(kVariants);
  refine_cmd->add_option("--out", refine.out, "refined solution file")->required();
  refine_cmd->add_option("--threads", refine.params.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string bench_spec, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark batch");
  bench_cmd->add_option("--spec", bench_spec, "bench JSON")->required();
  bench_cmd->add_option("--out", bench_out, "results CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*gen_cmd) {
      save_instance(generate_instance(gen), gen_out);
    } else if (*solve_cmd) {
      const Instance inst = load_checked(solve.in);
      const auto mat = compute_deadhead_matrix(inst);
      const Variant variant = parse_variant(solve.variant);
      solve.params.construct.mode = solve.insertion == "best" ? InsertionMode::best_position : InsertionMode::append;
      const Solution sol = run_algorithm(solve.algo, inst, mat, variant, solve.seed, solve.params);
      save_solution(sol, variant, solve.out);
      print_objective(evaluate(inst, mat, sol, variant));
    } else if (*eval_cmd) {
      const Instance inst = load_checked(eval_in);
      const auto mat = compute_deadhead_matrix(inst);
      const Variant variant = parse_variant(eval_variant);
      const Solution sol = load_solution(eval_sol).first;
      require_feasible(inst, sol, variant);
      print_objective(evaluate(inst, mat, sol, variant));
    } else if (*oracle_cmd) {
      const Instance inst = load_checked(oracle_in);
      const auto mat = compute_deadhead_matrix(inst);
      const Variant variant = parse_variant(oracle_variant);
      const auto result = brute_force_oracle(inst, mat, variant);
      if (!oracle_out.empty()) {
        save_solution(result.solution, variant, oracle_out);
      }
      print_objective(result.objective);
    } else if (*milp_cmd) {
      const Instance inst = load_checked(milp_in);
      const auto mat = compute_deadhead_matrix(inst);
      const Variant variant = parse_variant(milp_variant);
      const auto tg = transform_graph(inst, variant);
      const auto mode = milp_mode == "enumerate" ? SubtourMode::enumerate : SubtourMode::deferred;
      const MilpModel model = emit_milp(inst, mat, tg, mode);
      const std::string stem = std::filesystem::path(milp_in).stem().string();
      std::filesystem::create_directories(milp_dir);

      std::vector<double> fixed;
      std::stringstream values(milp_stage_values);
      for (std::string item; std::getline(values, item, ',');) {
        fixed.push_back(std::stod(item));
      }
      for (const auto& path : write_stage_files(model, milp_dir, stem, fixed)) {
        std::cout << path.string() << "\n";
      }
      if (!milp_point.empty()) {
        const auto cuts = separate_connectivity(inst, tg, parse_solution_values(read_file(milp_point)));
        std::string lines;
        for (const auto& cut : cuts) {
          lines += cut_to_json_line(cut) + "\n";
        }
        if (milp_cuts_out.empty()) {
          std::cout << lines;
        } else {
          write_file(milp_cuts_out, lines);
        }
      }
      if (!milp_solver.empty()) {
        const auto assignment = solve_external(model, milp_solver, milp_dir, stem);
        const Solution sol = decode_assignment(inst, tg, assignment);
        save_solution(sol, variant, std::filesystem::path(milp_dir) / (stem + ".milp.json"));
        print_objective(evaluate(inst, mat, sol, variant));
      }
    } else if (*refine_cmd) {
      const Instance inst = load_checked(refine.in);
      const auto mat = compute_deadhead_matrix(inst);
      const Variant variant = parse_variant(refine.variant);
      Solution sol = load_solution(refine_sol).first;
      require_feasible(inst, sol, variant);
      sol = local_search(inst, mat, std::move(sol), variant, LocalSearchOptions{refine.params.threads});
      save_solution(sol, variant, refine.out);
      print_objective(evaluate(inst, mat, sol, variant));
    } else if (*bench_cmd) {
      const auto spec = bench_spec_from_json(read_file(bench_spec),
                                             std::filesystem::path(bench_spec).parent_path());
      const auto rows = run_bench(spec.instances, spec.algorithms, spec.variant, spec.options);
      write_file(bench_out, bench_csv(rows));
    }
  } catch (const Invalid& e) {
    for (const auto& reason : e.reasons) {
      std::cerr << "invalid: " << reason << "\n";
    }
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFault;
  }
  return 0;
}
