// Acceptance suite: one PASS/FAIL line per criterion.
// usage: hdcarp_acceptance <path to hdcarp cli>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "hdcarp/bench.h"
#include "hdcarp/deadhead.h"
#include "hdcarp/local_search.h"
#include "hdcarp/milp.h"
#include "hdcarp/oracle.h"
#include "hdcarp/separation.h"
#include "support.h"

using namespace hdcarp;
using namespace testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  failures += ok ? 0 : 1;
}

bool same(const Objective& a, const Objective& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) {
      return false;
    }
  }
  return a.size() == b.size();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << v;
  return os.str();
}

const std::vector<std::string> kAlgorithms{"greedy", "ls", "ils", "ea", "aco"};

void oracle_optimality() {
  const auto start = Clock::now();
  std::map<std::string, int> matches;
  int bound_violations = 0;
  std::string first_violation;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    const auto seed = static_cast<std::uint64_t>(1000 + i);
    const Instance inst = small_instance(8, 2, 2, seed);  // |A_r| = 6
    const auto mat = compute_deadhead_matrix(inst);
    for (const Variant v : {Variant::P, Variant::U}) {
      const auto best = brute_force_oracle(inst, mat, v).objective;
      for (const auto& algo : kAlgorithms) {
        const auto sol = run_algorithm(algo, inst, mat, v, seed, AlgorithmParams{});
        const auto got = evaluate(inst, mat, sol, v);
        if (!lex_leq(best.t, got.t, 1e-6)) {
          ++bound_violations;
          if (first_violation.empty()) {
            first_violation = " (first: " + algo + " seed " + std::to_string(seed) + ")";
          }
        }
        if (v == Variant::P && same(best, got, 1e-6)) {
          ++matches[algo];
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  bool ok = bound_violations == 0 && elapsed < 300.0;
  std::string detail = "bound violations " + std::to_string(bound_violations) + first_violation +
                       "; P matches (ils/ea/aco need >= " + std::to_string((n * 6 + 9) / 10) + ")";
  for (const auto& algo : kAlgorithms) {
    detail += " " + algo + "=" + std::to_string(matches[algo]) + "/" + std::to_string(n);
  }
  for (const char* algo : {"ils", "ea", "aco"}) {
    ok = ok && matches[algo] * 10 >= n * 6;
  }
  report("oracle-optimality", ok, detail + "; " + fmt(elapsed) + " s");
}

void variant_dominance() {
  int oracle_exceptions = 0;
  int ls_exceptions = 0;
  int cases = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = small_instance(6 + 2 * static_cast<int>(seed % 2), 2, 1 + static_cast<int>(seed % 3),
                                         2000 + seed);
    const auto mat = compute_deadhead_matrix(inst);
    ++cases;
    const auto op = brute_force_oracle(inst, mat, Variant::P).objective;
    const auto ou = brute_force_oracle(inst, mat, Variant::U).objective;
    oracle_exceptions += lex_leq(ou.t, op.t) ? 0 : 1;
    Rng rng(seed);
    const auto p_opt = local_search(inst, mat, construct(inst, mat, Variant::P, rng), Variant::P);
    const auto u_opt = local_search(inst, mat, p_opt, Variant::U);
    ls_exceptions += lex_leq(evaluate(inst, mat, u_opt, Variant::U).t, evaluate(inst, mat, p_opt, Variant::P).t)
                         ? 0
                         : 1;
  }
  report("variant-dominance", oracle_exceptions == 0 && ls_exceptions == 0,
         std::to_string(cases) + " instances; oracle exceptions " + std::to_string(oracle_exceptions) +
             ", local-search exceptions " + std::to_string(ls_exceptions));
}

void local_search_soundness() {
  const auto start = Clock::now();
  int bad = 0;
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int arcs = 8 + static_cast<int>(seed % 19);  // |A_r| = 6..19
    const Instance inst = small_instance(arcs, 2 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 3),
                                         3000 + seed);
    const auto mat = compute_deadhead_matrix(inst);
    const Variant v = seed % 2 == 0 ? Variant::P : Variant::U;
    const auto input = random_solution(inst, v, gen);
    if (!input) {
      ++bad;
      continue;
    }
    const auto one = local_search(inst, mat, *input, v, {1});
    const auto eight = local_search(inst, mat, *input, v, {8});
    const bool ok = check_feasible(inst, one, v).empty() &&
                    lex_leq(evaluate(inst, mat, one, v).t, evaluate(inst, mat, *input, v).t) && one == eight;
    bad += ok ? 0 : 1;
  }
  const double elapsed = seconds_since(start);
  report("local-search-soundness", bad == 0 && elapsed < 120.0,
         "200 instances, " + std::to_string(bad) + " failures; " + fmt(elapsed) + " s");
}

bool agrees(const SwapResult& got, const Expected& want) {
  if (got.positions.has_value() != want.positions.has_value()) {
    return false;
  }
  if (!want.positions) {
    return true;
  }
  if (*got.positions != *want.positions) {
    return false;
  }
  for (std::size_t k = 0; k < want.after.size(); ++k) {
    if (std::abs(got.after[k] - want.after[k]) > 1e-9) {
      return false;
    }
  }
  return true;
}

void swap_oracle() {
  std::mt19937_64 gen(9);
  int intra = 0;
  int inter = 0;
  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int classes = 1 + static_cast<int>(seed % 3);
    const Instance inst = small_instance(8, 2, classes, 4000 + seed);  // 6 arcs over 2 routes
    const auto mat = compute_deadhead_matrix(inst);
    const auto sp = dijkstra_all(inst);
    const Variant v = seed % 2 == 0 ? Variant::P : Variant::U;
    const auto sol = random_solution(inst, v, gen);
    if (!sol) {
      ++mismatches;
      continue;
    }
    const SearchState state(inst, mat, *sol);
    for (int cls = 1; cls <= classes; ++cls) {
      for (std::size_t r = 0; r < 2; ++r) {
        const auto view = get_subtour(inst, sol->routes[r], cls, v);
        mismatches += agrees(best_swap_intra(state, r, view), scan_intra(inst, sp, *sol, r, view)) ? 0 : 1;
        ++intra;
      }
      const auto va = get_subtour(inst, sol->routes[0], cls, v);
      const auto vb = get_subtour(inst, sol->routes[1], cls, v);
      mismatches += agrees(best_swap_inter(state, 0, 1, va, vb), scan_inter(inst, sp, *sol, 0, 1, va, vb)) ? 0 : 1;
      ++inter;
    }
  }
  report("swap-oracle-equivalence", mismatches == 0,
         std::to_string(intra) + " intra and " + std::to_string(inter) + " inter neighborhoods, " +
             std::to_string(mismatches) + " mismatches");
}

// Closed-form index counts: x is M|A_r| (P) or M p |A_r| (U), y is M p |E|
// with |E| = |A| + 2 |anchors|, t is M p, r is M p (P) or M p p (U), T is p.
bool counts_match(const Instance& inst, const MilpModel& model, Variant v) {
  const std::size_t m = static_cast<std::size_t>(inst.num_vehicles);
  const std::size_t p = static_cast<std::size_t>(inst.num_classes);
  const std::size_t ar = static_cast<std::size_t>(inst.num_required());
  std::set<int> anchors{inst.depot};
  for (int a : inst.required_arcs()) {
    anchors.insert(inst.arcs[a].tail);
  }
  const std::size_t edges = static_cast<std::size_t>(inst.num_arcs()) + 2 * anchors.size();
  const bool p_model = v == Variant::P;
  const std::size_t x = p_model ? m * ar : m * p * ar;
  const std::size_t r = p_model ? m * p : m * p * p;
  return model.count_prefix("x_") == x && model.count_prefix("y_") == m * p * edges &&
         model.count_prefix("t_") == m * p && model.count_prefix("r_") == r && model.count_prefix("T_") == p &&
         model.variables.size() == x + m * p * edges + m * p + r + p;
}

void milp_consistency() {
  int violations = 0;
  int cuts = 0;
  int count_errors = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = small_instance(8 + 2 * static_cast<int>(seed % 2), 2, 1 + static_cast<int>(seed % 3),
                                         5000 + seed);
    const auto mat = compute_deadhead_matrix(inst);
    const auto oracle_p = brute_force_oracle(inst, mat, Variant::P).solution;
    const auto oracle_u = brute_force_oracle(inst, mat, Variant::U).solution;
    for (const Variant v : {Variant::P, Variant::U}) {
      const auto tg = transform_graph(inst, v);
      const auto model = emit_milp(inst, mat, tg, SubtourMode::enumerate);
      count_errors += counts_match(inst, model, v) ? 0 : 1;
      std::vector<Solution> sols{oracle_p};
      if (v == Variant::U) {
        sols.push_back(oracle_u);
      }
      for (const auto& sol : sols) {
        const auto values = encode_solution(inst, mat, tg, sol);
        const auto bad = check_model(model, values);
        violations += static_cast<int>(bad.size());
        if (!bad.empty() && first.empty()) {
          first = " (first: " + bad.front() + ", seed " + std::to_string(5000 + seed) + ")";
        }
        cuts += static_cast<int>(separate_connectivity(inst, tg, values).size());
      }
    }
  }
  report("milp-consistency", violations == 0 && cuts == 0 && count_errors == 0,
         "20 instances; violations " + std::to_string(violations) + first + ", cuts " + std::to_string(cuts) +
             ", count mismatches " + std::to_string(count_errors));
}

void generator_fidelity() {
  int arcs_checked = 0;
  int bad_arcs = 0;
  int bad_scale = 0;
  int bad_counts = 0;
  for (std::uint64_t seed = 0; arcs_checked < 1000; ++seed) {
    const Instance inst = small_instance(40, 2, 3, 6000 + seed);
    double longest = 0.0;
    for (const auto& a : inst.arcs) {
      longest = std::max(longest, a.d);
      if (a.required && arcs_checked < 1000) {
        ++arcs_checked;
        bad_arcs += (a.q == 0.5 * a.d + 0.5 && a.s == 2.0 * a.d) ? 0 : 1;
      }
    }
    bad_scale += longest == 1.0 ? 0 : 1;
  }
  for (int arcs : {40, 80, 120}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Instance inst = small_instance(arcs, 3, 3, 7000 + seed);
      const int n = inst.num_required();
      const bool ok = arcs < 80 ? n == 3 * arcs / 4 : (n >= 60 && n <= 70);
      bad_counts += ok && inst.num_arcs() == arcs ? 0 : 1;
    }
  }
  report("generator-fidelity", bad_arcs == 0 && bad_scale == 0 && bad_counts == 0,
         std::to_string(arcs_checked) + " required arcs, " + std::to_string(bad_arcs) + " off the q/s rules, " +
             std::to_string(bad_scale) + " instances with max d != 1, " + std::to_string(bad_counts) +
             " |A_r| rule violations over |A| in {40, 80, 120}");
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void cli_determinism(const std::string& cli) {
  const auto dir = std::filesystem::temp_directory_path() / ("hdcarp_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto inst = (dir / "inst.json").string();
  int differences = 0;
  int errors = 0;
  int runs = 0;
  if (std::system((cli + " gen --arcs 16 --vehicles 2 --classes 3 --seed 4 --out " + inst).c_str()) != 0) {
    ++errors;
  }
  for (const auto& algo : kAlgorithms) {
    for (const char* variant : {"p", "u"}) {
      std::string reference;
      for (int threads : {1, 2, 4}) {
        for (int run = 0; run < 3; ++run) {
          const auto out = dir / "sol.json";
          const auto log = dir / "stdout.txt";
          std::filesystem::remove(out);
          const std::string cmd = cli + " solve --algo " + algo + " --variant " + variant + " --in " + inst +
                                  " --out " + out.string() + " --seed 11 --threads " + std::to_string(threads) + " > " + log.string();
          ++runs;
          if (std::system(cmd.c_str()) != 0) {
            ++errors;
            continue;
          }
          const std::string bytes = slurp(out) + "\n--\n" + slurp(log);
          if (reference.empty()) {
            reference = bytes;
          } else if (bytes != reference) {
            ++differences;
          }
        }
      }
    }
  }
  std::filesystem::remove_all(dir);
  report("cli-determinism", differences == 0 && errors == 0,
         std::to_string(runs) + " solve runs over 3 repeats and 1/2/4 threads; " + std::to_string(differences) +
             " byte differences, " + std::to_string(errors) + " command errors");
}

template <typename F>
void guarded(const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <hdcarp cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  guarded("oracle-optimality", oracle_optimality);
  guarded("variant-dominance", variant_dominance);
  guarded("local-search-soundness", local_search_soundness);
  guarded("swap-oracle-equivalence", swap_oracle);
  guarded("milp-consistency", milp_consistency);
  guarded("generator-fidelity", generator_fidelity);
  guarded("cli-determinism", [&] { cli_determinism(cli); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
