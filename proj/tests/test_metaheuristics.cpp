#include <map>

#include "doctest.h"
#include "hdcarp/constructive.h"
#include "hdcarp/deadhead.h"
#include "hdcarp/metaheuristics.h"
#include "support.h"

using namespace hdcarp;
using namespace testing;

namespace {

Instance single_arc() {
  Instance inst = ring(3);
  inst.capacity = 5.0;
  require(inst, 1, 1.0, 2.0, 1);
  return inst;
}

Objective obj(const Instance& inst, const DeadheadMatrix& mat, const Solution& sol) {
  return evaluate_unchecked(inst, mat, sol);
}

}  // namespace

TEST_CASE("perturb: nothing to swap leaves the solution unchanged") {
  Instance inst = ring(4);
  inst.capacity = 10.0;
  inst.num_vehicles = 2;
  require(inst, 0, 1.0, 1.0, 1);
  require(inst, 1, 1.0, 1.0, 2);
  require(inst, 2, 1.0, 1.0, 1);
  const Solution sol{{{0, 1}, {2}}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    CHECK(perturb(inst, sol, rng) == sol);
  }
}

TEST_CASE("perturb: the only eligible pair is swapped") {
  Instance inst = ring(4);
  inst.capacity = 10.0;
  inst.num_vehicles = 2;
  require(inst, 0, 1.0, 1.0, 1);
  require(inst, 1, 1.0, 1.0, 2);
  require(inst, 2, 1.0, 1.0, 1);
  const Solution sol{{{0, 2, 1}, {}}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    CHECK(perturb(inst, sol, rng) == Solution{{{2, 0, 1}, {}}});
  }
}

TEST_CASE("perturb: swaps two same-class arcs on one route") {
  const Instance inst = small_instance(24, 3, 3, 17);
  const auto mat = compute_deadhead_matrix(inst);
  Rng build(1);
  const auto sol = construct(inst, mat, Variant::P, build);
  std::map<int, int> class_hits;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const auto out = perturb(inst, sol, rng);
    CHECK(check_feasible(inst, out, Variant::P).empty());
    std::vector<std::pair<std::size_t, std::size_t>> diff;
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
      for (std::size_t i = 0; i < sol.routes[r].size(); ++i) {
        if (sol.routes[r][i] != out.routes[r][i]) {
          diff.emplace_back(r, i);
        }
      }
    }
    REQUIRE(diff.size() == 2);
    CHECK(diff[0].first == diff[1].first);
    const auto& before = sol.routes[diff[0].first];
    const auto& after = out.routes[diff[0].first];
    CHECK(before[diff[0].second] == after[diff[1].second]);
    CHECK(before[diff[1].second] == after[diff[0].second]);
    CHECK(inst.arcs[before[diff[0].second]].p == inst.arcs[before[diff[1].second]].p);
    ++class_hits[inst.arcs[before[diff[0].second]].p];
  }
  // every class with an eligible route gets picked
  CHECK(class_hits.size() >= 2);
}

TEST_CASE("ils: unique feasible solution") {
  const Instance inst = single_arc();
  const auto mat = compute_deadhead_matrix(inst);
  Rng rng(1);
  CHECK(ils(inst, mat, Variant::P, rng) == Solution{{{1}}});
}

TEST_CASE("ils: no worse than greedy plus local search, reproducible, monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = small_instance(8, 2, 2, seed);  // 6 required arcs
    const auto mat = compute_deadhead_matrix(inst);
    for (const Variant v : {Variant::P, Variant::U}) {
      Rng a(seed);
      const auto base = local_search(inst, mat, construct(inst, mat, v, a), v);
      Rng b(seed);
      const auto got = ils(inst, mat, v, b);
      CHECK(check_feasible(inst, got, v).empty());
      CHECK(lex_compare(obj(inst, mat, got), obj(inst, mat, base)) <= 0);
      Rng c(seed);
      CHECK(ils(inst, mat, v, c) == got);
      // incumbent never gets worse as the budget grows
      Objective prev = obj(inst, mat, base);
      for (int k = 0; k <= 6; k += 2) {
        Rng d(seed);
        const auto s = ils(inst, mat, v, d, {k, 1});
        const auto o = obj(inst, mat, s);
        CHECK(lex_compare(o, prev) <= 0);
        prev = o;
      }
    }
  }
}

TEST_CASE("ea: single-member population of the unique solution") {
  const Instance inst = single_arc();
  const auto mat = compute_deadhead_matrix(inst);
  Rng rng(1);
  CHECK(ea(inst, mat, Variant::P, rng, {5, 1, 1}) == Solution{{{1}}});
}

TEST_CASE("ea: crossover of identical parents is a no-op") {
  const Instance inst = small_instance(16, 2, 3, 3);
  const auto mat = compute_deadhead_matrix(inst);
  Rng rng(2);
  const auto parent = construct(inst, mat, Variant::P, rng);
  for (int cls = 1; cls <= 3; ++cls) {
    CHECK(crossover(inst, mat, Variant::P, parent, parent, cls) == parent);
  }
}

TEST_CASE("ea: offspring are feasible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = small_instance(20, 3, 3, seed);
    const auto mat = compute_deadhead_matrix(inst);
    for (const Variant v : {Variant::P, Variant::U}) {
      Rng rng(seed);
      const auto a = construct(inst, mat, v, rng);
      const auto b = construct(inst, mat, v, rng);
      for (int cls = 1; cls <= 3; ++cls) {
        CHECK(check_feasible(inst, crossover(inst, mat, v, a, b, cls), v).empty());
      }
    }
  }
}

TEST_CASE("ea: best member never gets worse") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = small_instance(8, 2, 2, seed);
    const auto mat = compute_deadhead_matrix(inst);
    Objective prev;
    for (int k : {0, 1, 5, 20}) {
      Rng rng(seed);
      const auto s = ea(inst, mat, Variant::P, rng, {k, 20, 1});
      CHECK(check_feasible(inst, s, Variant::P).empty());
      const auto o = obj(inst, mat, s);
      if (k > 0) {
        CHECK(lex_compare(o, prev) <= 0);
      }
      prev = o;
    }
    Rng r1(seed);
    Rng r2(seed);
    CHECK(ea(inst, mat, Variant::U, r1, {5, 20, 1}) == ea(inst, mat, Variant::U, r2, {5, 20, 2}));
  }
}

TEST_CASE("aco: pheromone matrix basics") {
  PheromoneMatrix tau(3, 0.5);
  for (double v : tau.values()) {
    CHECK(v == 0.0);
  }
  tau.deposit(0, 1, 2.0);
  tau.deposit(2, 2, 0.25);
  const auto before = tau.values();
  tau.evaporate();
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(tau.values()[i] == doctest::Approx(0.5 * before[i]));
  }
  CHECK_THROWS_AS(PheromoneMatrix(3, 0.0), Fault);
  CHECK_THROWS_AS(PheromoneMatrix(3, 1.0), Fault);
}

TEST_CASE("aco: single arc reinforces nothing") {
  const Instance inst = single_arc();
  const auto mat = compute_deadhead_matrix(inst);
  Rng rng(1);
  std::vector<PheromoneMatrix> trace;
  const auto sol = aco(inst, mat, Variant::P, rng, {5, 3, 0.5, 2.0, 1e-6, 1}, &trace);
  CHECK(sol == Solution{{{1}}});
  REQUIRE(trace.size() == 3);
  for (const auto& tau : trace) {
    REQUIRE(tau.size() == 1);
    CHECK(tau.at(0, 0) == 0.0);
  }
}

TEST_CASE("aco: reinforcement follows consecutive pairs of the best solution") {
  Instance inst = ring(4);
  inst.capacity = 10.0;
  inst.num_vehicles = 2;
  require(inst, 0, 1.0, 1.0, 1);
  require(inst, 1, 1.0, 1.0, 1);
  require(inst, 2, 1.0, 1.0, 2);
  const auto index = required_index(inst);
  PheromoneMatrix tau(3, 0.5);
  aco_reinforce(tau, index, Solution{{{0, 1, 2}, {}}}, Objective{{4.0, 6.0}});
  CHECK(tau.at(index.at(0), index.at(1)) == doctest::Approx(0.25));
  CHECK(tau.at(index.at(1), index.at(2)) == doctest::Approx(0.25));
  double total = 0.0;
  for (double v : tau.values()) {
    total += v;
  }
  CHECK(total == doctest::Approx(0.5));
}

TEST_CASE("aco: pheromone stays bounded and results are reproducible") {
  const Instance inst = small_instance(8, 2, 2, 6);
  const auto mat = compute_deadhead_matrix(inst);
  Rng rng(3);
  std::vector<PheromoneMatrix> trace;
  const AcoOptions opts{10, 10, 0.5, 2.0, 1e-6, 1};
  const auto sol = aco(inst, mat, Variant::P, rng, opts, &trace);
  CHECK(check_feasible(inst, sol, Variant::P).empty());
  const auto best = obj(inst, mat, sol);
  REQUIRE(best[0] > 0.0);
  // each deposit is at most 1/T_1 of the best solution, so tau <= (1 - rho) / rho / T_1
  const double bound = (1.0 - opts.rho) / opts.rho / best[0] + 1e-12;
  for (const auto& tau : trace) {
    for (double v : tau.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= bound);
    }
  }
  Rng again(3);
  CHECK(aco(inst, mat, Variant::P, again, opts) == sol);
  Rng threaded(3);
  auto topts = opts;
  topts.threads = 3;
  CHECK(aco(inst, mat, Variant::P, threaded, topts) == sol);
}

TEST_CASE("aco: beats the median greedy construction") {
  const Instance inst = small_instance(8, 2, 2, 12);  // 6 arcs, 2 vehicles
  const auto mat = compute_deadhead_matrix(inst);
  std::vector<Objective> greedy;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    greedy.push_back(obj(inst, mat, construct(inst, mat, Variant::P, rng)));
  }
  std::sort(greedy.begin(), greedy.end(), [](const Objective& a, const Objective& b) { return a.t < b.t; });
  const Objective median = greedy[greedy.size() / 2];
  Rng rng(1);
  const auto sol = aco(inst, mat, Variant::P, rng, {10, 10, 0.5, 2.0, 1e-6, 1});
  CHECK(lex_compare(obj(inst, mat, sol), median) <= 0);
}
