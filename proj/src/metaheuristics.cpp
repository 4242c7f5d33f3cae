#include "hdcarp/metaheuristics.h"

#include <algorithm>
#include <cmath>

#include "hdcarp/constructive.h"

namespace hdcarp {

Solution perturb(const Instance& inst, Solution sol, Rng& rng) {
  // eligible[c] = routes servicing class c+1 at least twice
  std::vector<std::vector<std::size_t>> eligible(static_cast<std::size_t>(inst.num_classes));
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    std::vector<int> count(eligible.size(), 0);
    for (int id : sol.routes[r]) {
      ++count[inst.arcs[id].p - 1];
    }
    for (std::size_t c = 0; c < eligible.size(); ++c) {
      if (count[c] >= 2) {
        eligible[c].push_back(r);
      }
    }
  }
  std::vector<std::size_t> classes;
  for (std::size_t c = 0; c < eligible.size(); ++c) {
    if (!eligible[c].empty()) {
      classes.push_back(c);
    }
  }
  if (classes.empty()) {
    return sol;
  }
  const std::size_t c = classes[rng.below(classes.size())];
  const std::size_t r = eligible[c][rng.below(eligible[c].size())];
  auto& route = sol.routes[r];
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (inst.arcs[route[i]].p == static_cast<int>(c) + 1) {
      positions.push_back(i);
    }
  }
  const std::size_t i = rng.below(positions.size());
  std::size_t j = rng.below(positions.size() - 1);
  if (j >= i) {
    ++j;
  }
  std::swap(route[positions[i]], route[positions[j]]);
  return sol;
}

Solution ils(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
             const IlsOptions& options) {
  const LocalSearchOptions ls{options.threads};
  Solution best = local_search(inst, mat, construct(inst, mat, variant, rng), variant, ls);
  Objective best_obj = evaluate_unchecked(inst, mat, best);
  for (int k = 0; k < options.k_max; ++k) {
    Solution candidate = local_search(inst, mat, perturb(inst, best, rng), variant, ls);
    Objective obj = evaluate_unchecked(inst, mat, candidate);
    if (lex_less(obj, best_obj)) {
      best = std::move(candidate);
      best_obj = std::move(obj);
    }
  }
  return best;
}

namespace {

// Position in `route` where a class-`cls` arc goes when the route has none:
// right after its last arc of a lower class.
std::size_t class_slot(const Instance& inst, const Route& route, int cls) {
  std::size_t slot = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (inst.arcs[route[i]].p < cls) {
      slot = i + 1;
    }
  }
  return slot;
}

// Position right after the last arc of class <= cls.
std::size_t block_end(const Instance& inst, const Route& route, int cls) {
  std::size_t end = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (inst.arcs[route[i]].p <= cls) {
      end = i + 1;
    }
  }
  return end;
}

struct RoutePlan {
  Route base;          // route without its class arcs
  std::size_t at = 0;  // where the class block is spliced into `base`
  std::vector<int> own;
  std::vector<int> incoming;
  std::size_t take_own = 0;  // prefix of `own` given away
  std::size_t take_in = 0;   // prefix of `incoming` received

  Route compose(const std::vector<int>& in) const {
    Route r(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(at));
    r.insert(r.end(), in.begin(), in.end());
    r.insert(r.end(), own.begin() + static_cast<std::ptrdiff_t>(take_own), own.end());
    r.insert(r.end(), base.begin() + static_cast<std::ptrdiff_t>(at), base.end());
    return r;
  }
  std::vector<int> received() const {
    return {incoming.begin(), incoming.begin() + static_cast<std::ptrdiff_t>(take_in)};
  }
};

bool less_exact(const Objective& a, const Objective& b) {
  return std::lexicographical_compare(a.t.begin(), a.t.end(), b.t.begin(), b.t.end());
}

}  // namespace

Solution crossover(const Instance& inst, const DeadheadMatrix& mat, Variant variant,
                   const Solution& first, const Solution& second, int cls) {
  const std::size_t nr = first.routes.size();
  std::vector<RoutePlan> plans(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    auto& plan = plans[r];
    bool seen = false;
    for (int id : first.routes[r]) {
      if (inst.arcs[id].p == cls) {
        if (!seen) {
          plan.at = plan.base.size();
          seen = true;
        }
        plan.own.push_back(id);
      } else {
        plan.base.push_back(id);
      }
    }
    if (!seen) {
      plan.at = class_slot(inst, plan.base, cls);
    }
    for (int id : second.routes[r]) {
      if (inst.arcs[id].p == cls) {
        plan.incoming.push_back(id);
      }
    }
    plan.take_own = plan.own.size();
    plan.take_in = plan.incoming.size();

    // Shrink the exchanged prefixes from the right, alternating sides,
    // until the route fits.
    bool shrink_incoming = true;
    while (route_load(inst, plan.compose(plan.received())) > inst.capacity + kTimeTol) {
      if (plan.take_own == 0 && plan.take_in == 0) {
        break;
      }
      if ((shrink_incoming && plan.take_in > 0) || plan.take_own == 0) {
        --plan.take_in;
      } else {
        --plan.take_own;
      }
      shrink_incoming = !shrink_incoming;
    }
  }

  // Arcs kept from `first` win over the same arcs arriving from `second`.
  std::vector<char> kept(inst.arcs.size(), 0);
  for (const auto& plan : plans) {
    for (std::size_t i = plan.take_own; i < plan.own.size(); ++i) {
      kept[plan.own[i]] = 1;
    }
  }
  Solution child;
  child.routes.resize(nr);
  std::vector<char> placed(inst.arcs.size(), 0);
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<int> in;
    for (int id : plans[r].received()) {
      if (!kept[id]) {
        in.push_back(id);
      }
    }
    child.routes[r] = plans[r].compose(in);
    for (int id : child.routes[r]) {
      placed[id] = 1;
    }
  }

  // Greedy re-insertion of arcs lost in the exchange at the end of the
  // class block of the route where the class finishes earliest.
  for (int id : inst.class_arcs(cls)) {
    if (placed[id]) {
      continue;
    }
    std::optional<std::size_t> best;
    double best_time = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      if (route_load(inst, child.routes[r]) + inst.arcs[id].q > inst.capacity + kTimeTol) {
        continue;
      }
      Route trial = child.routes[r];
      trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(block_end(inst, trial, cls)), id);
      const double t = route_completion(inst, mat, trial)[cls - 1];
      if (!best || t < best_time - kTimeTol) {
        best = r;
        best_time = t;
      }
    }
    if (!best) {
      return first;
    }
    auto& route = child.routes[*best];
    route.insert(route.begin() + static_cast<std::ptrdiff_t>(block_end(inst, route, cls)), id);
    placed[id] = 1;
  }

  if (!check_feasible(inst, child, variant).empty()) {
    return first;
  }
  return child;
}

Solution ea(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
            const EaOptions& options) {
  if (options.lambda < 1) {
    throw Fault("ea: population size must be positive");
  }
  std::vector<Member> pop;
  pop.reserve(static_cast<std::size_t>(options.lambda) + 6);
  for (int i = 0; i < options.lambda; ++i) {
    Solution s = construct(inst, mat, variant, rng);
    Objective o = evaluate_unchecked(inst, mat, s);
    pop.push_back({std::move(s), std::move(o)});
  }
  const auto by_objective = [](const Member& a, const Member& b) {
    return less_exact(a.objective, b.objective);
  };
  std::stable_sort(pop.begin(), pop.end(), by_objective);

  for (int k = 0; k < options.k_max; ++k) {
    const std::size_t np = std::min<std::size_t>(4, pop.size());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t j = i + 1; j < np; ++j) {
        pairs.emplace_back(i, j);
      }
    }
    const int cls = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.num_classes)));
    std::vector<Member> offspring(pairs.size());
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for num_threads(std::max(options.threads, 1)) if (options.threads > 1) schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const auto [i, j] = pairs[static_cast<std::size_t>(c)];
      Solution child = crossover(inst, mat, variant, pop[i].solution, pop[j].solution, cls);
      child = local_search(inst, mat, std::move(child), variant);
      Objective obj = evaluate_unchecked(inst, mat, child);
      offspring[static_cast<std::size_t>(c)] = {std::move(child), std::move(obj)};
    }
    for (auto& child : offspring) {
      pop.push_back(std::move(child));
    }
    std::stable_sort(pop.begin(), pop.end(), by_objective);
    pop.resize(std::min(pop.size(), static_cast<std::size_t>(options.lambda)));
  }
  return pop.front().solution;
}

PheromoneMatrix::PheromoneMatrix(std::size_t n, double rho) : n_(n), rho_(rho), tau_(n * n, 0.0) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Fault("pheromone evaporation rate must lie in (0, 1)");
  }
}

void PheromoneMatrix::evaporate() {
  for (double& v : tau_) {
    v *= (1.0 - rho_);
  }
}

std::unordered_map<int, std::size_t> required_index(const Instance& inst) {
  std::unordered_map<int, std::size_t> index;
  for (int id : inst.required_arcs()) {
    index.emplace(id, index.size());
  }
  return index;
}

std::optional<Solution> aco_build(const Instance& inst, const DeadheadMatrix& mat,
                                  const PheromoneMatrix& tau,
                                  const std::unordered_map<int, std::size_t>& index, Rng& rng,
                                  const AcoOptions& options) {
  const auto nv = static_cast<std::size_t>(inst.num_vehicles);
  Solution sol;
  sol.routes.assign(nv, {});
  std::vector<double> load(nv, 0.0);

  struct Option {
    std::size_t vehicle;
    std::size_t arc_slot;
    double weight;
  };
  std::vector<Option> choices;
  for (int cls = 1; cls <= inst.num_classes; ++cls) {
    std::vector<int> remaining = inst.class_arcs(cls);
    while (!remaining.empty()) {
      choices.clear();
      double total = 0.0;
      for (std::size_t m = 0; m < nv; ++m) {
        const Route& route = sol.routes[m];
        for (std::size_t s = 0; s < remaining.size(); ++s) {
          const Arc& b = inst.arcs[remaining[s]];
          if (load[m] + b.q > inst.capacity + kTimeTol) {
            continue;
          }
          double trail = options.eps0;
          double dh = mat.sp(inst.depot, b.tail);
          if (!route.empty()) {
            const Arc& a = inst.arcs[route.back()];
            trail += tau.at(index.at(a.id), index.at(b.id));
            dh = mat.sp(a.head, b.tail);
          }
          const double w = trail * std::pow(1.0 / (dh + options.eps0), options.beta);
          choices.push_back({m, s, w});
          total += w;
        }
      }
      if (choices.empty()) {
        return std::nullopt;
      }
      const double u = rng.uniform01() * total;
      double acc = 0.0;
      const Option* pick = &choices.back();
      for (const auto& c : choices) {
        acc += c.weight;
        if (u < acc) {
          pick = &c;
          break;
        }
      }
      const int id = remaining[pick->arc_slot];
      sol.routes[pick->vehicle].push_back(id);
      load[pick->vehicle] += inst.arcs[id].q;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick->arc_slot));
    }
  }
  return sol;
}

void aco_reinforce(PheromoneMatrix& tau, const std::unordered_map<int, std::size_t>& index,
                   const Solution& best, const Objective& objective) {
  double scale = 0.0;
  for (double t : objective.t) {
    if (t > kTimeTol) {
      scale = t;
      break;
    }
  }
  if (scale == 0.0) {
    return;
  }
  for (const auto& route : best.routes) {
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      tau.deposit(index.at(route[i]), index.at(route[i + 1]), 1.0 / scale);
    }
  }
}

Solution aco(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
             const AcoOptions& options, std::vector<PheromoneMatrix>* trace) {
  const auto index = required_index(inst);
  PheromoneMatrix tau(index.size(), options.rho);
  const std::uint64_t master = rng.next();
  std::optional<Member> best;

  for (int k = 0; k < options.k_max; ++k) {
    std::vector<std::optional<Member>> ants(static_cast<std::size_t>(options.n_ant));
    const auto n = static_cast<std::ptrdiff_t>(ants.size());
#pragma omp parallel for num_threads(std::max(options.threads, 1)) if (options.threads > 1) schedule(static)
    for (std::ptrdiff_t a = 0; a < n; ++a) {
      Rng ant_rng = Rng::derive(master, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(a));
      auto built = aco_build(inst, mat, tau, index, ant_rng, options);
      if (!built) {
        continue;
      }
      Solution s = local_search(inst, mat, std::move(*built), variant);
      Objective o = evaluate_unchecked(inst, mat, s);
      ants[static_cast<std::size_t>(a)] = Member{std::move(s), std::move(o)};
    }

    const Member* iteration_best = nullptr;
    for (const auto& ant : ants) {
      if (ant && (!iteration_best || lex_less(ant->objective, iteration_best->objective))) {
        iteration_best = &*ant;
      }
    }
    if (!iteration_best) {
      throw Fault("aco: every ant failed to build a feasible solution");
    }
    aco_reinforce(tau, index, iteration_best->solution, iteration_best->objective);
    tau.evaporate();
    if (!best || lex_less(iteration_best->objective, best->objective)) {
      best = *iteration_best;
    }
    if (trace) {
      trace->push_back(tau);
    }
  }
  if (!best) {
    // k_max == 0: fall back to a single ant.
    Rng ant_rng = Rng::derive(master, 0, 0);
    auto built = aco_build(inst, mat, tau, index, ant_rng, options);
    if (!built) {
      throw Fault("aco: ant failed to build a feasible solution");
    }
    return local_search(inst, mat, std::move(*built), variant);
  }
  return best->solution;
}

}  // namespace hdcarp
