#include "hdcarp/constructive.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdcarp {

std::vector<double> softmax_probabilities(std::span<const InsertionCandidate> candidates) {
  if (candidates.empty()) {
    throw Fault("softmax_select: no candidates");
  }
  double z = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    if (!std::isfinite(c.cost)) {
      throw Fault("softmax_select: non-finite cost");
    }
    z = std::max(z, -c.cost);
  }
  std::vector<double> prob;
  prob.reserve(candidates.size());
  double total = 0.0;
  for (const auto& c : candidates) {
    prob.push_back(std::exp(-c.cost - z));
    total += prob.back();
  }
  for (double& p : prob) {
    p /= total;
  }
  return prob;
}

int softmax_select(std::span<const InsertionCandidate> candidates, Rng& rng) {
  const auto prob = softmax_probabilities(candidates);
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    acc += prob[i];
    if (u < acc) {
      return candidates[i].vehicle;
    }
  }
  return candidates.back().vehicle;
}

namespace {

struct Placement {
  std::size_t position = 0;
  double cost = 0.0;
};

// Best position for `arc` in `route` (lexicographic on the route's own class
// completion vector, lowest position on ties).
Placement best_position(const Instance& inst, const DeadheadMatrix& mat, const Route& route,
                        int arc, Variant variant) {
  const int cls = inst.arcs[arc].p;
  std::size_t lo = 0;
  if (variant == Variant::P) {
    while (lo < route.size() && inst.arcs[route[lo]].p < cls) {
      ++lo;
    }
  }
  std::size_t hi = route.size();
  if (variant == Variant::P) {
    hi = lo;
    while (hi < route.size() && inst.arcs[route[hi]].p <= cls) {
      ++hi;
    }
  }

  Route trial;
  Placement best;
  Objective best_times;
  for (std::size_t pos = lo; pos <= hi; ++pos) {
    trial = route;
    trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), arc);
    Objective times{route_completion(inst, mat, trial)};
    if (pos == lo || lex_less(times, best_times)) {
      best = {pos, times[cls - 1]};
      best_times = std::move(times);
    }
  }
  return best;
}

}  // namespace

Solution construct(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
                   const ConstructOptions& options) {
  const auto nv = static_cast<std::size_t>(inst.num_vehicles);
  Solution sol;
  sol.routes.assign(nv, {});
  std::vector<double> load(nv, 0.0);
  std::vector<double> clock(nv, 0.0);
  std::vector<int> pos(nv, inst.depot);

  std::vector<InsertionCandidate> candidates;
  std::vector<std::size_t> positions(nv);
  for (int cls = 1; cls <= inst.num_classes; ++cls) {
    for (int id : inst.class_arcs(cls)) {
      const Arc& a = inst.arcs[id];
      candidates.clear();
      for (std::size_t m = 0; m < nv; ++m) {
        if (load[m] + a.q > inst.capacity + kTimeTol) {
          continue;
        }
        double cost = 0.0;
        if (options.mode == InsertionMode::append) {
          cost = clock[m] + mat.sp(pos[m], a.tail) + a.s;
          positions[m] = sol.routes[m].size();
        } else {
          const auto placement = best_position(inst, mat, sol.routes[m], id, variant);
          cost = placement.cost;
          positions[m] = placement.position;
        }
        candidates.push_back({static_cast<int>(m), cost});
      }
      if (candidates.empty()) {
        throw Fault("construction failed: capacity");
      }
      const auto m = static_cast<std::size_t>(softmax_select(candidates, rng));
      auto& route = sol.routes[m];
      route.insert(route.begin() + static_cast<std::ptrdiff_t>(positions[m]), id);
      load[m] += a.q;
      if (positions[m] + 1 == route.size()) {
        clock[m] += mat.sp(pos[m], a.tail) + a.s;
        pos[m] = a.head;
      } else {
        clock[m] = 0.0;
        pos[m] = inst.depot;
        for (int r : route) {
          clock[m] += mat.sp(pos[m], inst.arcs[r].tail) + inst.arcs[r].s;
          pos[m] = inst.arcs[r].head;
        }
      }
    }
  }
  return sol;
}

}  // namespace hdcarp
