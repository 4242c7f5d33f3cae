#ifndef HDCARP_TESTS_SUPPORT_H
#define HDCARP_TESTS_SUPPORT_H

#include <algorithm>
#include <cstdint>
#include <functional>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "hdcarp/bench.h"
#include "hdcarp/local_search.h"
#include "hdcarp/solution.h"

namespace testing {

using hdcarp::Arc;
using hdcarp::Instance;
using hdcarp::Solution;

inline Arc plain(int id, int tail, int head, double d) {
  Arc a;
  a.id = id;
  a.tail = tail;
  a.head = head;
  a.d = d;
  return a;
}

inline Arc serviced(int id, int tail, int head, double d, double q, double s, int p) {
  Arc a = plain(id, tail, head, d);
  a.required = true;
  a.q = q;
  a.s = s;
  a.p = p;
  return a;
}

inline Instance with_nodes(int n) {
  Instance inst;
  for (int i = 0; i < n; ++i) {
    inst.nodes.push_back({i, static_cast<double>(i), 0.0});
  }
  return inst;
}

// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 with unit arcs, plus the reverse
// cycle at length 2. Arc ids: forward i is i, reverse i is n + i.
inline Instance ring(int n) {
  Instance inst = with_nodes(n);
  for (int i = 0; i < n; ++i) {
    inst.arcs.push_back(plain(i, i, (i + 1) % n, 1.0));
  }
  for (int i = 0; i < n; ++i) {
    inst.arcs.push_back(plain(n + i, (i + 1) % n, i, 2.0));
  }
  return inst;
}

inline void require(Instance& inst, int id, double q, double s, int p) {
  Arc& a = inst.arcs[id];
  a.required = true;
  a.q = q;
  a.s = s;
  a.p = p;
  inst.num_classes = std::max(inst.num_classes, p);
}

// Single-source Dijkstra from every node; independent of the library's
// Floyd-Warshall.
inline std::vector<std::vector<double>> dijkstra_all(const Instance& inst) {
  const int n = inst.num_nodes();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
  for (int s = 0; s < n; ++s) {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s][s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[s][u]) {
        continue;
      }
      for (const auto& a : inst.arcs) {
        if (a.tail == u && du + a.d < dist[s][a.head]) {
          dist[s][a.head] = du + a.d;
          pq.emplace(dist[s][a.head], a.head);
        }
      }
    }
  }
  return dist;
}

// Reference simulator: walks each route with its own clock and records the
// finish time of the last arc of every class.
inline std::vector<double> simulate(const Instance& inst, const std::vector<std::vector<double>>& sp,
                                    const Solution& sol) {
  std::vector<double> t(static_cast<std::size_t>(inst.num_classes), 0.0);
  for (const auto& route : sol.routes) {
    double clock = 0.0;
    int at = inst.depot;
    for (int id : route) {
      const Arc& a = inst.arcs[id];
      clock += sp[at][a.tail] + a.s;
      at = a.head;
      t[a.p - 1] = std::max(t[a.p - 1], clock);
    }
  }
  return t;
}

inline bool lex_leq(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) {
      return a[k] < b[k];
    }
  }
  return true;
}

inline bool lex_lt(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) {
      return a[k] < b[k];
    }
  }
  return false;
}

inline bool class_monotone(const Instance& inst, const std::vector<int>& route) {
  for (std::size_t i = 1; i < route.size(); ++i) {
    if (inst.arcs[route[i - 1]].p > inst.arcs[route[i]].p) {
      return false;
    }
  }
  return true;
}

// Small generated instance; |A_r| = floor(3|A|/4).
inline Instance small_instance(int arcs, int vehicles, int classes, std::uint64_t seed) {
  hdcarp::GenSpec spec;
  spec.num_arcs = arcs;
  spec.num_vehicles = vehicles;
  spec.num_classes = classes;
  spec.seed = seed;
  return hdcarp::generate_instance(spec);
}

// Random feasible solution: arcs dealt to vehicles at random (respecting Q
// when possible), sorted by class for P.
inline std::optional<Solution> random_solution(const Instance& inst, hdcarp::Variant variant,
                                               std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    Solution sol;
    sol.routes.resize(static_cast<std::size_t>(inst.num_vehicles));
    std::vector<double> load(sol.routes.size(), 0.0);
    auto arcs = inst.required_arcs();
    std::shuffle(arcs.begin(), arcs.end(), rng);
    bool ok = true;
    for (int a : arcs) {
      std::vector<std::size_t> fits;
      for (std::size_t m = 0; m < sol.routes.size(); ++m) {
        if (load[m] + inst.arcs[a].q <= inst.capacity + 1e-9) {
          fits.push_back(m);
        }
      }
      if (fits.empty()) {
        ok = false;
        break;
      }
      const auto m = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
      sol.routes[m].push_back(a);
      load[m] += inst.arcs[a].q;
    }
    if (!ok) {
      continue;
    }
    if (variant == hdcarp::Variant::P) {
      for (auto& r : sol.routes) {
        std::stable_sort(r.begin(), r.end(),
                         [&](int x, int y) { return inst.arcs[x].p < inst.arcs[y].p; });
      }
    }
    return sol;
  }
  return std::nullopt;
}

struct Expected {
  std::optional<std::pair<std::size_t, std::size_t>> positions;
  std::vector<double> after;
};

// Exhaustive neighborhood scan with the reference simulator; earliest pair
// wins ties.
inline Expected scan_intra(const Instance& inst, const std::vector<std::vector<double>>& sp, const Solution& sol,
                          std::size_t r, hdcarp::SubTourView view) {
  Expected best;
  for (std::size_t i = view.lo; i < view.hi; ++i) {
    for (std::size_t j = i + 1; j < view.hi; ++j) {
      Solution trial = sol;
      std::swap(trial.routes[r][i], trial.routes[r][j]);
      const auto t = simulate(inst, sp, trial);
      if (!best.positions || lex_lt(t, best.after)) {
        best = {std::make_pair(i, j), t};
      }
    }
  }
  return best;
}

inline Expected scan_inter(const Instance& inst, const std::vector<std::vector<double>>& sp, const Solution& sol,
                          std::size_t a, std::size_t b, hdcarp::SubTourView va, hdcarp::SubTourView vb) {
  Expected best;
  for (std::size_t i = va.lo; i < va.hi; ++i) {
    for (std::size_t j = vb.lo; j < vb.hi; ++j) {
      Solution trial = sol;
      std::swap(trial.routes[a][i], trial.routes[b][j]);
      if (hdcarp::route_load(inst, trial.routes[a]) > inst.capacity + 1e-9 ||
          hdcarp::route_load(inst, trial.routes[b]) > inst.capacity + 1e-9) {
        continue;
      }
      const auto t = simulate(inst, sp, trial);
      if (!best.positions || lex_lt(t, best.after)) {
        best = {std::make_pair(i, j), t};
      }
    }
  }
  return best;
}

}  // namespace testing

#endif
