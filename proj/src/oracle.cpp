#include "hdcarp/oracle.h"

#include <algorithm>
#include <optional>

namespace hdcarp {

namespace {

struct RouteOption {
  std::vector<double> times;
  Route order;
};

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) {
      return false;
    }
  }
  return true;
}

// Pareto-minimal service orders of one arc subset. A route whose completion
// vector is dominated entry-wise can never improve the max over routes.
std::vector<RouteOption> route_options(const Instance& inst, const DeadheadMatrix& mat,
                                       std::vector<int> arcs, Variant variant) {
  const auto by_class = [&](int a, int b) {
    return std::pair(inst.arcs[a].p, a) < std::pair(inst.arcs[b].p, b);
  };
  std::sort(arcs.begin(), arcs.end(), by_class);
  std::vector<RouteOption> kept;
  std::vector<double> times(static_cast<std::size_t>(inst.num_classes));
  do {
    if (variant == Variant::P) {
      bool monotone = true;
      for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
        monotone = monotone && inst.arcs[arcs[i]].p <= inst.arcs[arcs[i + 1]].p;
      }
      if (!monotone) {
        continue;
      }
    }
    route_completion(inst, mat, arcs, times);
    if (std::any_of(kept.begin(), kept.end(), [&](const RouteOption& o) { return dominates(o.times, times); })) {
      continue;
    }
    std::erase_if(kept, [&](const RouteOption& o) { return dominates(times, o.times); });
    kept.push_back({times, arcs});
  } while (std::next_permutation(arcs.begin(), arcs.end(), by_class));
  return kept;
}

}  // namespace

OracleResult brute_force_oracle(const Instance& inst, const DeadheadMatrix& mat, Variant variant,
                                const OracleLimits& limits) {
  const int max_arcs = std::min(limits.max_arcs, 8);
  const int max_vehicles = std::min(limits.max_vehicles, 3);
  const auto required = inst.required_arcs();
  const int n = static_cast<int>(required.size());
  const int nv = inst.num_vehicles;
  if (n > max_arcs || nv > max_vehicles) {
    throw Fault("oracle limits exceeded: " + std::to_string(n) + " required arcs, " +
                std::to_string(nv) + " vehicles");
  }

  // Options per arc subset (bitmask over `required`), computed lazily.
  std::vector<std::optional<std::vector<RouteOption>>> cache(std::size_t{1} << n);
  const auto options_for = [&](std::uint32_t mask) -> const std::vector<RouteOption>& {
    auto& slot = cache[mask];
    if (!slot) {
      std::vector<int> arcs;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          arcs.push_back(required[i]);
        }
      }
      slot = route_options(inst, mat, std::move(arcs), variant);
    }
    return *slot;
  };
  std::vector<double> mask_load(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < mask_load.size(); ++mask) {
    const int low = __builtin_ctz(mask);
    mask_load[mask] = mask_load[mask & (mask - 1)] + inst.arcs[required[low]].q;
  }

  std::optional<OracleResult> best;
  std::vector<int> owner(static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(nv));
  std::vector<const RouteOption*> picked(static_cast<std::size_t>(nv));

  // Depth-first over vehicles, carrying the running max completion vector.
  const auto combine = [&](auto&& self, int m, const std::vector<double>& acc) -> void {
    if (m == nv) {
      Objective obj{acc};
      if (!best || lex_less(obj, best->objective)) {
        Solution sol;
        for (const auto* o : picked) {
          sol.routes.push_back(o->order);
        }
        best = OracleResult{std::move(sol), std::move(obj)};
      }
      return;
    }
    for (const auto& option : options_for(masks[m])) {
      std::vector<double> next = acc;
      for (std::size_t k = 0; k < next.size(); ++k) {
        next[k] = std::max(next[k], option.times[k]);
      }
      picked[m] = &option;
      self(self, m + 1, next);
    }
  };

  while (true) {
    std::fill(masks.begin(), masks.end(), 0u);
    for (int i = 0; i < n; ++i) {
      masks[owner[i]] |= 1u << i;
    }
    bool fits = true;
    for (int m = 0; m < nv; ++m) {
      fits = fits && mask_load[masks[m]] <= inst.capacity + kTimeTol;
    }
    if (fits) {
      combine(combine, 0, std::vector<double>(static_cast<std::size_t>(inst.num_classes), 0.0));
    }
    // Next assignment, last arc varying fastest.
    int i = n - 1;
    while (i >= 0 && owner[i] == nv - 1) {
      owner[i] = 0;
      --i;
    }
    if (i < 0) {
      break;
    }
    ++owner[i];
  }
  if (!best) {
    throw Fault("oracle: no capacity-feasible assignment exists");
  }
  return *best;
}

}  // namespace hdcarp
