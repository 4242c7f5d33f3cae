#include "hdcarp/local_search.h"

#include <algorithm>

namespace hdcarp {

SubTourView get_subtour_p(const Instance& inst, std::span<const int> route, int cls) {
  std::size_t lo = 0;
  while (lo < route.size() && inst.arcs[route[lo]].p != cls) {
    ++lo;
  }
  std::size_t hi = lo;
  while (hi < route.size() && inst.arcs[route[hi]].p == cls) {
    ++hi;
  }
  return {lo, hi};
}

SubTourView get_subtour_u(const Instance& inst, std::span<const int> route, int cls) {
  // last[h] = one past the last class-h position, 0 if absent.
  std::vector<std::size_t> last(static_cast<std::size_t>(cls) + 1, 0);
  for (std::size_t i = 0; i < route.size(); ++i) {
    const int c = inst.arcs[route[i]].p;
    if (c <= cls) {
      last[c] = i + 1;
    }
  }
  std::size_t level_start = 0;
  for (int h = 1; h < cls; ++h) {
    level_start = std::max(level_start, last[h]);
  }
  if (last[cls] <= level_start) {
    return {level_start, level_start};
  }
  return {level_start, last[cls]};
}

SubTourView get_subtour(const Instance& inst, std::span<const int> route, int cls, Variant variant) {
  return variant == Variant::P ? get_subtour_p(inst, route, cls) : get_subtour_u(inst, route, cls);
}

SearchState::SearchState(const Instance& inst, const DeadheadMatrix& mat, Solution sol)
    : inst_(&inst), mat_(&mat), sol_(std::move(sol)) {
  const auto p = static_cast<std::size_t>(inst.num_classes);
  times_.assign(sol_.routes.size() * p, 0.0);
  loads_.assign(sol_.routes.size(), 0.0);
  for (std::size_t r = 0; r < sol_.routes.size(); ++r) {
    refresh(r);
  }
  refresh_objective();
}

std::span<const double> SearchState::route_times(std::size_t r) const {
  const auto p = static_cast<std::size_t>(inst_->num_classes);
  return std::span<const double>(times_).subspan(r * p, p);
}

std::vector<double> SearchState::others_max(std::size_t a, std::size_t b) const {
  const auto p = static_cast<std::size_t>(inst_->num_classes);
  std::vector<double> out(p, 0.0);
  for (std::size_t r = 0; r < sol_.routes.size(); ++r) {
    if (r == a || r == b) {
      continue;
    }
    for (std::size_t k = 0; k < p; ++k) {
      out[k] = std::max(out[k], times_[r * p + k]);
    }
  }
  return out;
}

void SearchState::refresh(std::size_t r) {
  const auto p = static_cast<std::size_t>(inst_->num_classes);
  route_completion(*inst_, *mat_, sol_.routes[r], std::span<double>(times_).subspan(r * p, p));
  loads_[r] = route_load(*inst_, sol_.routes[r]);
}

void SearchState::refresh_objective() {
  obj_ = Objective{others_max(sol_.routes.size(), sol_.routes.size())};
}

void SearchState::swap_intra(std::size_t r, std::size_t i, std::size_t j) {
  std::swap(sol_.routes[r][i], sol_.routes[r][j]);
  refresh(r);
  refresh_objective();
}

void SearchState::swap_inter(std::size_t ra, std::size_t rb, std::size_t i, std::size_t j) {
  std::swap(sol_.routes[ra][i], sol_.routes[rb][j]);
  refresh(ra);
  refresh(rb);
  refresh_objective();
}

namespace {

SwapResult sentinel(const SearchState& state) {
  SwapResult res;
  res.delta.delta.assign(state.objective().size(), 0.0);
  res.after = state.objective();
  return res;
}

// Picks the lexicographically smallest candidate objective, scanning in
// candidate order so that the earliest candidate wins ties.
SwapResult reduce(const SearchState& state,
                  const std::vector<std::pair<std::size_t, std::size_t>>& candidates,
                  const std::vector<double>& after, const std::vector<char>& valid) {
  const std::size_t p = state.objective().size();
  std::optional<std::size_t> best;
  Objective best_obj;
  Objective cur{std::vector<double>(p)};
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!valid[c]) {
      continue;
    }
    std::copy_n(after.begin() + static_cast<std::ptrdiff_t>(c * p), p, cur.t.begin());
    if (!best || lex_less(cur, best_obj)) {
      best = c;
      best_obj = cur;
    }
  }
  if (!best) {
    return sentinel(state);
  }
  SwapResult res;
  res.positions = candidates[*best];
  res.after = best_obj;
  res.delta.delta.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    res.delta.delta[k] = best_obj[k] - state.objective()[k];
  }
  res.delta.improving = lex_less(best_obj, state.objective());
  return res;
}

}  // namespace

SwapResult best_swap_intra(const SearchState& state, std::size_t route, SubTourView view,
                           int threads) {
  if (view.size() < 2) {
    return sentinel(state);
  }
  const Instance& inst = state.instance();
  const std::size_t p = static_cast<std::size_t>(inst.num_classes);
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = view.lo; i < view.hi; ++i) {
    for (std::size_t j = i + 1; j < view.hi; ++j) {
      candidates.emplace_back(i, j);
    }
  }
  const auto others = state.others_max(route, route);
  std::vector<double> after(candidates.size() * p);
  std::vector<char> valid(candidates.size(), 1);
  const Route& base = state.route(route);
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());

#pragma omp parallel num_threads(std::max(threads, 1)) if (threads > 1)
  {
    Route trial;
    std::vector<double> times(p);
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const auto [i, j] = candidates[static_cast<std::size_t>(c)];
      trial = base;
      std::swap(trial[i], trial[j]);
      route_completion(inst, state.matrix(), trial, times);
      for (std::size_t k = 0; k < p; ++k) {
        after[static_cast<std::size_t>(c) * p + k] = std::max(others[k], times[k]);
      }
    }
  }
  return reduce(state, candidates, after, valid);
}

SwapResult best_swap_inter(const SearchState& state, std::size_t route_a, std::size_t route_b,
                           SubTourView view_a, SubTourView view_b, int threads) {
  if (view_a.empty() || view_b.empty()) {
    return sentinel(state);
  }
  const Instance& inst = state.instance();
  const std::size_t p = static_cast<std::size_t>(inst.num_classes);
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = view_a.lo; i < view_a.hi; ++i) {
    for (std::size_t j = view_b.lo; j < view_b.hi; ++j) {
      candidates.emplace_back(i, j);
    }
  }
  const auto others = state.others_max(route_a, route_b);
  std::vector<double> after(candidates.size() * p);
  std::vector<char> valid(candidates.size(), 0);
  const Route& base_a = state.route(route_a);
  const Route& base_b = state.route(route_b);
  const double load_a = state.load(route_a);
  const double load_b = state.load(route_b);
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());

#pragma omp parallel num_threads(std::max(threads, 1)) if (threads > 1)
  {
    Route ta;
    Route tb;
    std::vector<double> times_a(p);
    std::vector<double> times_b(p);
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      const auto [i, j] = candidates[cu];
      const double qa = inst.arcs[base_a[i]].q;
      const double qb = inst.arcs[base_b[j]].q;
      if (load_a - qa + qb > inst.capacity + kTimeTol ||
          load_b - qb + qa > inst.capacity + kTimeTol) {
        continue;
      }
      valid[cu] = 1;
      ta = base_a;
      tb = base_b;
      std::swap(ta[i], tb[j]);
      route_completion(inst, state.matrix(), ta, times_a);
      route_completion(inst, state.matrix(), tb, times_b);
      for (std::size_t k = 0; k < p; ++k) {
        after[cu * p + k] = std::max({others[k], times_a[k], times_b[k]});
      }
    }
  }
  return reduce(state, candidates, after, valid);
}

Solution local_search(const Instance& inst, const DeadheadMatrix& mat, Solution sol,
                      Variant variant, const LocalSearchOptions& options) {
  SearchState state(inst, mat, std::move(sol));
  const std::size_t nr = state.num_routes();
  for (int cls = 1; cls <= inst.num_classes; ++cls) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t r = 0; r < nr; ++r) {
        while (true) {
          const auto view = get_subtour(inst, state.route(r), cls, variant);
          const auto move = best_swap_intra(state, r, view, options.threads);
          if (!move.delta.improving) {
            break;
          }
          state.swap_intra(r, move.positions->first, move.positions->second);
          improved = true;
        }
      }
      for (std::size_t a = 0; a < nr; ++a) {
        for (std::size_t b = a + 1; b < nr; ++b) {
          while (true) {
            const auto va = get_subtour(inst, state.route(a), cls, variant);
            const auto vb = get_subtour(inst, state.route(b), cls, variant);
            const auto move = best_swap_inter(state, a, b, va, vb, options.threads);
            if (!move.delta.improving) {
              break;
            }
            state.swap_inter(a, b, move.positions->first, move.positions->second);
            improved = true;
          }
        }
      }
    }
  }
  return std::move(state).release();
}

}  // namespace hdcarp
