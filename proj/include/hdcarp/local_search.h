#ifndef HDCARP_LOCAL_SEARCH_H
#define HDCARP_LOCAL_SEARCH_H

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hdcarp/solution.h"

namespace hdcarp {

// Half-open window [lo, hi) of swappable positions in a route.
struct SubTourView {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool operator==(const SubTourView&) const = default;
};

// Maximal contiguous block of class-`cls` arcs (empty if the class is absent).
SubTourView get_subtour_p(const Instance& inst, std::span<const int> route, int cls);

// Hierarchy level `cls`: from the end of level cls-1 through the last
// class-`cls` arc. Level h ends right after the last arc of class <= h.
SubTourView get_subtour_u(const Instance& inst, std::span<const int> route, int cls);

SubTourView get_subtour(const Instance& inst, std::span<const int> route, int cls, Variant variant);

struct SwapDelta {
  std::vector<double> delta;  // after - before, per class
  bool improving = false;
};

struct SwapResult {
  SwapDelta delta;
  // (i, j) route positions of the best candidate; empty for the sentinel.
  std::optional<std::pair<std::size_t, std::size_t>> positions;
  Objective after;
};

// Solution plus per-route completion times and loads, kept in sync as swaps
// are applied.
class SearchState {
public:
  SearchState(const Instance& inst, const DeadheadMatrix& mat, Solution sol);

  const Instance& instance() const { return *inst_; }
  const DeadheadMatrix& matrix() const { return *mat_; }
  const Solution& solution() const { return sol_; }
  const Route& route(std::size_t r) const { return sol_.routes[r]; }
  std::size_t num_routes() const { return sol_.routes.size(); }
  const Objective& objective() const { return obj_; }
  std::span<const double> route_times(std::size_t r) const;
  double load(std::size_t r) const { return loads_[r]; }

  // Element-wise max of completion times over routes other than a and b.
  std::vector<double> others_max(std::size_t a, std::size_t b) const;

  void swap_intra(std::size_t r, std::size_t i, std::size_t j);
  void swap_inter(std::size_t ra, std::size_t rb, std::size_t i, std::size_t j);

  Solution release() && { return std::move(sol_); }

private:
  void refresh(std::size_t r);
  void refresh_objective();

  const Instance* inst_;
  const DeadheadMatrix* mat_;
  Solution sol_;
  std::vector<double> times_;  // num_routes x p, row-major
  std::vector<double> loads_;
  Objective obj_;
};

// Best exchange of two positions i < j inside `view` of one route, judged
// on the full objective. Ties keep the smallest (i, j). Windows with fewer
// than two positions give the sentinel.
SwapResult best_swap_intra(const SearchState& state, std::size_t route, SubTourView view,
                           int threads = 1);

// Best exchange of route_a[i] (i in view_a) with route_b[j] (j in view_b).
// Pairs that break capacity on either route are skipped.
SwapResult best_swap_inter(const SearchState& state, std::size_t route_a, std::size_t route_b,
                           SubTourView view_a, SubTourView view_b, int threads = 1);

struct LocalSearchOptions {
  int threads = 1;
};

// Class by class: intra-route swaps on every route, then inter-route swaps
// on every route pair, repeated until no improving swap remains for the
// class.
Solution local_search(const Instance& inst, const DeadheadMatrix& mat, Solution sol,
                      Variant variant, const LocalSearchOptions& options = {});

}  // namespace hdcarp

#endif
