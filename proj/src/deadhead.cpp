#include "hdcarp/deadhead.h"

#include <algorithm>
#include <limits>

namespace hdcarp {

double DeadheadMatrix::max_sp() const {
  double m = 0.0;
  for (double v : sp_) {
    m = std::max(m, v);
  }
  return m;
}

std::vector<int> DeadheadMatrix::path_nodes(int from, int to) const {
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    cur = next_hop(cur, to);
    path.push_back(cur);
    if (path.size() > static_cast<std::size_t>(n_) + 1) {
      throw Fault("next_hop matrix contains a cycle");
    }
  }
  return path;
}

DeadheadMatrix compute_deadhead_matrix(const Instance& inst) {
  const int n = inst.num_nodes();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  std::vector<double> sp(static_cast<std::size_t>(n) * n, inf);
  std::vector<int> next(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    sp[idx(i, i)] = 0.0;
    next[idx(i, i)] = i;
  }
  for (const auto& a : inst.arcs) {
    if (a.tail != a.head && a.d < sp[idx(a.tail, a.head)]) {
      sp[idx(a.tail, a.head)] = a.d;
      next[idx(a.tail, a.head)] = a.head;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double ik = sp[idx(i, k)];
      if (ik == inf) {
        continue;
      }
      for (int j = 0; j < n; ++j) {
        const double via = ik + sp[idx(k, j)];
        if (via < sp[idx(i, j)]) {
          sp[idx(i, j)] = via;
          next[idx(i, j)] = next[idx(i, k)];
        }
      }
    }
  }
  if (std::any_of(sp.begin(), sp.end(), [](double v) { return v == inf; })) {
    throw Fault("instance not strongly connected");
  }
  return DeadheadMatrix(n, std::move(sp), std::move(next));
}

std::vector<int> path_arcs(const Instance& inst, const DeadheadMatrix& mat, int from, int to) {
  const auto nodes = mat.path_nodes(from, to);
  std::vector<int> arcs;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    int best = -1;
    for (const auto& a : inst.arcs) {
      if (a.tail == nodes[i] && a.head == nodes[i + 1] &&
          (best < 0 || a.d < inst.arcs[best].d)) {
        best = a.id;
      }
    }
    if (best < 0) {
      throw Fault("shortest path uses a missing arc");
    }
    arcs.push_back(best);
  }
  return arcs;
}

}  // namespace hdcarp
