#ifndef HDCARP_DEADHEAD_H
#define HDCARP_DEADHEAD_H

#include <vector>

#include "hdcarp/instance.h"

namespace hdcarp {

// All-pairs shortest travel times over arc traversal times, used to price
// the deadheading between consecutive serviced arcs.
class DeadheadMatrix {
public:
  DeadheadMatrix() = default;
  DeadheadMatrix(int n, std::vector<double> sp, std::vector<int> next_hop)
      : n_(n), sp_(std::move(sp)), next_(std::move(next_hop)) {}

  int size() const { return n_; }
  double sp(int from, int to) const { return sp_[static_cast<std::size_t>(from) * n_ + to]; }
  // First node after `from` on a shortest path to `to`; `to` itself when
  // from == to.
  int next_hop(int from, int to) const { return next_[static_cast<std::size_t>(from) * n_ + to]; }
  double max_sp() const;

  // Node sequence from -> ... -> to along next hops.
  std::vector<int> path_nodes(int from, int to) const;

private:
  int n_ = 0;
  std::vector<double> sp_;
  std::vector<int> next_;
};

// Floyd-Warshall. Throws Fault("instance not strongly connected") if some
// pair is unreachable.
DeadheadMatrix compute_deadhead_matrix(const Instance& inst);

inline double deadhead_time(const DeadheadMatrix& mat, const Arc& from, const Arc& to) {
  return mat.sp(from.head, to.tail);
}

// Arc ids realizing the shortest path between two nodes. Among parallel
// arcs the cheapest (then lowest id) is taken.
std::vector<int> path_arcs(const Instance& inst, const DeadheadMatrix& mat, int from, int to);

}  // namespace hdcarp

#endif
