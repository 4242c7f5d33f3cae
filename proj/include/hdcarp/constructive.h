#ifndef HDCARP_CONSTRUCTIVE_H
#define HDCARP_CONSTRUCTIVE_H

#include <span>
#include <vector>

#include "hdcarp/solution.h"

namespace hdcarp {

struct InsertionCandidate {
  int vehicle = 0;
  double cost = 0.0;  // class completion time of the route after insertion
};

// softmax(-cost) over the candidates, stabilized by subtracting max(-cost).
std::vector<double> softmax_probabilities(std::span<const InsertionCandidate> candidates);

// Draws a vehicle with the softmax(-cost) distribution.
int softmax_select(std::span<const InsertionCandidate> candidates, Rng& rng);

enum class InsertionMode {
  append,         // arc goes to the end of the candidate route
  best_position,  // best variant-feasible position within the candidate route
};

struct ConstructOptions {
  InsertionMode mode = InsertionMode::append;
};

// Greedy randomized construction: classes in priority order, arcs of a class
// in ascending id order, each arc placed on a capacity-feasible vehicle
// drawn by softmax over the resulting class completion times. Throws
// Fault("construction failed: capacity") when an arc fits nowhere.
Solution construct(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
                   const ConstructOptions& options = {});

}  // namespace hdcarp

#endif
