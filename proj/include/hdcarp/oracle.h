#ifndef HDCARP_ORACLE_H
#define HDCARP_ORACLE_H

#include "hdcarp/solution.h"

namespace hdcarp {

// Exhaustive search is capped at 8 required arcs and 3 vehicles.
struct OracleLimits {
  int max_arcs = 8;
  int max_vehicles = 3;
};

struct OracleResult {
  Solution solution;
  Objective objective;
};

// Lexicographic optimum over every capacity-feasible assignment of required
// arcs to vehicles and every service order valid for the variant (P: class
// nondecreasing). Ties keep the first optimum in enumeration order.
OracleResult brute_force_oracle(const Instance& inst, const DeadheadMatrix& mat, Variant variant,
                                const OracleLimits& limits = {});

}  // namespace hdcarp

#endif
