#ifndef HDCARP_SOLUTION_H
#define HDCARP_SOLUTION_H

#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hdcarp/deadhead.h"
#include "hdcarp/instance.h"

namespace hdcarp {

// Ordered required-arc ids serviced by one vehicle. The depot bracketing
// is implicit.
using Route = std::vector<int>;

struct Solution {
  std::vector<Route> routes;  // one per vehicle, in vehicle order

  bool operator==(const Solution&) const = default;
};

// Class completion times T_1..T_p.
struct Objective {
  std::vector<double> t;

  std::size_t size() const { return t.size(); }
  double operator[](std::size_t k) const { return t[k]; }
  bool operator==(const Objective&) const = default;
};

std::vector<std::string> check_feasible(const Instance& inst, const Solution& sol, Variant variant);

// Lexicographic order with kTimeTol per entry.
std::weak_ordering lex_compare(const Objective& a, const Objective& b);
inline bool lex_less(const Objective& a, const Objective& b) { return lex_compare(a, b) < 0; }

// Per-class completion times of a single route, written to `out` (size p).
// Entry k-1 is the clock when the route finishes its last class-k arc, or 0
// when the route services no class-k arc. Return travel is not counted.
void route_completion(const Instance& inst, const DeadheadMatrix& mat, std::span<const int> route,
                      std::span<double> out);
std::vector<double> route_completion(const Instance& inst, const DeadheadMatrix& mat,
                                     std::span<const int> route);

double route_load(const Instance& inst, std::span<const int> route);

// Hierarchical objective of a feasible solution. Throws Fault when the
// solution is infeasible for the variant.
Objective evaluate(const Instance& inst, const DeadheadMatrix& mat, const Solution& sol,
                   Variant variant);
// Same simulation without the feasibility check.
Objective evaluate_unchecked(const Instance& inst, const DeadheadMatrix& mat, const Solution& sol);

std::string solution_to_json(const Solution& sol, Variant variant);
// Returns the solution and the variant tag stored in the file.
std::pair<Solution, Variant> solution_from_json(const std::string& text);
std::pair<Solution, Variant> load_solution(const std::filesystem::path& path);
void save_solution(const Solution& sol, Variant variant, const std::filesystem::path& path);

std::string objective_to_string(const Objective& obj);

}  // namespace hdcarp

#endif
