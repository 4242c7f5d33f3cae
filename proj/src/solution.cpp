#include "hdcarp/solution.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hdcarp {

using nlohmann::json;

std::vector<std::string> check_feasible(const Instance& inst, const Solution& sol, Variant variant) {
  std::vector<std::string> out;
  for (const auto& route : sol.routes) {
    for (int id : route) {
      if (id < 0 || id >= inst.num_arcs()) {
        throw Fault("solution references unknown arc " + std::to_string(id));
      }
      if (!inst.arcs[id].required) {
        throw Fault("solution services non-required arc " + std::to_string(id));
      }
    }
  }

  if (static_cast<int>(sol.routes.size()) != inst.num_vehicles) {
    out.push_back("route count " + std::to_string(sol.routes.size()) + " differs from fleet size " +
                  std::to_string(inst.num_vehicles));
  }

  std::vector<int> seen(inst.arcs.size(), 0);
  for (std::size_t m = 0; m < sol.routes.size(); ++m) {
    const auto& route = sol.routes[m];
    for (int id : route) {
      ++seen[id];
    }
    const double load = route_load(inst, route);
    if (load > inst.capacity + kTimeTol) {
      out.push_back("capacity exceeded on route " + std::to_string(m));
    }
    if (variant == Variant::P) {
      for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        if (inst.arcs[route[i]].p > inst.arcs[route[i + 1]].p) {
          out.push_back("class order violated on route " + std::to_string(m) + " at position " +
                        std::to_string(i));
          break;
        }
      }
    }
  }
  for (const auto& a : inst.arcs) {
    if (!a.required) {
      continue;
    }
    if (seen[a.id] == 0) {
      out.push_back("required arc " + std::to_string(a.id) + " not serviced");
    } else if (seen[a.id] > 1) {
      out.push_back("required arc " + std::to_string(a.id) + " serviced " +
                    std::to_string(seen[a.id]) + " times");
    }
  }
  return out;
}

std::weak_ordering lex_compare(const Objective& a, const Objective& b) {
  if (a.size() != b.size()) {
    throw Fault("lex_compare: objective length mismatch");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > kTimeTol) {
      return a[k] < b[k] ? std::weak_ordering::less : std::weak_ordering::greater;
    }
  }
  return std::weak_ordering::equivalent;
}

void route_completion(const Instance& inst, const DeadheadMatrix& mat, std::span<const int> route,
                      std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  double clock = 0.0;
  int pos = inst.depot;
  for (int id : route) {
    const Arc& a = inst.arcs[id];
    clock += mat.sp(pos, a.tail) + a.s;
    pos = a.head;
    out[a.p - 1] = clock;
  }
}

std::vector<double> route_completion(const Instance& inst, const DeadheadMatrix& mat,
                                     std::span<const int> route) {
  std::vector<double> out(inst.num_classes);
  route_completion(inst, mat, route, out);
  return out;
}

double route_load(const Instance& inst, std::span<const int> route) {
  double load = 0.0;
  for (int id : route) {
    load += inst.arcs[id].q;
  }
  return load;
}

Objective evaluate_unchecked(const Instance& inst, const DeadheadMatrix& mat, const Solution& sol) {
  Objective obj{std::vector<double>(inst.num_classes, 0.0)};
  std::vector<double> buf(inst.num_classes);
  for (const auto& route : sol.routes) {
    route_completion(inst, mat, route, buf);
    for (int k = 0; k < inst.num_classes; ++k) {
      obj.t[k] = std::max(obj.t[k], buf[k]);
    }
  }
  return obj;
}

Objective evaluate(const Instance& inst, const DeadheadMatrix& mat, const Solution& sol,
                   Variant variant) {
  const auto violations = check_feasible(inst, sol, variant);
  if (!violations.empty()) {
    throw Fault("cannot evaluate infeasible solution: " + violations.front());
  }
  return evaluate_unchecked(inst, mat, sol);
}

std::string solution_to_json(const Solution& sol, Variant variant) {
  json j;
  j["variant"] = std::string(to_string(variant));
  json routes = json::array();
  for (const auto& r : sol.routes) {
    routes.push_back(r);
  }
  j["routes"] = std::move(routes);
  return j.dump() + "\n";
}

std::pair<Solution, Variant> solution_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Solution sol;
    for (const auto& r : j.at("routes")) {
      sol.routes.push_back(r.get<Route>());
    }
    return {std::move(sol), parse_variant(j.at("variant").get<std::string>())};
  } catch (const json::exception& e) {
    throw Fault(std::string("malformed solution JSON: ") + e.what());
  }
}

std::pair<Solution, Variant> load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Fault("cannot open solution file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return solution_from_json(ss.str());
}

void save_solution(const Solution& sol, Variant variant, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Fault("cannot write solution file " + path.string());
  }
  out << solution_to_json(sol, variant);
}

std::string objective_to_string(const Objective& obj) {
  std::string s = "(";
  char buf[32];
  for (std::size_t k = 0; k < obj.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6f", obj[k]);
    s += (k ? ", " : "");
    s += buf;
  }
  return s + ")";
}

}  // namespace hdcarp
