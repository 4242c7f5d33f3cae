#include "hdcarp/separation.h"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "model_names.h"

namespace hdcarp {

using detail::edge_label;
using detail::Names;

namespace {

constexpr double kSupportTol = 1e-6;

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[std::max(a, b)] = std::min(a, b);
    }
  }

private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<ConnectivityCut> separate_connectivity(const Instance& inst, const TransformedGraph& tg,
                                                   const Assignment& point) {
  const Names names{tg.variant};
  const auto get = [&](const std::string& name) {
    const auto it = point.find(name);
    return it == point.end() ? 0.0 : it->second;
  };
  const auto required = inst.required_arcs();
  const int num_edges = static_cast<int>(tg.edges.size());
  const auto n = static_cast<std::size_t>(tg.dummy_node) + 1;

  std::vector<ConnectivityCut> cuts;
  for (int m = 0; m < inst.num_vehicles; ++m) {
    for (int h = 1; h <= inst.num_classes; ++h) {
      std::vector<double> yv(static_cast<std::size_t>(num_edges));
      std::vector<double> xv(inst.arcs.size(), 0.0);
      DisjointSets sets(n);
      for (int e = 0; e < num_edges; ++e) {
        yv[e] = get(names.y(m, h, edge_label(tg, e)));
        if (yv[e] > kSupportTol) {
          sets.unite(tg.edges[e].tail, tg.edges[e].head);
        }
      }
      for (int a : required) {
        if (names.has_x(inst.arcs[a], h)) {
          xv[a] = get(names.x(m, h, a));
          if (xv[a] > kSupportTol) {
            sets.unite(inst.arcs[a].tail, inst.arcs[a].head);
          }
        }
      }
      const int depot_root = sets.find(inst.depot);
      std::vector<std::vector<int>> components(n);
      for (int v = 0; v < tg.num_base_nodes; ++v) {
        components[sets.find(v)].push_back(v);
      }
      for (std::size_t root = 0; root < n; ++root) {
        const auto& nodes = components[root];
        if (nodes.empty() || static_cast<int>(root) == depot_root) {
          continue;
        }
        std::vector<char> inside(n, 0);
        for (int v : nodes) {
          inside[v] = 1;
        }
        // Most serviced arc inside the component.
        int best = -1;
        for (int a : required) {
          const Arc& arc = inst.arcs[a];
          if (xv[a] > kSupportTol && inside[arc.tail] && inside[arc.head] &&
              (best < 0 || xv[a] > xv[best])) {
            best = a;
          }
        }
        if (best < 0) {
          continue;
        }
        double lhs = 0.0;
        for (int e = 0; e < num_edges; ++e) {
          const auto& edge = tg.edges[e];
          if (inside[edge.tail] && !inside[edge.head]) {
            lhs += yv[e];
            if (e < tg.num_base_arcs()) {
              lhs += xv[e];
            }
          }
        }
        if (lhs < xv[best] - kSupportTol) {
          cuts.push_back({nodes, h, m, best, xv[best] - lhs});
        }
      }
    }
  }
  return cuts;
}

std::string cut_to_json_line(const ConnectivityCut& cut) {
  nlohmann::ordered_json j;
  j["component"] = cut.component;
  j["class"] = cut.level;
  j["vehicle"] = cut.vehicle;
  return j.dump();
}

ConnectivityCut cut_from_json_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    ConnectivityCut cut;
    cut.component = j.at("component").get<std::vector<int>>();
    cut.level = j.at("class").get<int>();
    cut.vehicle = j.at("vehicle").get<int>();
    return cut;
  } catch (const nlohmann::json::exception& e) {
    throw Fault(std::string("malformed cut line: ") + e.what());
  }
}

}  // namespace hdcarp
