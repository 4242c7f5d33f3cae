#include "hdcarp/instance.h"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace hdcarp {

using nlohmann::json;

std::vector<int> Instance::required_arcs() const {
  std::vector<int> ids;
  for (const auto& a : arcs) {
    if (a.required) {
      ids.push_back(a.id);
    }
  }
  return ids;
}

std::vector<int> Instance::class_arcs(int cls) const {
  std::vector<int> ids;
  for (const auto& a : arcs) {
    if (a.required && a.p == cls) {
      ids.push_back(a.id);
    }
  }
  return ids;
}

int Instance::num_required() const {
  int n = 0;
  for (const auto& a : arcs) {
    n += a.required ? 1 : 0;
  }
  return n;
}

namespace {

std::vector<bool> reachable(const Instance& inst, int root, bool reverse) {
  const int n = inst.num_nodes();
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : inst.arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      continue;
    }
    if (reverse) {
      adj[a.head].push_back(a.tail);
    } else {
      adj[a.tail].push_back(a.head);
    }
  }
  std::vector<bool> seen(n, false);
  std::queue<int> todo;
  seen[root] = true;
  todo.push(root);
  while (!todo.empty()) {
    const int u = todo.front();
    todo.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        todo.push(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  const int n = inst.num_nodes();

  if (n == 0) {
    out.emplace_back("instance has no nodes");
  }
  for (int i = 0; i < n; ++i) {
    const auto& node = inst.nodes[i];
    if (node.id != i) {
      out.push_back("node at position " + std::to_string(i) + " has id " + std::to_string(node.id));
    }
    if (!std::isfinite(node.x) || !std::isfinite(node.y)) {
      out.push_back("node " + std::to_string(i) + " has non-finite coordinates");
    }
  }
  if (inst.depot < 0 || inst.depot >= n) {
    out.push_back("depot " + std::to_string(inst.depot) + " is not a node");
  }
  if (inst.num_vehicles < 1) {
    out.emplace_back("num_vehicles must be >= 1");
  }
  if (!(inst.capacity > 0.0) || !std::isfinite(inst.capacity)) {
    out.emplace_back("capacity must be positive and finite");
  }
  if (inst.num_classes < 1) {
    out.emplace_back("num_classes must be >= 1");
  }

  for (int i = 0; i < inst.num_arcs(); ++i) {
    const auto& a = inst.arcs[i];
    const std::string tag = "arc " + std::to_string(i);
    if (a.id != i) {
      out.push_back(tag + " has id " + std::to_string(a.id));
    }
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      out.push_back(tag + " has an endpoint outside the node set");
    }
    if (!(a.d > 0.0) || !std::isfinite(a.d)) {
      out.push_back(tag + " traversal time must be positive");
    }
    if (a.required) {
      if (!(a.q > 0.0)) {
        out.push_back(tag + " is required but has demand <= 0");
      }
      if (!(a.s > 0.0)) {
        out.push_back(tag + " is required but has service time <= 0");
      }
      if (a.p < 1 || a.p > inst.num_classes) {
        out.push_back(tag + " has class " + std::to_string(a.p) + " outside 1.." +
                      std::to_string(inst.num_classes));
      }
    } else if (a.q != 0.0 || a.s != 0.0 || a.p != 0) {
      out.push_back(tag + " is not required but carries demand, service time or class");
    }
  }

  if (inst.arcs.empty()) {
    out.emplace_back("not strongly connected (no arcs)");
  } else if (inst.depot >= 0 && inst.depot < n) {
    const auto fwd = reachable(inst, inst.depot, false);
    const auto bwd = reachable(inst, inst.depot, true);
    for (int v = 0; v < n; ++v) {
      if (!fwd[v]) {
        out.push_back("not strongly connected: node " + std::to_string(v) +
                      " unreachable from depot");
      }
      if (!bwd[v]) {
        out.push_back("not strongly connected: depot unreachable from node " +
                      std::to_string(v));
      }
    }
  }
  return out;
}

Instance instance_from_json(const std::string& text) {
  Instance inst;
  try {
    const json j = json::parse(text);
    inst.depot = j.at("depot").get<int>();
    inst.num_vehicles = j.at("num_vehicles").get<int>();
    inst.capacity = j.at("capacity").get<double>();
    inst.num_classes = j.at("num_classes").get<int>();
    for (const auto& jn : j.at("nodes")) {
      inst.nodes.push_back({jn.at("id").get<int>(), jn.at("x").get<double>(), jn.at("y").get<double>()});
    }
    for (const auto& ja : j.at("arcs")) {
      Arc a;
      a.id = ja.at("id").get<int>();
      a.tail = ja.at("tail").get<int>();
      a.head = ja.at("head").get<int>();
      a.d = ja.at("d").get<double>();
      a.required = ja.at("required").get<bool>();
      a.q = ja.at("q").get<double>();
      a.s = ja.at("s").get<double>();
      a.p = ja.at("p").get<int>();
      inst.arcs.push_back(a);
    }
  } catch (const json::exception& e) {
    throw Fault(std::string("malformed instance JSON: ") + e.what());
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["depot"] = inst.depot;
  j["num_vehicles"] = inst.num_vehicles;
  j["capacity"] = inst.capacity;
  j["num_classes"] = inst.num_classes;
  json nodes = json::array();
  for (const auto& n : inst.nodes) {
    nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
  }
  json arcs = json::array();
  for (const auto& a : inst.arcs) {
    arcs.push_back({{"id", a.id},
                    {"tail", a.tail},
                    {"head", a.head},
                    {"d", a.d},
                    {"required", a.required},
                    {"q", a.q},
                    {"s", a.s},
                    {"p", a.p}});
  }
  j["nodes"] = std::move(nodes);
  j["arcs"] = std::move(arcs);
  return j.dump(1) + "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Fault("cannot open instance file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Fault("cannot write instance file " + path.string());
  }
  out << instance_to_json(inst);
}

}  // namespace hdcarp
