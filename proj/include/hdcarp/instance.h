#ifndef HDCARP_INSTANCE_H
#define HDCARP_INSTANCE_H

#include <filesystem>
#include <string>
#include <vector>

#include "hdcarp/common.h"

namespace hdcarp {

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct Arc {
  int id = 0;
  int tail = 0;
  int head = 0;
  double d = 0.0;  // traversal time
  bool required = false;
  double q = 0.0;  // demand
  double s = 0.0;  // service time
  int p = 0;       // priority class, 0 iff not required
};

struct Instance {
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  int depot = 0;
  int num_vehicles = 1;
  double capacity = 0.0;
  int num_classes = 1;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }

  // Required arc ids in ascending order.
  std::vector<int> required_arcs() const;
  // Required arc ids of one class (1-based), ascending.
  std::vector<int> class_arcs(int cls) const;
  int num_required() const;
};

// Empty iff every structural invariant holds and the graph is strongly
// connected. Violations are human readable one-liners.
std::vector<std::string> validate_instance(const Instance& inst);

Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace hdcarp

#endif
