#ifndef HDCARP_SEPARATION_H
#define HDCARP_SEPARATION_H

#include <string>
#include <vector>

#include "hdcarp/milp.h"

namespace hdcarp {

struct ConnectivityCut {
  std::vector<int> component;  // base node ids, sorted
  int level = 0;               // class (P) or hierarchy level (U)
  int vehicle = 0;
  int arc = 0;                 // serviced arc b inside the component
  double violation = 0.0;      // x_b minus the cut's left-hand side
};

// Connected-component heuristic: for every vehicle and segment, components
// of the support graph (values > 1e-6) that avoid the depot and hold a
// serviced arc are checked against the connectivity inequality; one cut is
// returned per violated component.
std::vector<ConnectivityCut> separate_connectivity(const Instance& inst, const TransformedGraph& tg,
                                                   const Assignment& point);

// {"component":[...],"class":k,"vehicle":m}
std::string cut_to_json_line(const ConnectivityCut& cut);
ConnectivityCut cut_from_json_line(const std::string& line);

}  // namespace hdcarp

#endif
