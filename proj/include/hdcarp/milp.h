#ifndef HDCARP_MILP_H
#define HDCARP_MILP_H

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdcarp/solution.h"

namespace hdcarp {

// Auxiliary multigraph: the base graph plus a dummy node marking class (P)
// or hierarchy-level (U) transitions. Arc indices: [0, |A|) are the base
// arcs, then one "from" arc (dummy -> v) and one "to" arc (v -> dummy) per
// anchor node v, with zero traversal time.
struct TransformedGraph {
  struct Edge {
    int tail = 0;
    int head = 0;
    double d = 0.0;
  };

  Variant variant = Variant::P;
  int num_base_nodes = 0;
  int dummy_node = 0;                        // == num_base_nodes
  std::vector<int> anchors;                  // sorted: every required-arc tail plus the depot
  std::vector<std::vector<int>> class_tails; // [k-1] = sorted tails of class-k arcs
  std::vector<Edge> edges;                   // all arcs of the auxiliary graph

  int num_base_arcs() const { return static_cast<int>(edges.size()) - 2 * static_cast<int>(anchors.size()); }
  int from_arc(int v) const;  // dummy -> v
  int to_arc(int v) const;    // v -> dummy
  bool is_anchor(int v) const;
};

TransformedGraph transform_graph(const Instance& inst, Variant variant);

enum class VarKind { binary, integer, continuous };
enum class Sense { le, ge, eq };
enum class SubtourMode { enumerate, deferred };

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lb = 0.0;
  double ub = 0.0;  // +inf when unbounded
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

struct MilpModel {
  Variant variant = Variant::P;
  std::vector<Variable> variables;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<Term>> objective_stages;  // stage k minimizes T_k
  std::vector<Constraint> constraints;
  double big_n = 0.0;

  int add_variable(std::string name, VarKind kind, double lb, double ub);
  int var(const std::string& name) const;
  std::size_t count_prefix(std::string_view prefix) const;  // variables whose name starts with prefix
  std::size_t count_constraints(std::string_view prefix) const;
};

// Upper bound on any route completion time reachable by shortest-path
// deadheading: sum_a (s_a + d_a) + (|V| + |A_r| + p) * max_sp.
double completion_bound(const Instance& inst, const DeadheadMatrix& mat);

// Precedence-constrained formulation. enumerate mode lists every
// connectivity cut (|V| <= 10); deferred mode leaves them to separation.
MilpModel emit_milp_p(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                      SubtourMode mode);
// Flexible-order formulation indexed by hierarchy level.
MilpModel emit_milp_u(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                      SubtourMode mode);
MilpModel emit_milp(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                    SubtourMode mode);

// Connectivity cut for vehicle m, class/level k, node set S (base nodes,
// depot excluded) and serviced arc b inside S.
Constraint connectivity_constraint(const MilpModel& model, const Instance& inst,
                                   const TransformedGraph& tg, int m, int k,
                                   std::span<const int> nodes, int b);

// LP-format text of lexicographic stage `stage` (1-based). `fixed` holds the
// optimal T_1..T_{stage-1} of earlier stages; each adds T_j <= fixed_j + 1e-6.
std::string write_lp(const MilpModel& model, int stage, std::span<const double> fixed = {});

using Assignment = std::map<std::string, double>;

// Names of violated constraints (tolerance 1e-6), plus "bound:<var>" and
// "integrality:<var>" entries. Throws Fault when a variable is missing.
std::vector<std::string> check_model(const MilpModel& model, const Assignment& values);

// Variable assignment realizing a feasible solution: vehicles deadhead on
// shortest paths, and each class segment (P) or hierarchy level (U) is
// closed through the dummy node at an anchor.
Assignment encode_solution(const Instance& inst, const DeadheadMatrix& mat,
                           const TransformedGraph& tg, const Solution& sol);

// Routes read back from an integral assignment by walking each segment's
// Euler circuit from the dummy node. Throws Fault if a segment's support
// is not connected to the dummy node.
Solution decode_assignment(const Instance& inst, const TransformedGraph& tg,
                           const Assignment& values);

// Parses "name value" lines (Gurobi .sol) and "index name value ..." lines
// (CBC). Comment and header lines are skipped.
Assignment parse_solution_values(const std::string& text);

// Writes `<stem>.<variant>.stage<k>.lp` for every stage and returns the
// paths. Stages after the first carry fixing constraints only for the
// values supplied in `fixed`.
std::vector<std::filesystem::path> write_stage_files(const MilpModel& model,
                                                     const std::filesystem::path& dir,
                                                     const std::string& stem,
                                                     std::span<const double> fixed = {});

// Solves the stages in order with an external command. `command` may use
// {lp} and {sol} placeholders; the solver must write a solution file
// readable by parse_solution_values. Returns the last stage's values.
Assignment solve_external(const MilpModel& model, const std::string& command,
                          const std::filesystem::path& dir, const std::string& stem);

}  // namespace hdcarp

#endif
