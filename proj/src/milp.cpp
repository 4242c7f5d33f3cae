#include "hdcarp/milp.h"

#include "model_names.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hdcarp {

using detail::edge_label;
using detail::Names;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kModelTol = 1e-6;

std::string fmt_num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class TermBuilder {
public:
  void add(int var, double coef) { acc_[var] += coef; }
  std::vector<Term> build() const {
    std::vector<Term> out;
    for (const auto& [v, c] : acc_) {
      if (c != 0.0) {
        out.push_back({v, c});
      }
    }
    return out;
  }

private:
  std::map<int, double> acc_;
};

void push(MilpModel& model, std::string name, const TermBuilder& tb, Sense sense, double rhs) {
  auto terms = tb.build();
  if (terms.empty()) {
    return;
  }
  model.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
}

std::string node_list_name(std::span<const int> nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += (i ? "." : "") + std::to_string(nodes[i]);
  }
  if (s.size() > 160) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
      h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    }
    s = s.substr(0, 120) + "_h" + std::to_string(h);
  }
  return s;
}

}  // namespace

int TransformedGraph::from_arc(int v) const {
  const auto it = std::lower_bound(anchors.begin(), anchors.end(), v);
  if (it == anchors.end() || *it != v) {
    throw Fault("node " + std::to_string(v) + " has no dummy arcs");
  }
  return num_base_arcs() + static_cast<int>(it - anchors.begin());
}

int TransformedGraph::to_arc(int v) const {
  return from_arc(v) + static_cast<int>(anchors.size());
}

bool TransformedGraph::is_anchor(int v) const {
  return std::binary_search(anchors.begin(), anchors.end(), v);
}

TransformedGraph transform_graph(const Instance& inst, Variant variant) {
  TransformedGraph tg;
  tg.variant = variant;
  tg.num_base_nodes = inst.num_nodes();
  tg.dummy_node = inst.num_nodes();
  tg.class_tails.resize(static_cast<std::size_t>(inst.num_classes));
  std::set<int> anchors{inst.depot};
  for (const auto& a : inst.arcs) {
    if (a.required) {
      anchors.insert(a.tail);
      tg.class_tails[a.p - 1].push_back(a.tail);
    }
  }
  for (auto& tails : tg.class_tails) {
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  }
  tg.anchors.assign(anchors.begin(), anchors.end());
  for (const auto& a : inst.arcs) {
    tg.edges.push_back({a.tail, a.head, a.d});
  }
  for (int v : tg.anchors) {
    tg.edges.push_back({tg.dummy_node, v, 0.0});
  }
  for (int v : tg.anchors) {
    tg.edges.push_back({v, tg.dummy_node, 0.0});
  }
  return tg;
}

int MilpModel::add_variable(std::string name, VarKind kind, double lb, double ub) {
  const int id = static_cast<int>(variables.size());
  if (!index.emplace(name, id).second) {
    throw Fault("duplicate variable " + name);
  }
  variables.push_back({std::move(name), kind, lb, ub});
  return id;
}

int MilpModel::var(const std::string& name) const {
  const auto it = index.find(name);
  if (it == index.end()) {
    throw Fault("model has no variable " + name);
  }
  return it->second;
}

std::size_t MilpModel::count_prefix(std::string_view prefix) const {
  return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(), [&](const Variable& v) {
    return std::string_view(v.name).starts_with(prefix);
  }));
}

std::size_t MilpModel::count_constraints(std::string_view prefix) const {
  return static_cast<std::size_t>(std::count_if(constraints.begin(), constraints.end(), [&](const Constraint& c) {
    return std::string_view(c.name).starts_with(prefix);
  }));
}

double completion_bound(const Instance& inst, const DeadheadMatrix& mat) {
  double total = 0.0;
  for (const auto& a : inst.arcs) {
    total += a.s + a.d;
  }
  const double hops = inst.num_nodes() + inst.num_required() + inst.num_classes;
  return total + hops * mat.max_sp();
}

Constraint connectivity_constraint(const MilpModel& model, const Instance& inst,
                                   const TransformedGraph& tg, int m, int k,
                                   std::span<const int> nodes, int b) {
  const Names names{model.variant};
  std::vector<char> inside(static_cast<std::size_t>(tg.dummy_node) + 1, 0);
  for (int v : nodes) {
    inside[v] = 1;
  }
  TermBuilder tb;
  for (int e = 0; e < static_cast<int>(tg.edges.size()); ++e) {
    const auto& edge = tg.edges[e];
    if (inside[edge.tail] && !inside[edge.head]) {
      tb.add(model.var(names.y(m, k, edge_label(tg, e))), 1.0);
      if (e < tg.num_base_arcs() && inst.arcs[e].required && names.has_x(inst.arcs[e], k)) {
        tb.add(model.var(names.x(m, k, e)), 1.0);
      }
    }
  }
  tb.add(model.var(names.x(m, k, b)), -1.0);
  std::string name = "connect_m" + std::to_string(m) + "_k" + std::to_string(k) + "_b" +
                     std::to_string(b) + "_s" + node_list_name(nodes);
  return {std::move(name), tb.build(), Sense::ge, 0.0};
}

namespace {

MilpModel emit_model(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                     SubtourMode mode, Variant variant) {
  if (mode == SubtourMode::enumerate && inst.num_nodes() > 10) {
    throw Fault("enumerate mode supports at most 10 nodes");
  }
  const Names names{variant};
  const int nm = inst.num_vehicles;
  const int np = inst.num_classes;
  const int ne = static_cast<int>(tg.edges.size());
  const auto required = inst.required_arcs();

  MilpModel model;
  model.variant = variant;
  model.big_n = completion_bound(inst, mat);
  const double big_n = model.big_n;

  // x[m][h][a], -1 where absent
  std::vector<std::vector<std::vector<int>>> x(nm, std::vector<std::vector<int>>(np + 1, std::vector<int>(inst.arcs.size(), -1)));
  std::vector<std::vector<std::vector<int>>> y(nm, std::vector<std::vector<int>>(np + 1, std::vector<int>(ne, -1)));
  std::vector<std::vector<int>> t(nm, std::vector<int>(np + 1, -1));
  std::vector<std::vector<std::vector<int>>> r(nm, std::vector<std::vector<int>>(np + 1, std::vector<int>(np + 1, -1)));
  std::vector<int> T(np + 1, -1);

  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      for (int a : required) {
        if (names.has_x(inst.arcs[a], h)) {
          x[m][h][a] = model.add_variable(names.x(m, h, a), VarKind::binary, 0.0, 1.0);
        }
      }
    }
  }
  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      for (int e = 0; e < ne; ++e) {
        y[m][h][e] = model.add_variable(names.y(m, h, edge_label(tg, e)), VarKind::integer, 0.0, kInf);
      }
    }
  }
  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      t[m][h] = model.add_variable(names.t(m, h), VarKind::continuous, 0.0, kInf);
    }
  }
  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      for (int k = 1; k <= np; ++k) {
        if (names.has_r(k, h)) {
          r[m][k][h] = model.add_variable(names.r(m, k, h), VarKind::binary, 0.0, 1.0);
        }
      }
    }
  }
  for (int k = 1; k <= np; ++k) {
    T[k] = model.add_variable(names.T(k), VarKind::continuous, 0.0, kInf);
    model.objective_stages.push_back({{T[k], 1.0}});
  }

  const auto tag = [](int m, int h) { return "_m" + std::to_string(m) + "_h" + std::to_string(h); };

  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      // T_k >= t_h - N (1 - r_kh)
      for (int k = 1; k <= np; ++k) {
        if (r[m][k][h] < 0) {
          continue;
        }
        TermBuilder tb;
        tb.add(T[k], 1.0);
        tb.add(t[m][h], -1.0);
        tb.add(r[m][k][h], -big_n);
        push(model, "bound" + tag(m, h) + "_k" + std::to_string(k), tb, Sense::ge, -big_n);
      }
      // t_h = t_{h-1} + service + deadheading
      {
        TermBuilder tb;
        tb.add(t[m][h], 1.0);
        if (h > 1) {
          tb.add(t[m][h - 1], -1.0);
        }
        for (int a : required) {
          if (x[m][h][a] >= 0) {
            tb.add(x[m][h][a], -inst.arcs[a].s);
          }
        }
        for (int e = 0; e < tg.num_base_arcs(); ++e) {
          tb.add(y[m][h][e], -tg.edges[e].d);
        }
        push(model, "time" + tag(m, h), tb, Sense::eq, 0.0);
      }
      // arcs of class k in this segment only if r_kh
      for (int k = 1; k <= np; ++k) {
        if (r[m][k][h] < 0) {
          continue;
        }
        const auto cls = inst.class_arcs(k);
        TermBuilder tb;
        for (int a : cls) {
          if (x[m][h][a] >= 0) {
            tb.add(x[m][h][a], 1.0);
          }
        }
        tb.add(r[m][k][h], -static_cast<double>(cls.size()));
        push(model, "use" + tag(m, h) + "_k" + std::to_string(k), tb, Sense::le, 0.0);
      }
    }

    {
      TermBuilder tb;
      tb.add(y[m][1][tg.from_arc(inst.depot)], 1.0);
      push(model, "start_depot_m" + std::to_string(m), tb, Sense::eq, 1.0);
    }
    for (int h = 1; h <= np; ++h) {
      TermBuilder tb;
      for (int v : tg.anchors) {
        tb.add(y[m][h][tg.from_arc(v)], 1.0);
      }
      push(model, "start" + tag(m, h), tb, Sense::eq, 1.0);
    }
    for (int h = 2; h <= np; ++h) {
      std::set<int> linked{inst.depot};
      if (variant == Variant::P) {
        for (int k = 1; k < h; ++k) {
          linked.insert(tg.class_tails[k - 1].begin(), tg.class_tails[k - 1].end());
        }
      } else {
        linked.insert(tg.anchors.begin(), tg.anchors.end());
      }
      for (int v : linked) {
        TermBuilder tb;
        tb.add(y[m][h][tg.from_arc(v)], 1.0);
        tb.add(y[m][h - 1][tg.to_arc(v)], -1.0);
        push(model, "link" + tag(m, h) + "_v" + std::to_string(v), tb, Sense::eq, 0.0);
      }
    }
  }

  for (int a : required) {
    TermBuilder tb;
    for (int m = 0; m < nm; ++m) {
      for (int h = 1; h <= np; ++h) {
        if (x[m][h][a] >= 0) {
          tb.add(x[m][h][a], 1.0);
        }
      }
    }
    push(model, "cover_a" + std::to_string(a), tb, Sense::eq, 1.0);
  }

  for (int m = 0; m < nm; ++m) {
    TermBuilder tb;
    for (int h = 1; h <= np; ++h) {
      for (int a : required) {
        if (x[m][h][a] >= 0) {
          tb.add(x[m][h][a], inst.arcs[a].q);
        }
      }
    }
    push(model, "capacity_m" + std::to_string(m), tb, Sense::le, inst.capacity);
  }

  for (int m = 0; m < nm; ++m) {
    for (int h = 1; h <= np; ++h) {
      for (int v = 0; v <= tg.dummy_node; ++v) {
        TermBuilder tb;
        for (int e = 0; e < ne; ++e) {
          const auto& edge = tg.edges[e];
          const bool serviced = e < tg.num_base_arcs() && x[m][h][e] >= 0;
          if (edge.tail == v) {
            tb.add(y[m][h][e], 1.0);
            if (serviced) {
              tb.add(x[m][h][e], 1.0);
            }
          }
          if (edge.head == v) {
            tb.add(y[m][h][e], -1.0);
            if (serviced) {
              tb.add(x[m][h][e], -1.0);
            }
          }
        }
        push(model, "flow" + tag(m, h) + "_v" + std::to_string(v), tb, Sense::eq, 0.0);
      }
    }
  }

  if (mode == SubtourMode::enumerate) {
    std::vector<int> candidates;
    for (int v = 0; v < inst.num_nodes(); ++v) {
      if (v != inst.depot) {
        candidates.push_back(v);
      }
    }
    const std::uint32_t subsets = 1u << candidates.size();
    std::vector<int> nodes;
    std::vector<char> inside(static_cast<std::size_t>(inst.num_nodes()), 0);
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      nodes.clear();
      std::fill(inside.begin(), inside.end(), 0);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (mask & (1u << i)) {
          nodes.push_back(candidates[i]);
          inside[candidates[i]] = 1;
        }
      }
      for (int m = 0; m < nm; ++m) {
        for (int h = 1; h <= np; ++h) {
          for (int b : required) {
            const Arc& arc = inst.arcs[b];
            if (x[m][h][b] >= 0 && inside[arc.tail] && inside[arc.head]) {
              model.constraints.push_back(connectivity_constraint(model, inst, tg, m, h, nodes, b));
            }
          }
        }
      }
    }
  }
  return model;
}

}  // namespace

MilpModel emit_milp_p(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                      SubtourMode mode) {
  return emit_model(inst, mat, tg, mode, Variant::P);
}

MilpModel emit_milp_u(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                      SubtourMode mode) {
  return emit_model(inst, mat, tg, mode, Variant::U);
}

MilpModel emit_milp(const Instance& inst, const DeadheadMatrix& mat, const TransformedGraph& tg,
                    SubtourMode mode) {
  return tg.variant == Variant::P ? emit_milp_p(inst, mat, tg, mode) : emit_milp_u(inst, mat, tg, mode);
}

namespace {

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<Term>& terms) {
  std::size_t col = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& term = terms[i];
    std::string piece = (term.coef < 0 ? " - " : (i ? " + " : " "));
    const double mag = std::abs(term.coef);
    if (mag != 1.0) {
      piece += fmt_num(mag) + " ";
    }
    piece += model.variables[term.var].name;
    if (col + piece.size() > 200) {
      out << "\n  ";
      col = 2;
    }
    out << piece;
    col += piece.size();
  }
}

const char* sense_str(Sense s) {
  switch (s) {
    case Sense::le:
      return "<=";
    case Sense::ge:
      return ">=";
    case Sense::eq:
      return "=";
  }
  return "=";
}

}  // namespace

std::string write_lp(const MilpModel& model, int stage, std::span<const double> fixed) {
  const int np = static_cast<int>(model.objective_stages.size());
  if (stage < 1 || stage > np) {
    throw Fault("stage " + std::to_string(stage) + " outside 1.." + std::to_string(np));
  }
  std::ostringstream out;
  out << "\\ HDCARP-" << to_string(model.variant) << " lexicographic stage " << stage << " of " << np
      << "\n";
  if (stage > 1 && fixed.size() + 1 < static_cast<std::size_t>(stage)) {
    out << "\\ stage values for T_" << fixed.size() + 1 << "..T_" << stage - 1
        << " not supplied; their fixing constraints are omitted\n";
  }
  out << "Minimize\n obj:";
  write_terms(out, model, model.objective_stages[stage - 1]);
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << " " << c.name << ":";
    write_terms(out, model, c.terms);
    out << " " << sense_str(c.sense) << " " << fmt_num(c.rhs) << "\n";
  }
  for (int j = 1; j < stage && static_cast<std::size_t>(j) <= fixed.size(); ++j) {
    out << " stage_fix_T_" << j << ": T_" << j << " <= " << fmt_num(fixed[j - 1] + 1e-6) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::binary) {
      continue;
    }
    if (v.lb == 0.0 && v.ub == kInf) {
      continue;
    }
    out << " " << fmt_num(v.lb) << " <= " << v.name << " <= "
        << (v.ub == kInf ? std::string("+inf") : fmt_num(v.ub)) << "\n";
  }
  out << "General\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::integer) {
      out << " " << v.name << "\n";
    }
  }
  out << "Binary\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::binary) {
      out << " " << v.name << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

std::vector<std::string> check_model(const MilpModel& model, const Assignment& values) {
  std::vector<double> val(model.variables.size());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    const auto& v = model.variables[i];
    const auto it = values.find(v.name);
    if (it == values.end()) {
      throw Fault("assignment misses variable " + v.name);
    }
    val[i] = it->second;
    if (val[i] < v.lb - kModelTol || val[i] > v.ub + kModelTol) {
      out.push_back("bound:" + v.name);
    }
    if (v.kind != VarKind::continuous && std::abs(val[i] - std::round(val[i])) > kModelTol) {
      out.push_back("integrality:" + v.name);
    }
  }
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& term : c.terms) {
      lhs += term.coef * val[term.var];
    }
    const bool ok = c.sense == Sense::le   ? lhs <= c.rhs + kModelTol
                    : c.sense == Sense::ge ? lhs >= c.rhs - kModelTol
                                           : std::abs(lhs - c.rhs) <= kModelTol;
    if (!ok) {
      out.push_back(c.name);
    }
  }
  return out;
}

namespace {

// Route positions of each segment: class blocks for P, hierarchy levels for U.
std::vector<std::vector<int>> split_segments(const Instance& inst, const Route& route, Variant variant) {
  std::vector<std::vector<int>> seg(static_cast<std::size_t>(inst.num_classes));
  if (variant == Variant::P) {
    for (int id : route) {
      seg[inst.arcs[id].p - 1].push_back(id);
    }
    return seg;
  }
  std::vector<std::size_t> last(seg.size(), 0);
  for (std::size_t i = 0; i < route.size(); ++i) {
    last[inst.arcs[route[i]].p - 1] = i + 1;
  }
  std::size_t begin = 0;
  for (std::size_t h = 0; h < seg.size(); ++h) {
    const std::size_t end = std::max(begin, last[h]);
    seg[h].assign(route.begin() + static_cast<std::ptrdiff_t>(begin),
                  route.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return seg;
}

}  // namespace

Assignment encode_solution(const Instance& inst, const DeadheadMatrix& mat,
                           const TransformedGraph& tg, const Solution& sol) {
  const Variant variant = tg.variant;
  const Names names{variant};
  const int np = inst.num_classes;
  Assignment values;
  // Every variable of the formulation starts at zero.
  for (int m = 0; m < inst.num_vehicles; ++m) {
    for (int h = 1; h <= np; ++h) {
      for (int a : inst.required_arcs()) {
        if (names.has_x(inst.arcs[a], h)) {
          values[names.x(m, h, a)] = 0.0;
        }
      }
      for (int e = 0; e < static_cast<int>(tg.edges.size()); ++e) {
        values[names.y(m, h, edge_label(tg, e))] = 0.0;
      }
      values[names.t(m, h)] = 0.0;
      for (int k = 1; k <= np; ++k) {
        if (names.has_r(k, h)) {
          values[names.r(m, k, h)] = 0.0;
        }
      }
    }
  }
  std::vector<double> big_t(static_cast<std::size_t>(np) + 1, 0.0);
  const auto bump = [&](const std::string& name, double by) {
    auto it = values.find(name);
    if (it == values.end()) {
      throw Fault("encoding produced unknown variable " + name);
    }
    it->second += by;
  };

  for (int m = 0; m < static_cast<int>(sol.routes.size()); ++m) {
    const Route& route = sol.routes[m];
    const auto segments = split_segments(inst, route, variant);
    int cur = inst.depot;
    double clock = 0.0;
    std::size_t served = 0;
    for (int h = 1; h <= np; ++h) {
      const auto& seg = segments[h - 1];
      bump(names.y(m, h, edge_label(tg, tg.from_arc(cur))), 1.0);
      std::vector<char> classes(static_cast<std::size_t>(np) + 1, 0);
      for (int id : seg) {
        const Arc& a = inst.arcs[id];
        for (int e : path_arcs(inst, mat, cur, a.tail)) {
          bump(names.y(m, h, edge_label(tg, e)), 1.0);
        }
        clock += mat.sp(cur, a.tail) + a.s;
        bump(names.x(m, h, id), 1.0);
        cur = a.head;
        classes[a.p] = 1;
        ++served;
      }
      if (!tg.is_anchor(cur)) {
        const int target = served < route.size() ? inst.arcs[route[served]].tail : inst.depot;
        for (int e : path_arcs(inst, mat, cur, target)) {
          bump(names.y(m, h, edge_label(tg, e)), 1.0);
        }
        clock += mat.sp(cur, target);
        cur = target;
      }
      bump(names.y(m, h, edge_label(tg, tg.to_arc(cur))), 1.0);
      values[names.t(m, h)] = clock;
      for (int k = 1; k <= np; ++k) {
        if (classes[k] && names.has_r(k, h)) {
          values[names.r(m, k, h)] = 1.0;
          big_t[k] = std::max(big_t[k], clock);
        }
      }
    }
  }
  for (int k = 1; k <= np; ++k) {
    values[names.T(k)] = big_t[k];
  }
  return values;
}

Solution decode_assignment(const Instance& inst, const TransformedGraph& tg, const Assignment& values) {
  const Names names{tg.variant};
  const auto get = [&](const std::string& name) {
    const auto it = values.find(name);
    return it == values.end() ? 0.0 : it->second;
  };
  struct Edge {
    int tail;
    int head;
    int serviced;
  };

  Solution sol;
  sol.routes.resize(static_cast<std::size_t>(inst.num_vehicles));
  for (int m = 0; m < inst.num_vehicles; ++m) {
    for (int h = 1; h <= inst.num_classes; ++h) {
      std::vector<Edge> edges;
      for (int e = 0; e < static_cast<int>(tg.edges.size()); ++e) {
        const auto count = std::lround(get(names.y(m, h, edge_label(tg, e))));
        for (long c = 0; c < count; ++c) {
          edges.push_back({tg.edges[e].tail, tg.edges[e].head, -1});
        }
      }
      for (int a : inst.required_arcs()) {
        if (names.has_x(inst.arcs[a], h) && get(names.x(m, h, a)) > 0.5) {
          edges.push_back({inst.arcs[a].tail, inst.arcs[a].head, a});
        }
      }
      if (edges.empty()) {
        continue;
      }
      std::vector<std::vector<int>> out(static_cast<std::size_t>(tg.dummy_node) + 1);
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        out[edges[e].tail].push_back(e);
      }
      // Hierholzer from the dummy node.
      std::vector<std::size_t> next(out.size(), 0);
      std::vector<std::pair<int, int>> stack{{tg.dummy_node, -1}};
      std::vector<int> circuit;
      while (!stack.empty()) {
        const auto [v, via] = stack.back();
        if (next[v] < out[v].size()) {
          const int e = out[v][next[v]++];
          stack.emplace_back(edges[e].head, e);
        } else {
          stack.pop_back();
          if (via >= 0) {
            circuit.push_back(via);
          }
        }
      }
      if (circuit.size() != edges.size()) {
        throw Fault("segment support of vehicle " + std::to_string(m) + " level " +
                    std::to_string(h) + " is not connected to the dummy node");
      }
      std::reverse(circuit.begin(), circuit.end());
      for (int e : circuit) {
        if (edges[e].serviced >= 0) {
          sol.routes[m].push_back(edges[e].serviced);
        }
      }
    }
  }
  return sol;
}

Assignment parse_solution_values(const std::string& text) {
  Assignment values;
  std::istringstream in(text);
  std::string line;
  const auto as_number = [](const std::string& s, double& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) {
      tok.push_back(w);
    }
    double v = 0.0;
    double idx = 0.0;
    if (tok.size() == 2 && !as_number(tok[0], idx) && as_number(tok[1], v)) {
      values[tok[0]] = v;
    } else if (tok.size() >= 3 && as_number(tok[0], idx) && !as_number(tok[1], v) &&
               as_number(tok[2], v)) {
      values[tok[1]] = v;
    }
  }
  return values;
}

std::vector<std::filesystem::path> write_stage_files(const MilpModel& model,
                                                     const std::filesystem::path& dir,
                                                     const std::string& stem,
                                                     std::span<const double> fixed) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (int k = 1; k <= static_cast<int>(model.objective_stages.size()); ++k) {
    auto path = dir / (stem + "." + std::string(to_string(model.variant)) + ".stage" +
                       std::to_string(k) + ".lp");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw Fault("cannot write " + path.string());
    }
    out << write_lp(model, k, fixed.first(std::min(fixed.size(), static_cast<std::size_t>(k - 1))));
    paths.push_back(std::move(path));
  }
  return paths;
}

Assignment solve_external(const MilpModel& model, const std::string& command,
                          const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<double> fixed;
  Assignment values;
  const int np = static_cast<int>(model.objective_stages.size());
  for (int k = 1; k <= np; ++k) {
    const std::string base = stem + "." + std::string(to_string(model.variant)) + ".stage" + std::to_string(k);
    const auto lp = dir / (base + ".lp");
    const auto sol = dir / (base + ".sol");
    {
      std::ofstream out(lp, std::ios::binary);
      out << write_lp(model, k, fixed);
    }
    std::string cmd = command;
    for (const auto& [key, path] : {std::pair<std::string, std::filesystem::path>{"{lp}", lp}, {"{sol}", sol}}) {
      for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key, pos)) {
        cmd.replace(pos, key.size(), path.string());
        pos += path.string().size();
      }
    }
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      throw Fault("external solver exited with status " + std::to_string(rc) + " on stage " + std::to_string(k));
    }
    std::ifstream in(sol);
    if (!in) {
      throw Fault("external solver wrote no solution file for stage " + std::to_string(k));
    }
    std::stringstream ss;
    ss << in.rdbuf();
    values = parse_solution_values(ss.str());
    const auto it = values.find("T_" + std::to_string(k));
    if (it == values.end()) {
      throw Fault("solution file of stage " + std::to_string(k) + " has no T_" + std::to_string(k));
    }
    fixed.push_back(it->second);
  }
  return values;
}

}  // namespace hdcarp
