#include "hdcarp/bench.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "hdcarp/oracle.h"
#include "json.hpp"

namespace hdcarp {

int required_arc_count(int num_arcs, Rng& rng) {
  if (num_arcs < 80) {
    return (3 * num_arcs) / 4;
  }
  return static_cast<int>(std::min<std::int64_t>(rng.between(60, 70), num_arcs));
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

std::optional<Instance> try_generate(const GenSpec& spec, Rng& rng) {
  const int n = std::max(2, spec.num_arcs / 2);
  Instance inst;
  inst.depot = 0;
  inst.num_vehicles = spec.num_vehicles;
  inst.num_classes = spec.num_classes;
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform01();
    const double y = rng.uniform01();
    inst.nodes.push_back({i, x, y});
  }

  std::set<std::pair<int, int>> present;
  std::vector<std::pair<int, int>> links;
  const auto add = [&](int u, int v) {
    present.emplace(u, v);
    links.emplace_back(u, v);
  };

  std::vector<int> order(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    order[i] = i + 1;
  }
  // Out-arborescence: every node gets a parent among the depot and the
  // nodes placed before it.
  shuffle(order, rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t pick = rng.below(i + 1);
    const int parent = pick == 0 ? 0 : order[pick - 1];
    add(parent, order[i]);
  }
  // In-arborescence, avoiding arcs already present.
  shuffle(order, rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<int> parents;
    for (std::size_t j = 0; j <= i; ++j) {
      const int parent = j == 0 ? 0 : order[j - 1];
      if (!present.contains({order[i], parent})) {
        parents.push_back(parent);
      }
    }
    if (parents.empty()) {
      return std::nullopt;
    }
    add(order[i], parents[rng.below(parents.size())]);
  }
  const std::size_t simple_limit = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  int misses = 0;
  while (static_cast<int>(links.size()) < spec.num_arcs) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) {
      ++v;
    }
    if (present.size() < simple_limit && present.contains({u, v})) {
      if (++misses > 100000) {
        return std::nullopt;
      }
      continue;
    }
    add(u, v);
  }
  if (static_cast<int>(links.size()) > spec.num_arcs) {
    return std::nullopt;
  }

  std::vector<double> length;
  double longest = 0.0;
  for (const auto& [u, v] : links) {
    const double len = std::hypot(inst.nodes[u].x - inst.nodes[v].x, inst.nodes[u].y - inst.nodes[v].y);
    if (!(len > 0.0)) {
      return std::nullopt;
    }
    length.push_back(len);
    longest = std::max(longest, len);
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    Arc a;
    a.id = static_cast<int>(i);
    a.tail = links[i].first;
    a.head = links[i].second;
    a.d = length[i] / longest;
    inst.arcs.push_back(a);
  }

  const int nr = required_arc_count(spec.num_arcs, rng);
  std::vector<int> ids(inst.arcs.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = static_cast<int>(i);
  }
  shuffle(ids, rng);
  ids.resize(static_cast<std::size_t>(nr));
  std::sort(ids.begin(), ids.end());
  double capacity = 0.0;
  for (int id : ids) {
    Arc& a = inst.arcs[id];
    a.required = true;
    a.p = static_cast<int>(rng.between(1, spec.num_classes));
    a.s = 2.0 * a.d;
    a.q = a.d * 0.5 + 0.5;
    capacity += a.q / 3.0 + 0.5;
  }
  inst.capacity = capacity;
  return inst;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
  if (spec.num_arcs < 4 || spec.num_vehicles < 1 || spec.num_classes < 1) {
    throw Fault("generator needs at least 4 arcs, 1 vehicle and 1 class");
  }
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng = Rng::derive(spec.seed, attempt);
    if (auto inst = try_generate(spec, rng)) {
      return std::move(*inst);
    }
  }
  throw Fault("instance generation failed after 100 attempts");
}

Solution run_algorithm(const std::string& name, const Instance& inst, const DeadheadMatrix& mat,
                       Variant variant, std::uint64_t seed, const AlgorithmParams& params) {
  Rng rng(seed);
  const LocalSearchOptions ls{params.threads};
  if (name == "greedy") {
    return construct(inst, mat, variant, rng, params.construct);
  }
  if (name == "ls") {
    return local_search(inst, mat, construct(inst, mat, variant, rng, params.construct), variant, ls);
  }
  if (name == "ils") {
    auto opts = params.ils;
    opts.threads = params.threads;
    return ils(inst, mat, variant, rng, opts);
  }
  if (name == "ea") {
    auto opts = params.ea;
    opts.threads = params.threads;
    return ea(inst, mat, variant, rng, opts);
  }
  if (name == "aco") {
    auto opts = params.aco;
    opts.threads = params.threads;
    return aco(inst, mat, variant, rng, opts);
  }
  throw Fault("unknown algorithm '" + name + "'");
}

std::vector<double> gap_percent(const Objective& value, const Objective& reference) {
  if (value.size() != reference.size()) {
    throw Fault("gap_percent: objective length mismatch");
  }
  std::vector<double> gap(value.size());
  for (std::size_t k = 0; k < value.size(); ++k) {
    const double diff = value[k] - reference[k];
    if (reference[k] == 0.0) {
      gap[k] = std::abs(diff) <= kTimeTol ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      gap[k] = 100.0 * diff / reference[k];
    }
  }
  return gap;
}

std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::vector<std::string>& algorithms, Variant variant,
                                const BenchOptions& options) {
  struct Job {
    std::size_t instance;
    std::size_t algorithm;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      jobs.push_back({i, a});
    }
  }
  std::vector<std::optional<DeadheadMatrix>> mats(instances.size());
  std::vector<std::string> bad(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto violations = validate_instance(instances[i].instance);
    if (!violations.empty()) {
      bad[i] = "invalid instance: " + violations.front();
      continue;
    }
    mats[i] = compute_deadhead_matrix(instances[i].instance);
  }

  std::vector<BenchRow> rows(jobs.size());
  std::vector<std::optional<Objective>> objectives(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for num_threads(std::max(options.workers, 1)) if (options.workers > 1) schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Job job = jobs[static_cast<std::size_t>(j)];
    const auto& named = instances[job.instance];
    BenchRow& row = rows[static_cast<std::size_t>(j)];
    row.instance = named.name;
    row.algorithm = algorithms[job.algorithm];
    row.variant = variant;
    row.seed = options.seed;
    if (!mats[job.instance]) {
      row.status = bad[job.instance];
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      const Solution sol = run_algorithm(row.algorithm, named.instance, *mats[job.instance], variant,
                                         options.seed, options.params);
      const Objective obj = evaluate(named.instance, *mats[job.instance], sol, variant);
      row.objective = obj.t;
      row.status = "ok";
      objectives[static_cast<std::size_t>(j)] = obj;
    } catch (const std::exception& e) {
      row.status = e.what();
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  if (options.reference == Reference::none) {
    return rows;
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::optional<Objective> ref;
    if (options.reference == Reference::oracle) {
      if (!mats[i]) {
        continue;
      }
      try {
        ref = brute_force_oracle(instances[i].instance, *mats[i], variant).objective;
      } catch (const Fault&) {
        continue;
      }
    } else {
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].instance == i && objectives[j] && (!ref || lex_less(*objectives[j], *ref))) {
          ref = objectives[j];
        }
      }
    }
    if (!ref) {
      continue;
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].instance == i && objectives[j]) {
        rows[j].gap_percent = gap_percent(*objectives[j], *ref);
      }
    }
  }
  return rows;
}

namespace {

std::string num(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_num(const std::string& s) {
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (s == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Fault("bad number '" + s + "' in CSV");
  }
  return v;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += (i ? ";" : "") + num(values[i]);
  }
  return s;
}

std::vector<double> split_values(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) {
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(';', start);
    out.push_back(parse_num(s.substr(start, end - start)));
    if (end == std::string::npos) {
      break;
    }
    start = end + 1;
  }
  return out;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string q = "\"";
  for (char c : s) {
    q += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

constexpr const char* kCsvHeader = "instance,algorithm,variant,seed,status,time_s,objective,gap_percent";

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), '\n', ' ');
    out += quote(r.instance) + "," + quote(r.algorithm) + "," + std::string(to_string(r.variant)) + "," +
           std::to_string(r.seed) + "," + quote(status) + "," + num(r.wall_time) + "," +
           join(r.objective) + "," + join(r.gap_percent) + "\n";
  }
  return out;
}

std::vector<BenchRow> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Fault("bench CSV header mismatch");
  }
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 8) {
      throw Fault("bench CSV row has " + std::to_string(f.size()) + " fields");
    }
    BenchRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.variant = parse_variant(f[2]);
    r.seed = std::stoull(f[3]);
    r.status = f[4];
    r.wall_time = parse_num(f[5]);
    r.objective = split_values(f[6]);
    r.gap_percent = split_values(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

BenchSpec bench_spec_from_json(const std::string& text, const std::filesystem::path& base_dir) {
  using nlohmann::json;
  BenchSpec spec;
  try {
    const json j = json::parse(text);
    for (const auto& item : j.at("instances")) {
      if (item.contains("file")) {
        const auto path = base_dir / item.at("file").get<std::string>();
        spec.instances.push_back({path.stem().string(), load_instance(path)});
      } else {
        const auto& g = item.at("gen");
        GenSpec gs;
        gs.num_arcs = g.at("arcs").get<int>();
        gs.num_vehicles = g.value("vehicles", 2);
        gs.num_classes = g.value("classes", 3);
        gs.seed = g.value("seed", std::uint64_t{0});
        const std::string name = "gen_a" + std::to_string(gs.num_arcs) + "_m" +
                                 std::to_string(gs.num_vehicles) + "_s" + std::to_string(gs.seed);
        spec.instances.push_back({item.value("name", name), generate_instance(gs)});
      }
    }
    spec.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    spec.variant = parse_variant(j.value("variant", std::string("p")));
    const auto ref = j.value("reference", std::string("best-known"));
    if (ref == "oracle") {
      spec.options.reference = Reference::oracle;
    } else if (ref == "best-known") {
      spec.options.reference = Reference::best_known;
    } else if (ref == "none") {
      spec.options.reference = Reference::none;
    } else {
      throw Fault("unknown reference '" + ref + "'");
    }
    spec.options.seed = j.value("seed", std::uint64_t{1});
    spec.options.workers = j.value("workers", 1);
    if (j.contains("params")) {
      const auto& p = j.at("params");
      auto& ap = spec.options.params;
      ap.threads = p.value("threads", ap.threads);
      ap.ils.k_max = p.value("ils_k_max", ap.ils.k_max);
      ap.ea.k_max = p.value("ea_k_max", ap.ea.k_max);
      ap.ea.lambda = p.value("ea_lambda", ap.ea.lambda);
      ap.aco.n_ant = p.value("aco_ants", ap.aco.n_ant);
      ap.aco.k_max = p.value("aco_k_max", ap.aco.k_max);
      ap.aco.rho = p.value("aco_rho", ap.aco.rho);
      ap.aco.beta = p.value("aco_beta", ap.aco.beta);
    }
  } catch (const json::exception& e) {
    throw Fault(std::string("malformed bench spec: ") + e.what());
  }
  return spec;
}

}  // namespace hdcarp
