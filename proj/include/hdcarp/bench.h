#ifndef HDCARP_BENCH_H
#define HDCARP_BENCH_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdcarp/constructive.h"
#include "hdcarp/metaheuristics.h"

namespace hdcarp {

struct GenSpec {
  int num_arcs = 40;
  int num_vehicles = 2;
  int num_classes = 3;
  std::uint64_t seed = 0;
};

// Required-arc count: 75% of |A| (rounded down) below 80 arcs, otherwise
// uniform in [60, 70].
int required_arc_count(int num_arcs, Rng& rng);

// Synthetic planar instance: |A|/2 uniform points in the unit square, a
// strongly connected arc set (out- and in-arborescence at the depot plus
// random extra arcs), Euclidean lengths normalized by the longest arc,
// s = 2d, q = 0.5d + 0.5 and Q = sum(q/3 + 0.5).
Instance generate_instance(const GenSpec& spec);

struct AlgorithmParams {
  ConstructOptions construct;
  IlsOptions ils;
  EaOptions ea;
  AcoOptions aco;
  int threads = 1;
};

// greedy | ls | ils | ea | aco
Solution run_algorithm(const std::string& name, const Instance& inst, const DeadheadMatrix& mat,
                       Variant variant, std::uint64_t seed, const AlgorithmParams& params);

enum class Reference { none, oracle, best_known };

struct BenchRow {
  std::string instance;
  std::string algorithm;
  Variant variant = Variant::P;
  std::uint64_t seed = 0;
  std::string status;  // "ok" or the fault message
  double wall_time = 0.0;
  std::vector<double> objective;
  std::vector<double> gap_percent;  // empty when no reference

  bool operator==(const BenchRow&) const = default;
};

// 100 (value - reference) / reference per class, 0/0 read as 0.
std::vector<double> gap_percent(const Objective& value, const Objective& reference);

struct NamedInstance {
  std::string name;
  Instance instance;
};

struct BenchOptions {
  Reference reference = Reference::best_known;
  std::uint64_t seed = 1;
  int workers = 1;  // concurrent (instance, algorithm) jobs
  AlgorithmParams params;
};

std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::vector<std::string>& algorithms, Variant variant,
                                const BenchOptions& options);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench_csv(const std::string& text);

struct BenchSpec {
  std::vector<NamedInstance> instances;
  std::vector<std::string> algorithms;
  Variant variant = Variant::P;
  BenchOptions options;
};

// Reads the bench JSON: instances given as files (relative to `base_dir`) or
// generator specs, algorithm list, variant, reference, seed, workers and
// algorithm parameters.
BenchSpec bench_spec_from_json(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace hdcarp

#endif
