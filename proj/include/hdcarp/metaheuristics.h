#ifndef HDCARP_METAHEURISTICS_H
#define HDCARP_METAHEURISTICS_H

#include <optional>
#include <unordered_map>
#include <vector>

#include "hdcarp/local_search.h"

namespace hdcarp {

// Swaps two arcs of one class on one route. The class is drawn uniformly
// among classes that some route services at least twice, then the route,
// then two distinct positions. Returns the input when no such pair exists.
Solution perturb(const Instance& inst, Solution sol, Rng& rng);

struct IlsOptions {
  int k_max = 10;
  int threads = 1;
};

Solution ils(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
             const IlsOptions& options = {});

struct Member {
  Solution solution;
  Objective objective;
};

struct EaOptions {
  int k_max = 100;
  int lambda = 200;
  int threads = 1;
};

// Offspring of `first` that takes the class-`cls` arcs of `second` route by
// route. Routes that would overflow shrink the exchanged prefixes; arcs
// dropped by the shrink are re-inserted greedily. Falls back to a copy of
// `first` when no feasible child results.
Solution crossover(const Instance& inst, const DeadheadMatrix& mat, Variant variant,
                   const Solution& first, const Solution& second, int cls);

Solution ea(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
            const EaOptions& options = {});

// |A_r| x |A_r| pheromone levels indexed by position in the required-arc list.
class PheromoneMatrix {
public:
  PheromoneMatrix(std::size_t n, double rho);

  std::size_t size() const { return n_; }
  double rho() const { return rho_; }
  double at(std::size_t a, std::size_t b) const { return tau_[a * n_ + b]; }
  void deposit(std::size_t a, std::size_t b, double amount) { tau_[a * n_ + b] += amount; }
  // tau *= (1 - rho)
  void evaporate();
  const std::vector<double>& values() const { return tau_; }

private:
  std::size_t n_;
  double rho_;
  std::vector<double> tau_;
};

struct AcoOptions {
  int n_ant = 50;
  int k_max = 100;
  double rho = 0.5;
  double beta = 2.0;
  double eps0 = 1e-6;
  int threads = 1;
};

// Maps required arc ids to pheromone indices.
std::unordered_map<int, std::size_t> required_index(const Instance& inst);

// One ant walk. Returns nullopt when some arc fits on no vehicle.
std::optional<Solution> aco_build(const Instance& inst, const DeadheadMatrix& mat,
                                  const PheromoneMatrix& tau,
                                  const std::unordered_map<int, std::size_t>& index, Rng& rng,
                                  const AcoOptions& options);

// Deposits 1 / (first nonzero T_k) on consecutive serviced pairs of `best`.
void aco_reinforce(PheromoneMatrix& tau, const std::unordered_map<int, std::size_t>& index,
                   const Solution& best, const Objective& objective);

// `trace`, when given, receives the pheromone matrix after every iteration.
Solution aco(const Instance& inst, const DeadheadMatrix& mat, Variant variant, Rng& rng,
             const AcoOptions& options = {}, std::vector<PheromoneMatrix>* trace = nullptr);

}  // namespace hdcarp

#endif
