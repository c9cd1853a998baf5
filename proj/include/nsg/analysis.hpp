#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nsg/engine.hpp"
#include "nsg/lattice.hpp"
#include "nsg/rankmodel.hpp"

namespace nsg {

// Fraction of cells whose strategy differs. Throws on dimension mismatch.
double activity(const Grid& g1, const Grid& g2);

// Fraction of type-1 cells.
double density(const Grid& g);

struct Classification {
  enum class Kind { fixed_point, periodic, undetermined };

  Kind kind = Kind::undetermined;
  int period = 0;     // >= 1 when a repeat was found; 1 is reported as fixed_point
  int transient = 0;  // step index of the first occurrence of the repeated state
  int horizon = 0;    // steps examined when undetermined

  std::vector<double> activity_series;  // activity_series[t-1] = change at step t
  std::vector<double> density_series;   // density_series[t] = density after step t (t=0 is initial)

  std::string to_token() const;  // "fixed_point:T" | "periodic:P:T" | "undetermined:H"
};

// Detects the first revisited state in a trajectory. Digests index a map of
// candidate matches; every hit is confirmed against the stored grid, so a
// digest collision can never fabricate a cycle.
class CycleDetector {
 public:
  struct Repeat {
    int first_index = 0;  // transient
    int period = 0;
  };

  // Feed states in trajectory order (the initial grid is index 0). Returns
  // the repeat as soon as the current state has been seen before.
  std::optional<Repeat> feed(const Grid& g);

 private:
  std::vector<Grid> states_;
  std::unordered_map<std::uint64_t, std::vector<int>> index_by_digest_;
};

// Run up to `horizon` steps, stopping at the first revisited state.
Classification classify(const Grid& initial, const RankMatrix& rm, const Topology& topo, UpdateRule rule,
                        int horizon);

struct ProportionEstimate {
  double proportion = 0.0;
  double half_width = 0.0;  // 95% binomial (Wald) half-width
  int samples = 0;
  int realizable = 0;
  int solver_failures = 0;  // counted separately, never folded into the rate
};

// Sample uniform random rank tables and test linear realizability. Sample i
// uses seed splitmix64_at(seed, i), so results do not depend on evaluation
// order. The neighbor-count overload exists for degenerate test topologies
// (N = 1 enumeration).
ProportionEstimate estimate_linear_proportion(int n_neighbors, int samples, std::uint64_t seed);
ProportionEstimate estimate_linear_proportion(const Topology& topo, int samples, std::uint64_t seed);

// (2(N+1))! — the number of distinct rank matrices for the topology. The
// largest supported case is 18!, which is exact in 64 bits.
std::uint64_t count_rank_matrices(const Topology& topo);
std::uint64_t count_rank_tables(int n_neighbors);

// Number of tables whose rows are both strictly monotone:
// 4 * C(2(N+1), N+1) (choose row 0's rank set, then each row's direction).
// An exact upper bound on the number of realizable tables.
std::uint64_t count_monotone_tables(int n_neighbors);

struct ExploreEntry {
  int sample_index = 0;
  RankMatrix matrix;
  double score = 0.0;
  Classification classification;
  int survived = 0;            // transient + period, capped at horizon; horizon if no repeat
  double tail_activity = 0.0;  // mean activity over the final quarter of the run
  double final_density = 0.0;
};

// Sample `budget` random rank matrices, run each from a bernoulli(0.5) grid
// for the full horizon, and rank by interest score:
//   score = survived + horizon * tail_activity.
// Runs that die to a uniform state or lock into a cycle early rank below
// persistently active ones. Sample i draws its matrix with substream 2i and
// its grid with substream 2i+1; ties in score break by sample index.
std::vector<ExploreEntry> explore(const Topology& topo, UpdateRule rule, int budget, std::uint64_t seed,
                                  int rows, int cols, int horizon);

}  // namespace nsg
