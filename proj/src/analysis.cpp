#include "nsg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsg/rng.hpp"

namespace nsg {

double activity(const Grid& g1, const Grid& g2) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols())
    throw std::invalid_argument("activity requires grids of equal dimensions");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < g1.cells().size(); ++i)
    if (g1.cells()[i] != g2.cells()[i]) ++diff;
  return static_cast<double>(diff) / static_cast<double>(g1.cells().size());
}

double density(const Grid& g) {
  std::size_t ones = 0;
  for (std::uint8_t v : g.cells()) ones += v;
  return static_cast<double>(ones) / static_cast<double>(g.cells().size());
}

std::string Classification::to_token() const {
  switch (kind) {
    case Kind::fixed_point: return "fixed_point:" + std::to_string(transient);
    case Kind::periodic: return "periodic:" + std::to_string(period) + ":" + std::to_string(transient);
    case Kind::undetermined: return "undetermined:" + std::to_string(horizon);
  }
  return "?";
}

std::optional<CycleDetector::Repeat> CycleDetector::feed(const Grid& g) {
  const std::uint64_t digest = grid_digest(g);
  const int index = static_cast<int>(states_.size());
  if (auto it = index_by_digest_.find(digest); it != index_by_digest_.end()) {
    for (int candidate : it->second) {
      if (states_[static_cast<std::size_t>(candidate)] == g)
        return Repeat{candidate, index - candidate};
    }
  }
  index_by_digest_[digest].push_back(index);
  states_.push_back(g);
  return std::nullopt;
}

Classification classify(const Grid& initial, const RankMatrix& rm, const Topology& topo, UpdateRule rule,
                        int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  Classification out;
  out.horizon = horizon;
  out.density_series.push_back(density(initial));

  CycleDetector detector;
  detector.feed(initial);
  Grid current = initial;
  for (int t = 1; t <= horizon; ++t) {
    Grid next = step(current, rm, topo, rule);
    out.activity_series.push_back(activity(current, next));
    out.density_series.push_back(density(next));
    current = std::move(next);
    if (const auto repeat = detector.feed(current)) {
      out.kind = repeat->period == 1 ? Classification::Kind::fixed_point : Classification::Kind::periodic;
      out.period = repeat->period;
      out.transient = repeat->first_index;
      return out;
    }
  }
  out.kind = Classification::Kind::undetermined;
  return out;
}

ProportionEstimate estimate_linear_proportion(int n_neighbors, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  ProportionEstimate est;
  est.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const RankTable table = random_rank_table(n_neighbors, splitmix64_at(seed, static_cast<std::uint64_t>(i)));
    try {
      if (is_linear_realizable(table).realizable) ++est.realizable;
    } catch (const linprog::SolverError&) {
      ++est.solver_failures;
    }
  }
  const int decided = samples - est.solver_failures;
  const double p = decided > 0 ? static_cast<double>(est.realizable) / static_cast<double>(decided) : 0.0;
  est.proportion = p;
  est.half_width = decided > 0 ? 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(decided)) : 0.0;
  return est;
}

ProportionEstimate estimate_linear_proportion(const Topology& topo, int samples, std::uint64_t seed) {
  return estimate_linear_proportion(topo.neighbor_count(), samples, seed);
}

std::uint64_t count_rank_tables(int n_neighbors) {
  if (n_neighbors < 1 || n_neighbors > 8)
    throw std::invalid_argument("neighbor count outside supported range 1..8");
  const int total = 2 * (n_neighbors + 1);
  std::uint64_t f = 1;
  for (int i = 2; i <= total; ++i) f *= static_cast<std::uint64_t>(i);  // 18! fits in 64 bits
  return f;
}

std::uint64_t count_rank_matrices(const Topology& topo) { return count_rank_tables(topo.neighbor_count()); }

std::uint64_t count_monotone_tables(int n_neighbors) {
  const int total = 2 * (n_neighbors + 1);
  const int half = n_neighbors + 1;
  std::uint64_t binom = 1;
  for (int i = 1; i <= half; ++i)
    binom = binom * static_cast<std::uint64_t>(total - half + i) / static_cast<std::uint64_t>(i);
  return 4 * binom;
}

std::vector<ExploreEntry> explore(const Topology& topo, UpdateRule rule, int budget, std::uint64_t seed,
                                  int rows, int cols, int horizon) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  topo.require_admissible(rows, cols);

  std::vector<ExploreEntry> entries;
  entries.reserve(static_cast<std::size_t>(budget));
  for (int i = 0; i < budget; ++i) {
    const std::uint64_t matrix_seed = splitmix64_at(seed, 2 * static_cast<std::uint64_t>(i));
    const std::uint64_t grid_seed = splitmix64_at(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    RankMatrix rm = random_rank_matrix(topo, matrix_seed);
    const Grid initial = make_grid(rows, cols, InitSpec::bernoulli(0.5), grid_seed);

    // Full-horizon run: the score's tail window is always the last quarter of
    // `horizon` steps, whether or not a cycle appeared earlier.
    Classification cls;
    cls.horizon = horizon;
    cls.density_series.push_back(density(initial));
    CycleDetector detector;
    detector.feed(initial);
    bool repeat_found = false;
    Grid current = initial;
    for (int t = 1; t <= horizon; ++t) {
      Grid next = step(current, rm, topo, rule);
      cls.activity_series.push_back(activity(current, next));
      cls.density_series.push_back(density(next));
      current = std::move(next);
      if (!repeat_found) {
        if (const auto repeat = detector.feed(current)) {
          repeat_found = true;
          cls.kind = repeat->period == 1 ? Classification::Kind::fixed_point : Classification::Kind::periodic;
          cls.period = repeat->period;
          cls.transient = repeat->first_index;
        }
      }
    }
    if (!repeat_found) cls.kind = Classification::Kind::undetermined;

    ExploreEntry entry{i, std::move(rm), 0.0, {}, 0, 0.0, 0.0};
    entry.survived = repeat_found ? std::min(horizon, cls.transient + cls.period) : horizon;
    const int tail_start = horizon - horizon / 4;  // steps tail_start+1 .. horizon
    double tail_sum = 0.0;
    int tail_count = 0;
    for (int t = tail_start + 1; t <= horizon; ++t) {
      tail_sum += cls.activity_series[static_cast<std::size_t>(t - 1)];
      ++tail_count;
    }
    entry.tail_activity = tail_count > 0 ? tail_sum / tail_count : 0.0;
    entry.final_density = cls.density_series.back();
    entry.score = static_cast<double>(entry.survived) + static_cast<double>(horizon) * entry.tail_activity;
    entry.classification = std::move(cls);
    entries.push_back(std::move(entry));
  }

  std::sort(entries.begin(), entries.end(), [](const ExploreEntry& x, const ExploreEntry& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.sample_index < y.sample_index;
  });
  return entries;
}

}  // namespace nsg
