#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsg/lattice.hpp"
#include "nsg/linprog.hpp"

namespace nsg {

// The four payoffs of a symmetric 2x2 game: a = 0-vs-0, b = 0-vs-1,
// c = 1-vs-0, d = 1-vs-1.
struct GameMatrix {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  bool operator==(const GameMatrix&) const = default;
};

// Two of the 2(N+1) payoff sums came out exactly equal, so no strict ranking
// exists. `collisions` lists the groups of (s, k) cells sharing a value.
class NonGenericGame : public std::runtime_error {
 public:
  struct Cell {
    int s = 0;
    int k = 0;
    bool operator==(const Cell&) const = default;
  };

  NonGenericGame(std::string message, std::vector<std::vector<Cell>> groups)
      : std::runtime_error(std::move(message)), collisions(std::move(groups)) {}

  std::vector<std::vector<Cell>> collisions;
};

// 2x(N+1) table of distinct ranks 1..2(N+1); row = own strategy, column = the
// count k of type-1 neighbors. Larger rank = better outcome. This is the
// neighbor-count-generic core; RankMatrix below binds a table to a lattice
// topology.
class RankTable {
 public:
  RankTable(std::vector<int> row0, std::vector<int> row1);

  int neighbor_count() const { return columns_ - 1; }
  int columns() const { return columns_; }
  int size() const { return 2 * columns_; }

  int at(int s, int k) const;

  // Ranks are globally distinct, so a rank value pins down its (s, k) cell;
  // in particular the strategy of any maximal-rank cell is unambiguous.
  int strategy_of_rank(int rank) const;
  int count_of_rank(int rank) const;

  bool operator==(const RankTable&) const = default;

 private:
  int columns_;
  std::vector<int> entries_;       // row-major, 2 rows
  std::vector<std::uint8_t> strategy_of_;  // index = rank
  std::vector<int> count_of_;              // index = rank
};

// Rank table bound to a topology; the column count must equal N+1.
struct RankMatrix {
  RankMatrix(TopologyKind kind, RankTable table);

  TopologyKind kind;
  RankTable table;

  int neighbor_count() const { return table.neighbor_count(); }
  int at(int s, int k) const { return table.at(s, k); }
  bool operator==(const RankMatrix&) const = default;
};

struct RealizabilityResult {
  bool realizable = false;
  std::optional<GameMatrix> witness;  // certified: re-derives the queried table
  std::optional<double> margin;       // optimal minimum slack of the ordering LP
};

// (N-k)a + kb for strategy 0, (N-k)c + kd for strategy 1. Throws on k outside
// 0..N.
double payoff(const GameMatrix& game, int s, int k, int n_neighbors);

// Sort all 2(N+1) payoff sums ascending and assign ranks 1..2(N+1). Payoff
// equality is detected by exact comparison of the computed values; callers
// wanting decimal-exact semantics pass games pre-scaled to integer payoffs.
RankTable derive_rank_table(const GameMatrix& game, int n_neighbors);
RankMatrix derive_rank_matrix(const GameMatrix& game, const Topology& topo);

// True iff each row is strictly increasing or strictly decreasing in k.
// Necessary for linear realizability: each payoff row is linear in k.
bool rows_monotone(const RankTable& table);
bool rows_monotone(const RankMatrix& rm);

// rm'(s, k) = rm(1-s, N-k): swap rows, reverse columns. Involution; matches
// relabeling the two strategies of the underlying game.
RankTable complement_transform(const RankTable& table);
RankMatrix complement_transform(const RankMatrix& rm);

// Uniform random permutation of 1..2(N+1) via Fisher-Yates over the seeded
// generator; row 0 takes the first N+1 slots.
RankTable random_rank_table(int n_neighbors, std::uint64_t seed);
RankMatrix random_rank_matrix(const Topology& topo, std::uint64_t seed);

// File format: line 1 topology token, line 2 row 0, line 3 row 1,
// space-separated, trailing newline required.
std::string serialize_rank_matrix(const RankMatrix& rm);
RankMatrix parse_rank_matrix(std::string_view text);

// Rows joined by '/', e.g. "13 11 ... 1/18 17 ... 3"; used by the census
// export and the --ranks inline: CLI source.
std::string serialize_rank_rows(const RankTable& table);
RankTable parse_rank_rows(std::string_view text);

// Max-slack ordering LP: order the 2(N+1) payoff expressions by rank,
// maximize the common slack t between consecutive pairs subject to
// |a|,|b|,|c|,|d| <= 1. Exposed so tests can drive the LP directly.
struct SlackSolution {
  linprog::Rat slack;
  std::array<linprog::Rat, 4> game;
};
SlackSolution solve_rank_slack_lp(const RankTable& table);

// Realizable iff some real game re-derives the table; the ordering LP above
// decides, with slack > 1e-9 counting as realizable. Positive answers are
// certified by witness re-derivation, so false positives are impossible.
// Throws linprog::SolverError on numerical failure, distinct from a clean
// "not realizable".
RealizabilityResult is_linear_realizable(const RankTable& table);
RealizabilityResult is_linear_realizable(const RankMatrix& rm);

}  // namespace nsg
