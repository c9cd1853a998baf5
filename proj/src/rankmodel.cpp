#include "nsg/rankmodel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nsg/rng.hpp"

namespace nsg {

namespace {

std::vector<int> parse_int_row(std::string_view line) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ') ++end;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
    if (ec != std::errc() || ptr != line.data() + end)
      throw ParseError("rank matrix: bad integer '" + std::string(line.substr(pos, end - pos)) + "'");
    out.push_back(value);
    pos = end;
  }
  return out;
}

std::string join_row(const RankTable& table, int s) {
  std::string out;
  for (int k = 0; k < table.columns(); ++k) {
    if (k > 0) out.push_back(' ');
    out += std::to_string(table.at(s, k));
  }
  return out;
}

// Payoff expression of cell (s, k) as integer coefficients over (a, b, c, d).
std::array<long long, 4> payoff_coeffs(int s, int k, int n) {
  if (s == 0) return {n - k, k, 0, 0};
  return {0, 0, n - k, k};
}

}  // namespace

RankTable::RankTable(std::vector<int> row0, std::vector<int> row1) {
  if (row0.size() != row1.size()) throw std::invalid_argument("rank table rows differ in length");
  if (row0.size() < 2) throw std::invalid_argument("rank table needs at least two columns (N >= 1)");
  columns_ = static_cast<int>(row0.size());
  entries_ = std::move(row0);
  entries_.insert(entries_.end(), row1.begin(), row1.end());

  const int total = 2 * columns_;
  std::vector<bool> seen(static_cast<std::size_t>(total) + 1, false);
  for (int v : entries_) {
    if (v < 1 || v > total || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("rank table entries must form a permutation of 1.." + std::to_string(total));
    seen[static_cast<std::size_t>(v)] = true;
  }

  strategy_of_.assign(static_cast<std::size_t>(total) + 1, 0);
  count_of_.assign(static_cast<std::size_t>(total) + 1, 0);
  for (int s = 0; s < 2; ++s) {
    for (int k = 0; k < columns_; ++k) {
      const int rank = at(s, k);
      strategy_of_[static_cast<std::size_t>(rank)] = static_cast<std::uint8_t>(s);
      count_of_[static_cast<std::size_t>(rank)] = k;
    }
  }
}

int RankTable::at(int s, int k) const {
  if (s < 0 || s > 1 || k < 0 || k >= columns_) throw std::out_of_range("rank table index out of range");
  return entries_[static_cast<std::size_t>(s) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(k)];
}

int RankTable::strategy_of_rank(int rank) const {
  if (rank < 1 || rank > size()) throw std::out_of_range("rank out of range");
  return strategy_of_[static_cast<std::size_t>(rank)];
}

int RankTable::count_of_rank(int rank) const {
  if (rank < 1 || rank > size()) throw std::out_of_range("rank out of range");
  return count_of_[static_cast<std::size_t>(rank)];
}

RankMatrix::RankMatrix(TopologyKind k, RankTable t) : kind(k), table(std::move(t)) {
  const int expected = Topology(kind).neighbor_count() + 1;
  if (table.columns() != expected)
    throw std::invalid_argument("rank table has " + std::to_string(table.columns()) + " columns, topology " +
                                std::string(to_token(kind)) + " needs " + std::to_string(expected));
}

double payoff(const GameMatrix& game, int s, int k, int n_neighbors) {
  if (n_neighbors < 1) throw std::invalid_argument("neighbor count must be >= 1");
  if (k < 0 || k > n_neighbors) throw std::out_of_range("neighbor count k outside 0..N");
  if (s != 0 && s != 1) throw std::invalid_argument("strategy must be 0 or 1");
  const double nk = static_cast<double>(n_neighbors - k);
  const double kk = static_cast<double>(k);
  return s == 0 ? nk * game.a + kk * game.b : nk * game.c + kk * game.d;
}

RankTable derive_rank_table(const GameMatrix& game, int n_neighbors) {
  if (!(std::isfinite(game.a) && std::isfinite(game.b) && std::isfinite(game.c) && std::isfinite(game.d)))
    throw std::invalid_argument("game payoffs must be finite");

  struct Entry {
    double value;
    int s;
    int k;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(2 * (n_neighbors + 1)));
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k <= n_neighbors; ++k) entries.push_back({payoff(game, s, k, n_neighbors), s, k});

  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.value != y.value) return x.value < y.value;
    return std::pair(x.s, x.k) < std::pair(y.s, y.k);
  });

  std::vector<std::vector<NonGenericGame::Cell>> collisions;
  for (std::size_t i = 0; i + 1 < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].value == entries[i].value) ++j;
    if (j - i > 1) {
      std::vector<NonGenericGame::Cell> group;
      for (std::size_t t = i; t < j; ++t) group.push_back({entries[t].s, entries[t].k});
      collisions.push_back(std::move(group));
    }
    i = j;
  }
  if (!collisions.empty()) {
    std::ostringstream msg;
    msg << "non-generic game: equal payoff sums for";
    for (const auto& group : collisions) {
      msg << " {";
      for (std::size_t t = 0; t < group.size(); ++t)
        msg << (t ? ", " : "") << "(s=" << group[t].s << ",k=" << group[t].k << ")";
      msg << "}";
    }
    throw NonGenericGame(msg.str(), std::move(collisions));
  }

  std::vector<int> row0(static_cast<std::size_t>(n_neighbors) + 1);
  std::vector<int> row1(static_cast<std::size_t>(n_neighbors) + 1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const int rank = static_cast<int>(i) + 1;  // ascending payoff, rank 1 = worst
    auto& row = entries[i].s == 0 ? row0 : row1;
    row[static_cast<std::size_t>(entries[i].k)] = rank;
  }
  return RankTable(std::move(row0), std::move(row1));
}

RankMatrix derive_rank_matrix(const GameMatrix& game, const Topology& topo) {
  return RankMatrix(topo.kind(), derive_rank_table(game, topo.neighbor_count()));
}

bool rows_monotone(const RankTable& table) {
  for (int s = 0; s < 2; ++s) {
    const bool increasing = table.at(s, 1) > table.at(s, 0);
    for (int k = 0; k + 1 < table.columns(); ++k) {
      const bool up = table.at(s, k + 1) > table.at(s, k);
      if (up != increasing) return false;
    }
  }
  return true;
}

bool rows_monotone(const RankMatrix& rm) { return rows_monotone(rm.table); }

RankTable complement_transform(const RankTable& table) {
  const int n = table.neighbor_count();
  std::vector<int> row0(static_cast<std::size_t>(n) + 1);
  std::vector<int> row1(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    row0[static_cast<std::size_t>(k)] = table.at(1, n - k);
    row1[static_cast<std::size_t>(k)] = table.at(0, n - k);
  }
  return RankTable(std::move(row0), std::move(row1));
}

RankMatrix complement_transform(const RankMatrix& rm) {
  return RankMatrix(rm.kind, complement_transform(rm.table));
}

RankTable random_rank_table(int n_neighbors, std::uint64_t seed) {
  if (n_neighbors < 1) throw std::invalid_argument("neighbor count must be >= 1");
  const int total = 2 * (n_neighbors + 1);
  std::vector<int> values(static_cast<std::size_t>(total));
  std::iota(values.begin(), values.end(), 1);
  Rng rng(seed);
  for (std::size_t i = values.size() - 1; i >= 1; --i) {
    const std::uint64_t j = rng.next_below(i + 1);
    std::swap(values[i], values[j]);
  }
  std::vector<int> row0(values.begin(), values.begin() + n_neighbors + 1);
  std::vector<int> row1(values.begin() + n_neighbors + 1, values.end());
  return RankTable(std::move(row0), std::move(row1));
}

RankMatrix random_rank_matrix(const Topology& topo, std::uint64_t seed) {
  return RankMatrix(topo.kind(), random_rank_table(topo.neighbor_count(), seed));
}

std::string serialize_rank_matrix(const RankMatrix& rm) {
  std::string out(to_token(rm.kind));
  out.push_back('\n');
  out += join_row(rm.table, 0);
  out.push_back('\n');
  out += join_row(rm.table, 1);
  out.push_back('\n');
  return out;
}

RankMatrix parse_rank_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) throw ParseError("rank matrix: missing trailing newline");
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.size() != 3) throw ParseError("rank matrix: expected 3 lines (topology, row 0, row 1)");
  const TopologyKind kind = parse_topology_kind(lines[0]);
  const int expected = Topology(kind).neighbor_count() + 1;
  std::vector<int> row0 = parse_int_row(lines[1]);
  std::vector<int> row1 = parse_int_row(lines[2]);
  if (static_cast<int>(row0.size()) != expected || static_cast<int>(row1.size()) != expected)
    throw ParseError("rank matrix: expected " + std::to_string(expected) + " entries per row for " +
                     std::string(lines[0]));
  try {
    return RankMatrix(kind, RankTable(std::move(row0), std::move(row1)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("rank matrix: ") + e.what());
  }
}

std::string serialize_rank_rows(const RankTable& table) {
  return join_row(table, 0) + "/" + join_row(table, 1);
}

RankTable parse_rank_rows(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("rank rows: expected 'ROW0/ROW1'");
  std::vector<int> row0 = parse_int_row(text.substr(0, slash));
  std::vector<int> row1 = parse_int_row(text.substr(slash + 1));
  if (row0.size() != row1.size() || row0.size() < 2) throw ParseError("rank rows: rows must have equal length >= 2");
  try {
    return RankTable(std::move(row0), std::move(row1));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("rank rows: ") + e.what());
  }
}

SlackSolution solve_rank_slack_lp(const RankTable& table) {
  using linprog::Rat;
  const int n = table.neighbor_count();
  const int total = table.size();

  // Variables y = (a+, a-, b+, b-, c+, c-, d+, d-, t+, t-), all >= 0.
  // Ordering rows: payoff(rank r+1) - payoff(rank r) >= t, rewritten as
  // -D.(v+ - v-) + t+ - t- <= 0. Box rows keep |v_i| <= 1 so the homogeneous
  // system has a bounded optimum.
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (int r = 1; r < total; ++r) {
    const auto lo = payoff_coeffs(table.strategy_of_rank(r), table.count_of_rank(r), n);
    const auto hi = payoff_coeffs(table.strategy_of_rank(r + 1), table.count_of_rank(r + 1), n);
    std::vector<Rat> row(10);
    for (int i = 0; i < 4; ++i) {
      const long long d = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
      row[static_cast<std::size_t>(2 * i)] = Rat(-d);
      row[static_cast<std::size_t>(2 * i + 1)] = Rat(d);
    }
    row[8] = Rat(1);
    row[9] = Rat(-1);
    A.push_back(std::move(row));
    b.push_back(Rat(0));
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<Rat> up(10), down(10);
    up[static_cast<std::size_t>(2 * i)] = Rat(1);
    up[static_cast<std::size_t>(2 * i + 1)] = Rat(-1);
    down[static_cast<std::size_t>(2 * i)] = Rat(-1);
    down[static_cast<std::size_t>(2 * i + 1)] = Rat(1);
    A.push_back(std::move(up));
    b.push_back(Rat(1));
    A.push_back(std::move(down));
    b.push_back(Rat(1));
  }
  std::vector<Rat> c(10);
  c[8] = Rat(1);
  c[9] = Rat(-1);

  const linprog::Solution sol = linprog::maximize(A, b, c);
  SlackSolution out;
  out.slack = sol.objective;
  for (int i = 0; i < 4; ++i)
    out.game[static_cast<std::size_t>(i)] = sol.x[static_cast<std::size_t>(2 * i)] - sol.x[static_cast<std::size_t>(2 * i + 1)];
  return out;
}

RealizabilityResult is_linear_realizable(const RankTable& table) {
  RealizabilityResult result;
  const SlackSolution sol = solve_rank_slack_lp(table);
  const linprog::Rat tolerance(1, 1000000000);
  result.margin = sol.slack.to_double();
  if (!(sol.slack > tolerance)) return result;

  const GameMatrix witness{sol.game[0].to_double(), sol.game[1].to_double(), sol.game[2].to_double(),
                           sol.game[3].to_double()};
  // Certify: the double-rounded witness must re-derive the exact table. The
  // LP slack dwarfs double rounding, so a failure here means the solver went
  // wrong, not the query.
  try {
    if (!(derive_rank_table(witness, table.neighbor_count()) == table))
      throw linprog::SolverError("witness failed certification: re-derivation mismatch");
  } catch (const NonGenericGame&) {
    throw linprog::SolverError("witness failed certification: rounded witness is non-generic");
  }
  result.realizable = true;
  result.witness = witness;
  return result;
}

RealizabilityResult is_linear_realizable(const RankMatrix& rm) { return is_linear_realizable(rm.table); }

}  // namespace nsg
