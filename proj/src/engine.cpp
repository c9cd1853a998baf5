#include "nsg/engine.hpp"

#include <stdexcept>

namespace nsg {

namespace {

double fraction_differing(const Grid& g1, const Grid& g2) {
  std::size_t diff = 0;
  for (std::size_t i = 0; i < g1.cells().size(); ++i)
    if (g1.cells()[i] != g2.cells()[i]) ++diff;
  return static_cast<double>(diff) / static_cast<double>(g1.cells().size());
}

double fraction_ones(const Grid& g) {
  std::size_t ones = 0;
  for (std::uint8_t v : g.cells()) ones += v;
  return static_cast<double>(ones) / static_cast<double>(g.cells().size());
}

void require_match(const Grid& g, const RankMatrix& rm, const Topology& topo) {
  if (rm.kind != topo.kind())
    throw std::invalid_argument("rank matrix topology " + std::string(to_token(rm.kind)) +
                                " does not match " + std::string(to_token(topo.kind())));
  topo.require_admissible(g.rows(), g.cols());
}

}  // namespace

std::string_view to_token(UpdateRule rule) {
  return rule == UpdateRule::best_in_neighborhood ? "best" : "any-better";
}

UpdateRule parse_update_rule(std::string_view token) {
  if (token == "best") return UpdateRule::best_in_neighborhood;
  if (token == "any-better") return UpdateRule::any_better_opponent;
  throw ParseError("unknown update rule token: " + std::string(token));
}

RankField score_phase(const Grid& g, const RankMatrix& rm, const Topology& topo) {
  require_match(g, rm, topo);
  RankField field;
  field.rows = g.rows();
  field.cols = g.cols();
  field.values.resize(g.cells().size());
  std::size_t i = 0;
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      const int k = count_type1_neighbors(g, topo, {r, c});
      field.values[i++] = rm.at(g.at(r, c), k);
    }
  }
  return field;
}

Grid imitation_phase(const Grid& g, const RankField& field, const Topology& topo, UpdateRule rule) {
  if (field.rows != g.rows() || field.cols != g.cols())
    throw std::invalid_argument("rank field shape does not match grid");
  topo.require_admissible(g.rows(), g.cols());

  Grid next(g.rows(), g.cols(), 0);
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      const std::uint8_t own = g.at(r, c);
      const int own_rank = field.at(r, c);
      if (rule == UpdateRule::best_in_neighborhood) {
        // Equal ranks imply equal (s, k), so every maximal cell shares one
        // strategy; keeping the first maximum seen changes nothing.
        int best_rank = own_rank;
        std::uint8_t best_strategy = own;
        for (const Offset& o : topo.offsets(r)) {
          const int nr = field.at_wrapped(r + o.dr, c + o.dc);
          if (nr > best_rank) {
            best_rank = nr;
            best_strategy = g.at_wrapped(r + o.dr, c + o.dc);
          }
        }
        next.set(r, c, best_strategy);
      } else {
        bool flip = false;
        for (const Offset& o : topo.offsets(r)) {
          if (g.at_wrapped(r + o.dr, c + o.dc) != own && field.at_wrapped(r + o.dr, c + o.dc) > own_rank) {
            flip = true;
            break;
          }
        }
        next.set(r, c, flip ? static_cast<std::uint8_t>(1 - own) : own);
      }
    }
  }
  return next;
}

Grid step(const Grid& g, const RankMatrix& rm, const Topology& topo, UpdateRule rule) {
  return imitation_phase(g, score_phase(g, rm, topo), topo, rule);
}

RunRecord run(const Grid& initial, const RankMatrix& rm, const Topology& topo, UpdateRule rule, int steps,
              const StepObserver& observer) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  require_match(initial, rm, topo);

  RunRecord record{initial, 0, grid_digest(initial), fraction_ones(initial), {}};
  record.metrics.reserve(static_cast<std::size_t>(steps));
  Grid current = initial;
  for (int t = 1; t <= steps; ++t) {
    Grid next = step(current, rm, topo, rule);
    StepMetrics m;
    m.step = t;
    m.activity = fraction_differing(current, next);
    m.density = fraction_ones(next);
    m.digest = grid_digest(next);
    current = std::move(next);
    record.metrics.push_back(m);
    if (observer) observer(t, current, m);
  }
  record.final_grid = std::move(current);
  record.steps = steps;
  return record;
}

int ca_local_next(const LocalPatch& patch, const RankMatrix& rm, const Topology& topo, UpdateRule rule) {
  if (patch.cells.size() != 25) throw std::invalid_argument("local patch must hold 5x5 cells");
  if (rm.kind != topo.kind())
    throw std::invalid_argument("rank matrix topology does not match");

  // Count and score entirely inside the window; rows -1..1 only ever touch
  // rows -2..2, so no wrap is involved.
  const auto count_at = [&](int dr, int dc) {
    int k = 0;
    for (const Offset& o : topo.offsets(patch.center_row_parity + dr + 2))
      k += patch.at(dr + o.dr, dc + o.dc);
    return k;
  };
  const auto rank_at = [&](int dr, int dc) { return rm.at(patch.at(dr, dc), count_at(dr, dc)); };

  const std::uint8_t own = patch.at(0, 0);
  const int own_rank = rank_at(0, 0);
  if (rule == UpdateRule::best_in_neighborhood) {
    int best_rank = own_rank;
    int best_strategy = own;
    for (const Offset& o : topo.offsets(patch.center_row_parity + 2)) {
      const int nr = rank_at(o.dr, o.dc);
      if (nr > best_rank) {
        best_rank = nr;
        best_strategy = patch.at(o.dr, o.dc);
      }
    }
    return best_strategy;
  }
  for (const Offset& o : topo.offsets(patch.center_row_parity + 2)) {
    if (patch.at(o.dr, o.dc) != own && rank_at(o.dr, o.dc) > own_rank) return 1 - own;
  }
  return own;
}

LocalPatch extract_patch(const Grid& g, const Topology& topo, Coord center) {
  topo.require_admissible(g.rows(), g.cols());
  if (g.rows() < 5 || g.cols() < 5)
    throw std::invalid_argument("patch extraction needs rows, cols >= 5");
  LocalPatch patch;
  patch.cells.resize(25);
  patch.center_row_parity = wrap_index(center.r, g.rows()) % 2;
  std::size_t i = 0;
  for (int dr = -2; dr <= 2; ++dr)
    for (int dc = -2; dc <= 2; ++dc) patch.cells[i++] = g.at_wrapped(center.r + dr, center.c + dc);
  return patch;
}

}  // namespace nsg
