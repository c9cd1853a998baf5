#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "nsg/lattice.hpp"
#include "nsg/rankmodel.hpp"

namespace nsg {

// Which imitation variant drives phase two. best_in_neighborhood adopts the
// strategy of the maximum-rank cell among self and neighbors (the default);
// any_better_opponent flips whenever some opposite-strategy neighbor strictly
// outranks the cell. The two disagree on configurations where the best
// neighbor shares the cell's strategy but a weaker opponent still beats it.
enum class UpdateRule { best_in_neighborhood, any_better_opponent };

std::string_view to_token(UpdateRule rule);
UpdateRule parse_update_rule(std::string_view token);

// Per-cell ranks after the scoring phase; same shape as the grid it scored.
struct RankField {
  int rows = 0;
  int cols = 0;
  std::vector<int> values;

  int at(int r, int c) const { return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  int at_wrapped(int r, int c) const { return at(wrap_index(r, rows), wrap_index(c, cols)); }
};

// Phase one: rankfield(cell) = rm(grid(cell), count of type-1 neighbors).
RankField score_phase(const Grid& g, const RankMatrix& rm, const Topology& topo);

// Phase two: synchronous imitation from the pre-step state.
Grid imitation_phase(const Grid& g, const RankField& field, const Topology& topo, UpdateRule rule);

// One full update: score, then imitate.
Grid step(const Grid& g, const RankMatrix& rm, const Topology& topo, UpdateRule rule);

struct StepMetrics {
  int step = 0;           // 1-based step index
  double activity = 0.0;  // fraction of cells that changed in this step
  double density = 0.0;   // fraction of type-1 cells after the step
  std::uint64_t digest = 0;
};

struct RunRecord {
  Grid final_grid;
  int steps = 0;
  std::uint64_t initial_digest = 0;
  double initial_density = 0.0;
  std::vector<StepMetrics> metrics;  // one entry per applied step
};

using StepObserver = std::function<void(int step_index, const Grid& g, const StepMetrics& m)>;

// Applies step exactly `steps` times, invoking the observer after each one.
RunRecord run(const Grid& initial, const RankMatrix& rm, const Topology& topo, UpdateRule rule, int steps,
              const StepObserver& observer = {});

// 5x5 window centered on a cell, row-major; cells[12] is the center. This
// covers the radius-2 influence set for every supported topology (imitation
// reads neighbors' scores, which read neighbors of neighbors). For hex6 the
// offsets alternate by row, so the parity of the window's middle row matters.
struct LocalPatch {
  std::vector<std::uint8_t> cells;
  int center_row_parity = 0;

  std::uint8_t at(int dr, int dc) const {
    return cells[static_cast<std::size_t>((dr + 2) * 5 + (dc + 2))];
  }
};

// The center cell's next strategy computed from the patch alone; equals what
// step produces at that cell. Throws on a patch that is not 5x5.
int ca_local_next(const LocalPatch& patch, const RankMatrix& rm, const Topology& topo, UpdateRule rule);

// Cut the 5x5 window around `center` out of a torus with rows, cols >= 5.
LocalPatch extract_patch(const Grid& g, const Topology& topo, Coord center);

}  // namespace nsg
