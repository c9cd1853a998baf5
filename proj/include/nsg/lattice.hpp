#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsg/errors.hpp"

namespace nsg {

enum class TopologyKind { moore8, vonneumann4, hex6 };

std::string_view to_token(TopologyKind kind);
TopologyKind parse_topology_kind(std::string_view token);

struct Offset {
  int dr = 0;
  int dc = 0;
};

struct Coord {
  int r = 0;
  int c = 0;
  bool operator==(const Coord&) const = default;
};

// Neighborhood structure on a rectangular torus. hex6 uses the odd-r offset
// layout, so its displacement set depends on the parity of the cell's row.
class Topology {
 public:
  explicit Topology(TopologyKind kind);

  TopologyKind kind() const { return kind_; }
  int neighbor_count() const { return n_; }

  // Displacements (dr, dc) for a cell whose row index has the given parity.
  // moore8 and vonneumann4 ignore the argument.
  std::span<const Offset> offsets(int row) const;

  // Dynamics need rows, cols >= 3 so every offset lands on a distinct cell;
  // hex6 additionally needs an even row count so offset parity survives
  // vertical wrap.
  bool admissible(int rows, int cols) const;
  void require_admissible(int rows, int cols) const;

 private:
  TopologyKind kind_;
  int n_;
};

// Binary strategy grid on a torus, row-major. Any dimensions >= 1 are
// storable (frame export handles tiny grids); the dynamics entry points
// enforce admissibility via Topology::require_admissible.
class Grid {
 public:
  Grid(int rows, int cols, std::uint8_t fill = 0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint8_t at(int r, int c) const { return cells_[idx(r, c)]; }
  void set(int r, int c, std::uint8_t v) { cells_[idx(r, c)] = v; }
  std::uint8_t at_wrapped(int r, int c) const;

  const std::vector<std::uint8_t>& cells() const { return cells_; }
  bool operator==(const Grid&) const = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  std::vector<std::uint8_t> cells_;
};

// Initial condition for make_grid. `bernoulli` draws cells row-major from the
// seeded generator; `explicit_cells` carries a grid in the text format below.
struct InitSpec {
  enum class Kind { uniform, bernoulli, explicit_cells, center };

  Kind kind = Kind::uniform;
  std::uint8_t value = 0;  // uniform fill / center strategy
  double p = 0.5;          // bernoulli parameter
  std::string text;        // explicit grid text

  static InitSpec uniform(std::uint8_t s);
  static InitSpec bernoulli(double p);
  static InitSpec explicit_cells(std::string grid_text);
  static InitSpec center(std::uint8_t s = 1);

  // "uniform0" | "uniform1" | "bernoulli:P" | "center". File-backed inits are
  // the caller's job: read the file, pass explicit_cells.
  static InitSpec parse(std::string_view token);
};

// Deterministic given (init, seed). Requires rows, cols >= 3.
Grid make_grid(int rows, int cols, const InitSpec& init, std::uint64_t seed);

// Grid text format: one '0'/'1' line per row, each newline-terminated.
Grid parse_grid(std::string_view text);
std::string serialize_grid(const Grid& g);

std::vector<Coord> neighbors(const Topology& topo, Coord cell, int rows, int cols);

// Number of type-1 neighbors of `cell`; the cell itself is not counted.
int count_type1_neighbors(const Grid& g, const Topology& topo, Coord cell);

Grid complement(const Grid& g);
Grid cyclic_shift(const Grid& g, int dr, int dc);

// Row-major bit packing, each row padded to a byte boundary, MSB first (the
// binary-PBM raster layout). The digest is FNV-1a 64 over rows, cols and the
// packed bytes; cycle detection confirms digest hits by full comparison, so
// correctness never rests on the hash.
std::vector<std::uint8_t> pack_grid_bits(const Grid& g);
std::uint64_t grid_digest(const Grid& g);

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL);

inline int wrap_index(int x, int m) {
  const int r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace nsg
