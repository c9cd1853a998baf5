#include "nsg/lattice.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "nsg/rng.hpp"

namespace nsg {

namespace {

constexpr std::array<Offset, 8> kMoore8 = {{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
constexpr std::array<Offset, 4> kVonNeumann4 = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
// odd-r layout: even rows shift their diagonal neighbors left, odd rows right.
constexpr std::array<Offset, 6> kHexEven = {{{-1, -1}, {-1, 0}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}};
constexpr std::array<Offset, 6> kHexOdd = {{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, 0}, {1, 1}}};

}  // namespace

std::string_view to_token(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::moore8: return "moore8";
    case TopologyKind::vonneumann4: return "vonneumann4";
    case TopologyKind::hex6: return "hex6";
  }
  throw std::logic_error("bad TopologyKind");
}

TopologyKind parse_topology_kind(std::string_view token) {
  if (token == "moore8") return TopologyKind::moore8;
  if (token == "vonneumann4") return TopologyKind::vonneumann4;
  if (token == "hex6") return TopologyKind::hex6;
  throw ParseError("unknown topology token: " + std::string(token));
}

Topology::Topology(TopologyKind kind) : kind_(kind) {
  switch (kind) {
    case TopologyKind::moore8: n_ = 8; break;
    case TopologyKind::vonneumann4: n_ = 4; break;
    case TopologyKind::hex6: n_ = 6; break;
    default: throw std::logic_error("bad TopologyKind");
  }
}

std::span<const Offset> Topology::offsets(int row) const {
  switch (kind_) {
    case TopologyKind::moore8: return kMoore8;
    case TopologyKind::vonneumann4: return kVonNeumann4;
    case TopologyKind::hex6: return (row % 2 == 0) ? std::span<const Offset>(kHexEven) : std::span<const Offset>(kHexOdd);
  }
  throw std::logic_error("bad TopologyKind");
}

bool Topology::admissible(int rows, int cols) const {
  if (rows < 3 || cols < 3) return false;
  if (kind_ == TopologyKind::hex6 && rows % 2 != 0) return false;
  return true;
}

void Topology::require_admissible(int rows, int cols) const {
  if (!admissible(rows, cols)) {
    throw std::invalid_argument("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " is not admissible for topology " + std::string(to_token(kind_)));
  }
}

Grid::Grid(int rows, int cols, std::uint8_t fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

std::uint8_t Grid::at_wrapped(int r, int c) const {
  return at(wrap_index(r, rows_), wrap_index(c, cols_));
}

InitSpec InitSpec::uniform(std::uint8_t s) {
  InitSpec spec;
  spec.kind = Kind::uniform;
  spec.value = s;
  return spec;
}

InitSpec InitSpec::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli p must lie in [0, 1]");
  InitSpec spec;
  spec.kind = Kind::bernoulli;
  spec.p = p;
  return spec;
}

InitSpec InitSpec::explicit_cells(std::string grid_text) {
  InitSpec spec;
  spec.kind = Kind::explicit_cells;
  spec.text = std::move(grid_text);
  return spec;
}

InitSpec InitSpec::center(std::uint8_t s) {
  InitSpec spec;
  spec.kind = Kind::center;
  spec.value = s;
  return spec;
}

InitSpec InitSpec::parse(std::string_view token) {
  if (token == "uniform0") return uniform(0);
  if (token == "uniform1") return uniform(1);
  if (token == "center") return center(1);
  constexpr std::string_view prefix = "bernoulli:";
  if (token.substr(0, prefix.size()) == prefix) {
    const std::string_view num = token.substr(prefix.size());
    double p = 0.0;
    const auto* last = num.data() + num.size();
    const auto [ptr, ec] = std::from_chars(num.data(), last, p);
    if (ec != std::errc() || ptr != last) throw ParseError("bad bernoulli parameter: " + std::string(num));
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError("bernoulli p must lie in [0, 1]");
    return bernoulli(p);
  }
  throw ParseError("unknown init token: " + std::string(token));
}

Grid make_grid(int rows, int cols, const InitSpec& init, std::uint64_t seed) {
  if (rows < 3 || cols < 3) throw std::invalid_argument("make_grid requires rows >= 3 and cols >= 3");
  switch (init.kind) {
    case InitSpec::Kind::uniform:
      return Grid(rows, cols, init.value);
    case InitSpec::Kind::center: {
      Grid g(rows, cols, 0);
      g.set(rows / 2, cols / 2, init.value);
      return g;
    }
    case InitSpec::Kind::bernoulli: {
      Grid g(rows, cols, 0);
      Rng rng(seed);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) g.set(r, c, rng.bernoulli(init.p) ? 1 : 0);
      return g;
    }
    case InitSpec::Kind::explicit_cells: {
      Grid g = parse_grid(init.text);
      if (g.rows() != rows || g.cols() != cols) {
        throw std::invalid_argument("explicit listing is " + std::to_string(g.rows()) + "x" +
                                    std::to_string(g.cols()) + ", expected " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
      }
      return g;
    }
  }
  throw std::logic_error("bad InitSpec kind");
}

Grid parse_grid(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) throw ParseError("grid text: missing trailing newline");
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError("grid text: empty input");
  const std::size_t cols = lines[0].size();
  if (cols == 0) throw ParseError("grid text: empty row");
  for (const auto& line : lines) {
    if (line.size() != cols) throw ParseError("grid text: ragged rows");
    for (char ch : line)
      if (ch != '0' && ch != '1') throw ParseError(std::string("grid text: bad symbol '") + ch + "'");
  }
  Grid g(static_cast<int>(lines.size()), static_cast<int>(cols), 0);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) g.set(r, c, lines[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '1' ? 1 : 0);
  return g;
}

std::string serialize_grid(const Grid& g) {
  std::string out;
  out.reserve(static_cast<std::size_t>(g.rows()) * (static_cast<std::size_t>(g.cols()) + 1));
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) out.push_back(g.at(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::vector<Coord> neighbors(const Topology& topo, Coord cell, int rows, int cols) {
  topo.require_admissible(rows, cols);
  std::vector<Coord> out;
  out.reserve(static_cast<std::size_t>(topo.neighbor_count()));
  for (const Offset& o : topo.offsets(wrap_index(cell.r, rows)))
    out.push_back({wrap_index(cell.r + o.dr, rows), wrap_index(cell.c + o.dc, cols)});
  return out;
}

int count_type1_neighbors(const Grid& g, const Topology& topo, Coord cell) {
  int k = 0;
  for (const Offset& o : topo.offsets(cell.r))
    k += g.at_wrapped(cell.r + o.dr, cell.c + o.dc);
  return k;
}

Grid complement(const Grid& g) {
  Grid out(g.rows(), g.cols(), 0);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) out.set(r, c, g.at(r, c) ? 0 : 1);
  return out;
}

Grid cyclic_shift(const Grid& g, int dr, int dc) {
  Grid out(g.rows(), g.cols(), 0);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      out.set(wrap_index(r + dr, g.rows()), wrap_index(c + dc, g.cols()), g.at(r, c));
  return out;
}

std::vector<std::uint8_t> pack_grid_bits(const Grid& g) {
  const int bytes_per_row = (g.cols() + 7) / 8;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(g.rows()) * static_cast<std::size_t>(bytes_per_row), 0);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.at(r, c))
        out[static_cast<std::size_t>(r) * static_cast<std::size_t>(bytes_per_row) + static_cast<std::size_t>(c / 8)] |=
            static_cast<std::uint8_t>(0x80u >> (c % 8));
  return out;
}

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len, std::uint64_t h) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t grid_digest(const Grid& g) {
  std::uint8_t dims[16];
  for (int i = 0; i < 8; ++i) dims[i] = static_cast<std::uint8_t>((static_cast<std::uint64_t>(g.rows()) >> (8 * i)) & 0xff);
  for (int i = 0; i < 8; ++i) dims[8 + i] = static_cast<std::uint8_t>((static_cast<std::uint64_t>(g.cols()) >> (8 * i)) & 0xff);
  std::uint64_t h = fnv1a64(dims, sizeof(dims));
  const std::vector<std::uint8_t> packed = pack_grid_bits(g);
  return fnv1a64(packed.data(), packed.size(), h);
}

}  // namespace nsg
