#include "nsg/manifest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse one plain decimal literal ("-1.9", "0.3", "7"); returns the integer
// mantissa and the number of fractional digits, or nullopt for anything
// fancier (exponents, overlong digit strings).
struct DecimalParts {
  long long mantissa = 0;
  int frac_digits = 0;
};

std::optional<DecimalParts> parse_plain_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  long long mantissa = 0;
  int digits = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    seen_digit = true;
    if (++digits > 15) return std::nullopt;
    mantissa = mantissa * 10 + (ch - '0');
    if (seen_dot) ++frac_digits;
  }
  if (!seen_digit) return std::nullopt;
  return DecimalParts{negative ? -mantissa : mantissa, frac_digits};
}

}  // namespace

GameMatrix parse_game(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) throw ParseError("game must be four comma-separated payoffs a,b,c,d");

  std::array<std::optional<DecimalParts>, 4> decimals;
  bool all_plain = true;
  int max_frac = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    decimals[i] = parse_plain_decimal(parts[i]);
    if (!decimals[i]) {
      all_plain = false;
      break;
    }
    max_frac = std::max(max_frac, decimals[i]->frac_digits);
  }

  std::array<double, 4> values{};
  if (all_plain && max_frac <= 15) {
    // Rescale to exact integers; the derived ranking is unchanged and the
    // payoff arithmetic becomes exact in doubles.
    for (std::size_t i = 0; i < 4; ++i) {
      long long v = decimals[i]->mantissa;
      for (int p = decimals[i]->frac_digits; p < max_frac; ++p) v *= 10;
      values[i] = static_cast<double>(v);
    }
  } else {
    for (std::size_t i = 0; i < 4; ++i) {
      double v = 0.0;
      const auto* first = parts[i].data();
      const auto* last = parts[i].data() + parts[i].size();
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError("bad payoff value: " + std::string(parts[i]));
      values[i] = v;
    }
  }
  return GameMatrix{values[0], values[1], values[2], values[3]};
}

RunManifest load_manifest_json(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("manifest " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest " + path + ": expected a JSON object");

  static const std::array<std::string_view, 12> known = {"topology", "ranks", "game", "rows",   "cols",  "init",
                                                         "seed",     "rule",  "steps", "out",    "format", "stride"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("manifest " + path + ": unknown key '" + key + "'");
  }

  RunManifest m;
  try {
    if (doc.contains("topology")) m.topology = doc.at("topology").get<std::string>();
    if (doc.contains("ranks")) m.ranks = doc.at("ranks").get<std::string>();
    if (doc.contains("game")) m.game = doc.at("game").get<std::string>();
    if (doc.contains("rows")) m.rows = doc.at("rows").get<int>();
    if (doc.contains("cols")) m.cols = doc.at("cols").get<int>();
    if (doc.contains("init")) m.init = doc.at("init").get<std::string>();
    if (doc.contains("seed")) m.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("rule")) m.rule = doc.at("rule").get<std::string>();
    if (doc.contains("steps")) m.steps = doc.at("steps").get<int>();
    if (doc.contains("out")) m.out_dir = doc.at("out").get<std::string>();
    if (doc.contains("format")) m.format = doc.at("format").get<std::string>();
    if (doc.contains("stride")) m.stride = doc.at("stride").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + path + ": " + e.what());
  }
  return m;
}

void validate(const RunManifest& manifest) {
  const bool has_ranks = !manifest.ranks.empty();
  const bool has_game = !manifest.game.empty();
  if (has_ranks == has_game)
    throw ParseError("exactly one rank-matrix source required: --ranks or --game");
  if (manifest.steps < 0) throw ParseError("steps must be >= 0");
  if (manifest.stride < 1) throw ParseError("stride must be >= 1");
}

RankMatrix resolve_rank_matrix(const RunManifest& manifest) {
  // Empty topology means "unspecified": game/inline sources fall back to
  // moore8, file sources use the file's own token.
  const TopologyKind requested =
      manifest.topology.empty() ? TopologyKind::moore8 : parse_topology_kind(manifest.topology);
  if (!manifest.game.empty()) {
    return derive_rank_matrix(parse_game(manifest.game), Topology(requested));
  }
  constexpr std::string_view file_prefix = "file:";
  constexpr std::string_view inline_prefix = "inline:";
  const std::string_view source = manifest.ranks;
  if (source.substr(0, file_prefix.size()) == file_prefix) {
    const std::string path(source.substr(file_prefix.size()));
    RankMatrix rm = parse_rank_matrix(read_file(path));
    if (!manifest.topology.empty() && rm.kind != requested)
      throw ParseError("rank file topology " + std::string(to_token(rm.kind)) + " conflicts with requested " +
                       manifest.topology);
    return rm;
  }
  if (source.substr(0, inline_prefix.size()) == inline_prefix) {
    return RankMatrix(requested, parse_rank_rows(source.substr(inline_prefix.size())));
  }
  throw ParseError("rank-matrix source must start with file: or inline:");
}

Grid resolve_initial_grid(const RunManifest& manifest) {
  constexpr std::string_view file_prefix = "file:";
  const std::string_view init = manifest.init;
  if (init.substr(0, file_prefix.size()) == file_prefix) {
    const std::string path(init.substr(file_prefix.size()));
    return make_grid(manifest.rows, manifest.cols, InitSpec::explicit_cells(read_file(path)), manifest.seed);
  }
  return make_grid(manifest.rows, manifest.cols, InitSpec::parse(init), manifest.seed);
}

}  // namespace nsg
