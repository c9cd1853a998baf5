#pragma once

#include <cstdint>
#include <string>

#include "nsg/engine.hpp"
#include "nsg/lattice.hpp"
#include "nsg/rankmodel.hpp"

namespace nsg {

// Everything a simulation run needs. Exactly one rank-matrix source may be
// set: "file:PATH", "inline:ROW0/ROW1" (via ranks) or a comma-separated game
// (via game). Loadable from a JSON file; command-line flags win on conflict.
struct RunManifest {
  std::string topology;  // empty = unspecified (moore8, or the rank file's token)
  std::string ranks;  // "file:PATH" | "inline:ROW0/ROW1"
  std::string game;   // "a,b,c,d"
  int rows = 100;
  int cols = 100;
  std::string init = "bernoulli:0.5";
  std::uint64_t seed = 0;
  std::string rule = "best";
  int steps = 100;
  std::string out_dir = ".";
  std::string format = "pbm-ascii";
  int stride = 1;
};

RunManifest load_manifest_json(const std::string& path);

// Throws ParseError / std::invalid_argument on violated invariants.
void validate(const RunManifest& manifest);

// Parse "a,b,c,d". Plain decimal literals are rescaled by a common power of
// ten to exact integer payoffs (the ranking is invariant under positive
// affine maps), which keeps derivations bit-stable; anything else falls back
// to ordinary double parsing.
GameMatrix parse_game(std::string_view text);

// Resolve the rank-matrix source: file contents, inline rows, or derivation
// from a game. manifest.topology supplies the kind for inline/game sources;
// a file source brings its own token, which must agree when both are given.
RankMatrix resolve_rank_matrix(const RunManifest& manifest);

Grid resolve_initial_grid(const RunManifest& manifest);

}  // namespace nsg
