#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nsg/manifest.hpp"

namespace nsg {

// Documented exit codes shared by every subcommand.
namespace exit_code {
constexpr int ok = 0;
constexpr int failure = 1;         // unexpected internal error
constexpr int parse_error = 2;     // bad arguments or malformed input
constexpr int non_generic = 3;     // game with tied payoff sums
constexpr int not_realizable = 4;  // check-linear: no generating game exists
constexpr int solver_failure = 5;  // feasibility solver failed numerically
constexpr int io_error = 6;        // unreadable input / unwritable output
}  // namespace exit_code

int cmd_derive(const std::string& game, const std::string& topology, std::ostream& out, std::ostream& err);

int cmd_check_linear(const std::string& path, std::ostream& out, std::ostream& err);

int cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err);

int cmd_classify(const RunManifest& manifest, int horizon, std::ostream& out, std::ostream& err);

int cmd_explore(const std::string& topology, const std::string& rule, int budget, std::uint64_t seed, int rows,
                int cols, int horizon, std::ostream& out, std::ostream& err);

int cmd_count(const std::string& topology, std::ostream& out, std::ostream& err);

}  // namespace nsg
