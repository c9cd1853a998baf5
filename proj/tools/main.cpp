#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nsg/commands.hpp"

namespace {

// Wire the shared run flags onto a subcommand; returns the option pointers so
// the caller can tell set flags from defaults (flags win over manifest values
// only when actually given).
struct RunFlags {
  std::string manifest_path;
  std::string topology;
  std::string ranks;
  std::string game;
  int rows = 100;
  int cols = 100;
  std::string init = "bernoulli:0.5";
  std::uint64_t seed = 0;
  std::string rule = "best";
  int steps = 100;
  std::string out_dir = ".";
  std::string format = "pbm-ascii";
  int stride = 1;

  CLI::Option* manifest_opt = nullptr;
  CLI::Option* topology_opt = nullptr;
  CLI::Option* ranks_opt = nullptr;
  CLI::Option* game_opt = nullptr;
  CLI::Option* rows_opt = nullptr;
  CLI::Option* cols_opt = nullptr;
  CLI::Option* init_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* rule_opt = nullptr;
  CLI::Option* steps_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* stride_opt = nullptr;

  void attach(CLI::App* cmd, bool with_output) {
    manifest_opt = cmd->add_option("--manifest", manifest_path, "JSON manifest file; explicit flags win");
    topology_opt = cmd->add_option("--topology", topology, "moore8 | vonneumann4 | hex6");
    ranks_opt = cmd->add_option("--ranks", ranks, "rank-matrix source: file:PATH | inline:ROW0/ROW1");
    game_opt = cmd->add_option("--game", game, "derive ranks from payoffs a,b,c,d");
    rows_opt = cmd->add_option("--rows", rows, "grid rows");
    cols_opt = cmd->add_option("--cols", cols, "grid columns");
    init_opt = cmd->add_option("--init", init, "uniform0 | uniform1 | bernoulli:P | center | file:PATH");
    seed_opt = cmd->add_option("--seed", seed, "64-bit seed");
    rule_opt = cmd->add_option("--rule", rule, "best | any-better");
    steps_opt = cmd->add_option("--steps", steps, "steps to run");
    if (with_output) {
      out_opt = cmd->add_option("--out", out_dir, "output directory for frames");
      format_opt = cmd->add_option("--format", format, "pbm-ascii | pbm-binary");
      stride_opt = cmd->add_option("--stride", stride, "write every K-th frame");
    }
  }

  nsg::RunManifest resolve() const {
    nsg::RunManifest m;
    if (!manifest_path.empty()) m = nsg::load_manifest_json(manifest_path);
    if (topology_opt->count() > 0) m.topology = topology;
    if (ranks_opt->count() > 0) m.ranks = ranks;
    if (game_opt->count() > 0) m.game = game;
    if (rows_opt->count() > 0) m.rows = rows;
    if (cols_opt->count() > 0) m.cols = cols;
    if (init_opt->count() > 0) m.init = init;
    if (seed_opt->count() > 0) m.seed = seed;
    if (rule_opt->count() > 0) m.rule = rule;
    if (steps_opt->count() > 0) m.steps = steps;
    if (out_opt != nullptr && out_opt->count() > 0) m.out_dir = out_dir;
    if (format_opt != nullptr && format_opt->count() > 0) m.format = format;
    if (stride_opt != nullptr && stride_opt->count() > 0) m.stride = stride;
    return m;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlinear spatial games: simulation and rank-matrix analysis"};
  app.require_subcommand(1);

  std::string derive_game;
  std::string derive_topology = "moore8";
  CLI::App* derive = app.add_subcommand("derive", "print the rank matrix of a 2x2 game");
  derive->add_option("--game", derive_game, "payoffs a,b,c,d")->required();
  derive->add_option("--topology", derive_topology, "moore8 | vonneumann4 | hex6");

  std::string check_path;
  CLI::App* check = app.add_subcommand("check-linear", "decide whether a rank matrix comes from a linear game");
  check->add_option("file", check_path, "rank-matrix file")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run the dynamics and export frames");
  RunFlags sim_flags;
  sim_flags.attach(simulate, true);

  CLI::App* classify_cmd = app.add_subcommand("classify", "detect fixed points and cycles");
  RunFlags classify_flags;
  classify_flags.attach(classify_cmd, false);
  int horizon = 1000;
  classify_cmd->add_option("--horizon", horizon, "max steps to examine");

  std::string explore_topology = "moore8";
  std::string explore_rule = "best";
  int explore_budget = 100;
  std::uint64_t explore_seed = 0;
  int explore_rows = 100;
  int explore_cols = 100;
  int explore_horizon = 200;
  CLI::App* explore_cmd = app.add_subcommand("explore", "rank random matrices by how lively their dynamics stay");
  explore_cmd->add_option("--topology", explore_topology, "moore8 | vonneumann4 | hex6");
  explore_cmd->add_option("--rule", explore_rule, "best | any-better");
  explore_cmd->add_option("--budget", explore_budget, "number of random matrices");
  explore_cmd->add_option("--seed", explore_seed, "64-bit seed");
  explore_cmd->add_option("--rows", explore_rows, "grid rows");
  explore_cmd->add_option("--cols", explore_cols, "grid columns");
  explore_cmd->add_option("--horizon", explore_horizon, "steps per sample");

  std::string count_topology;
  CLI::App* count = app.add_subcommand("count", "print the number of rank matrices for a topology");
  count->add_option("--topology", count_topology, "moore8 | vonneumann4 | hex6")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nsg::exit_code::ok : nsg::exit_code::parse_error;
  }

  if (derive->parsed()) return nsg::cmd_derive(derive_game, derive_topology, std::cout, std::cerr);
  if (check->parsed()) return nsg::cmd_check_linear(check_path, std::cout, std::cerr);
  if (simulate->parsed()) return nsg::cmd_simulate(sim_flags.resolve(), std::cout, std::cerr);
  if (classify_cmd->parsed()) return nsg::cmd_classify(classify_flags.resolve(), horizon, std::cout, std::cerr);
  if (explore_cmd->parsed())
    return nsg::cmd_explore(explore_topology, explore_rule, explore_budget, explore_seed, explore_rows,
                            explore_cols, explore_horizon, std::cout, std::cerr);
  if (count->parsed()) return nsg::cmd_count(count_topology, std::cout, std::cerr);
  return nsg::exit_code::failure;
}
