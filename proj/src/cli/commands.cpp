#include "nsg/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "nsg/analysis.hpp"
#include "nsg/frames.hpp"

namespace nsg {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string full_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

// Shared error-to-exit-code mapping so every subcommand reports identically.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse_error;
  } catch (const NonGenericGame& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::non_generic;
  } catch (const linprog::SolverError& e) {
    err << "error: solver failure: " << e.what() << "\n";
    return exit_code::solver_failure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

std::string classification_token(const std::optional<CycleDetector::Repeat>& repeat) {
  if (!repeat) return "none";
  if (repeat->period == 1) return "fixed_point:" + std::to_string(repeat->first_index);
  return "periodic:" + std::to_string(repeat->period) + ":" + std::to_string(repeat->first_index);
}

}  // namespace

int cmd_derive(const std::string& game, const std::string& topology, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const TopologyKind kind = parse_topology_kind(topology);
    const RankMatrix rm = derive_rank_matrix(parse_game(game), Topology(kind));
    out << serialize_rank_matrix(rm);
    return exit_code::ok;
  });
}

int cmd_check_linear(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    RunManifest source;
    source.ranks = "file:" + path;
    const RankMatrix rm = resolve_rank_matrix(source);
    const RealizabilityResult result = is_linear_realizable(rm);
    if (result.realizable) {
      const GameMatrix& w = *result.witness;
      out << "REALIZABLE witness=" << full_double(w.a) << "," << full_double(w.b) << "," << full_double(w.c)
          << "," << full_double(w.d) << " margin=" << full_double(*result.margin) << "\n";
      return exit_code::ok;
    }
    out << "NOT_REALIZABLE margin=" << (result.margin ? full_double(*result.margin) : "none") << "\n";
    return exit_code::not_realizable;
  });
}

int cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    validate(manifest);
    const RankMatrix rm = resolve_rank_matrix(manifest);
    const Topology topo(rm.kind);
    const UpdateRule rule = parse_update_rule(manifest.rule);
    const FrameFormat format = parse_frame_format(manifest.format);
    const Grid initial = resolve_initial_grid(manifest);
    topo.require_admissible(initial.rows(), initial.cols());

    const std::filesystem::path out_dir(manifest.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    int frames = 0;
    write_file(out_dir / frame_filename(0, format), export_frame(initial, format));
    ++frames;

    CycleDetector detector;
    std::optional<CycleDetector::Repeat> repeat = detector.feed(initial);
    const RunRecord record =
        run(initial, rm, topo, rule, manifest.steps, [&](int step_index, const Grid& g, const StepMetrics&) {
          if (!repeat) repeat = detector.feed(g);
          if (step_index % manifest.stride == 0) {
            write_file(out_dir / frame_filename(step_index, format), export_frame(g, format));
            ++frames;
          }
        });

    out << "frames=" << frames << " steps=" << record.steps << " final_density="
        << fixed6(record.metrics.empty() ? record.initial_density : record.metrics.back().density)
        << " final_digest=" << hex64(grid_digest(record.final_grid))
        << " classification=" << classification_token(repeat) << "\n";
    return exit_code::ok;
  });
}

int cmd_classify(const RunManifest& manifest, int horizon, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    validate(manifest);
    const RankMatrix rm = resolve_rank_matrix(manifest);
    const Topology topo(rm.kind);
    const UpdateRule rule = parse_update_rule(manifest.rule);
    const Grid initial = resolve_initial_grid(manifest);
    topo.require_admissible(initial.rows(), initial.cols());

    const Classification cls = classify(initial, rm, topo, rule, horizon);
    out << "classification=" << cls.to_token() << " steps_run=" << cls.activity_series.size()
        << " final_density=" << fixed6(cls.density_series.back()) << "\n";
    return exit_code::ok;
  });
}

int cmd_explore(const std::string& topology, const std::string& rule, int budget, std::uint64_t seed, int rows,
                int cols, int horizon, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Topology topo(parse_topology_kind(topology));
    const UpdateRule update_rule = parse_update_rule(rule);
    const std::vector<ExploreEntry> entries = explore(topo, update_rule, budget, seed, rows, cols, horizon);
    for (const ExploreEntry& e : entries) {
      out << "ranks=" << serialize_rank_rows(e.matrix.table) << " score=" << fixed6(e.score)
          << " class=" << e.classification.to_token() << " survived=" << e.survived
          << " tail_activity=" << fixed6(e.tail_activity) << " final_density=" << fixed6(e.final_density)
          << "\n";
    }
    return exit_code::ok;
  });
}

int cmd_count(const std::string& topology, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Topology topo(parse_topology_kind(topology));
    out << count_rank_matrices(topo) << "\n";
    return exit_code::ok;
  });
}

}  // namespace nsg
