#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nsg/analysis.hpp"
#include "nsg/commands.hpp"
#include "nsg/frames.hpp"

using namespace nsg;
namespace fs = std::filesystem;

namespace {

const std::string kPdFile = "moore8\n13 11 10 8 7 5 4 2 1\n18 17 16 15 14 12 9 6 3\n";
const std::string kNonlinearFile = "moore8\n12 8 16 14 9 3 6 1 10\n2 11 18 17 5 13 4 15 7\n";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("nsg_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("derive prints the rank matrix file and maps errors to exit codes") {
  std::ostringstream out, err;
  CHECK(cmd_derive("1.0,0.1,1.9,0.3", "moore8", out, err) == exit_code::ok);
  CHECK(out.str() == kPdFile);

  std::ostringstream out2, err2;
  CHECK(cmd_derive("1,1,1,1", "moore8", out2, err2) == exit_code::non_generic);
  CHECK(err2.str().find("non-generic") != std::string::npos);

  std::ostringstream out3, err3;
  CHECK(cmd_derive("1,2,3", "moore8", out3, err3) == exit_code::parse_error);

  // (4,1,3,2) on four neighbors ties at payoff 10 for (s=0,k=2) and
  // (s=1,k=2), so it is rejected rather than silently tie-broken.
  std::ostringstream out4, err4;
  CHECK(cmd_derive("4,1,3,2", "vonneumann4", out4, err4) == exit_code::non_generic);

  std::ostringstream out5, err5;
  CHECK(cmd_derive("4.0,1.1,3.2,2.3", "vonneumann4", out5, err5) == exit_code::ok);
  const RankMatrix rm = parse_rank_matrix(out5.str());
  CHECK(rm.kind == TopologyKind::vonneumann4);
  CHECK(rm.table.columns() == 5);
}

TEST_CASE("game strings with plain decimals are rescaled to exact integers") {
  CHECK(parse_game("1.0,0.1,1.9,0.3") == GameMatrix{10, 1, 19, 3});
  CHECK(parse_game("1,2,3,4") == GameMatrix{1, 2, 3, 4});
  CHECK(parse_game("-0.5,0.25,1,0") == GameMatrix{-50, 25, 100, 0});
  CHECK(parse_game("1e3,0.1,2,3").a == doctest::Approx(1000.0));
  CHECK_THROWS_AS(parse_game("1,2,3,x"), ParseError);
  CHECK_THROWS_AS(parse_game("1,2,3"), ParseError);
}

TEST_CASE("check-linear distinguishes realizable, unrealizable and malformed inputs") {
  TempDir dir("check");
  write_text(dir.path / "pd.rm", kPdFile);
  write_text(dir.path / "nl.rm", kNonlinearFile);
  write_text(dir.path / "bad.rm", "moore8\n1 2 3\n4 5 6\n");

  std::ostringstream out, err;
  CHECK(cmd_check_linear((dir.path / "pd.rm").string(), out, err) == exit_code::ok);
  CHECK(out.str().rfind("REALIZABLE witness=", 0) == 0);

  std::ostringstream out2, err2;
  CHECK(cmd_check_linear((dir.path / "nl.rm").string(), out2, err2) == exit_code::not_realizable);
  CHECK(out2.str().rfind("NOT_REALIZABLE", 0) == 0);

  std::ostringstream out3, err3;
  CHECK(cmd_check_linear((dir.path / "bad.rm").string(), out3, err3) == exit_code::parse_error);

  std::ostringstream out4, err4;
  CHECK(cmd_check_linear((dir.path / "missing.rm").string(), out4, err4) == exit_code::io_error);
}

TEST_CASE("count prints exact factorials") {
  std::ostringstream out, err;
  CHECK(cmd_count("moore8", out, err) == exit_code::ok);
  CHECK(out.str() == "6402373705728000\n");
  std::ostringstream out2, err2;
  CHECK(cmd_count("square9", out2, err2) == exit_code::parse_error);
}

TEST_CASE("simulate writes frames on the stride grid and a deterministic summary") {
  TempDir dir("simulate");
  RunManifest m;
  m.game = "1.0,0.1,1.9,0.3";
  m.topology = "moore8";
  m.rows = 9;
  m.cols = 9;
  m.init = "center";
  m.steps = 6;
  m.stride = 2;
  m.out_dir = (dir.path / "run").string();
  m.format = "pbm-ascii";

  std::ostringstream out, err;
  REQUIRE(cmd_simulate(m, out, err) == exit_code::ok);

  std::set<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir.path / "run")) files.insert(entry.path().filename().string());
  CHECK(files == std::set<std::string>{"frame_000000.pbm", "frame_000002.pbm", "frame_000004.pbm",
                                       "frame_000006.pbm"});

  // the lone defector fixes the torus at step 4; the summary sees the cycle
  const std::string summary = out.str();
  CHECK(summary.find("frames=4 steps=6") == 0);
  CHECK(summary.find("classification=fixed_point:4") != std::string::npos);
  CHECK(summary.find("final_density=1.000000") != std::string::npos);

  RunManifest again = m;
  again.out_dir = (dir.path / "run2").string();
  std::ostringstream out2, err2;
  REQUIRE(cmd_simulate(again, out2, err2) == exit_code::ok);
  CHECK(out2.str() == summary);
  for (const std::string& name : files)
    CHECK(read_bytes(dir.path / "run" / name) == read_bytes(dir.path / "run2" / name));
}

TEST_CASE("simulate with zero steps emits exactly the initial frame") {
  TempDir dir("simulate0");
  RunManifest m;
  m.ranks = "inline:13 11 10 8 7 5 4 2 1/18 17 16 15 14 12 9 6 3";
  m.rows = 5;
  m.cols = 5;
  m.init = "uniform0";
  m.steps = 0;
  m.out_dir = (dir.path / "out").string();

  std::ostringstream out, err;
  REQUIRE(cmd_simulate(m, out, err) == exit_code::ok);
  int frames = 0;
  for (const auto& entry : fs::directory_iterator(dir.path / "out")) {
    ++frames;
    CHECK(entry.path().filename().string() == "frame_000000.pbm");
  }
  CHECK(frames == 1);
  CHECK(out.str().find("frames=1 steps=0") == 0);
}

TEST_CASE("simulate rejects conflicting or missing rank sources") {
  RunManifest both;
  both.ranks = "inline:1 2/3 4";
  both.game = "1,2,3,4";
  std::ostringstream out, err;
  CHECK(cmd_simulate(both, out, err) == exit_code::parse_error);

  RunManifest none;
  std::ostringstream out2, err2;
  CHECK(cmd_simulate(none, out2, err2) == exit_code::parse_error);
}

TEST_CASE("classify subcommand reports the fixed point") {
  RunManifest m;
  m.game = "1.0,0.1,1.9,0.3";
  m.rows = 9;
  m.cols = 9;
  m.init = "center";
  std::ostringstream out, err;
  REQUIRE(cmd_classify(m, 50, out, err) == exit_code::ok);
  CHECK(out.str().find("classification=fixed_point:4") == 0);
  CHECK(out.str().find("final_density=1.000000") != std::string::npos);
}

TEST_CASE("explore emits one deterministic record per sample") {
  std::ostringstream out, err;
  REQUIRE(cmd_explore("moore8", "best", 3, 11, 8, 8, 20, out, err) == exit_code::ok);
  const std::string text = out.str();
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 3);
  CHECK(text.rfind("ranks=", 0) == 0);

  std::ostringstream out2, err2;
  REQUIRE(cmd_explore("moore8", "best", 3, 11, 8, 8, 20, out2, err2) == exit_code::ok);
  CHECK(out2.str() == text);

  std::ostringstream out3, err3;
  REQUIRE(cmd_explore("moore8", "best", 1, 5, 8, 8, 12, out3, err3) == exit_code::ok);
  int lines1 = 0;
  for (char ch : out3.str())
    if (ch == '\n') ++lines1;
  CHECK(lines1 == 1);
}

TEST_CASE("simulate reproduces the frozen trajectory of the published matrix") {
  TempDir dir("golden_sim");
  RunManifest m;
  m.ranks = "file:" + std::string(NSG_GOLDEN_DIR) + "/paper_moore8_a.rm";
  m.rows = 100;
  m.cols = 100;
  m.init = "bernoulli:0.5";
  m.seed = 7;
  m.steps = 200;
  m.stride = 200;
  m.format = "pbm-binary";
  m.out_dir = (dir.path / "out").string();

  std::ostringstream out, err;
  REQUIRE(cmd_simulate(m, out, err) == exit_code::ok);
  CHECK(out.str() ==
        "frames=2 steps=200 final_density=0.998200 final_digest=ad5aa9934c4c7c7e "
        "classification=periodic:8:13\n");
  const std::string frame = read_bytes(dir.path / "out" / "frame_000200.pbm");
  CHECK(frame.size() == 1311);
  CHECK(fnv1a64(reinterpret_cast<const std::uint8_t*>(frame.data()), frame.size()) == 0xf4634b2ba6343b9cULL);
}

TEST_CASE("slow: explore golden top record at the default exploration scale") {
  const auto entries =
      explore(Topology(TopologyKind::moore8), UpdateRule::best_in_neighborhood, 100, 1, 100, 100, 200);
  REQUIRE(entries.size() == 100);
  const ExploreEntry& top = entries.front();
  CHECK(top.sample_index == 59);
  CHECK(serialize_rank_rows(top.matrix.table) == "8 2 6 3 5 17 11 1 4/14 7 18 10 12 9 16 13 15");
  CHECK(top.score == doctest::Approx(293.206400).epsilon(1e-9));
  CHECK(top.survived == 200);
  CHECK(top.classification.to_token() == "undetermined:200");
}

TEST_CASE("manifest json loads and flags win by construction") {
  TempDir dir("manifest");
  write_text(dir.path / "run.json",
             R"({"topology":"hex6","ranks":"inline:4 13 1 5 10 2 7/9 14 12 11 6 8 3","rows":12,"cols":10,)"
             R"("init":"bernoulli:0.25","seed":9,"rule":"any-better","steps":7,"out":"frames",)"
             R"("format":"pbm-binary","stride":3})");
  const RunManifest m = load_manifest_json((dir.path / "run.json").string());
  CHECK(m.topology == "hex6");
  CHECK(m.rows == 12);
  CHECK(m.cols == 10);
  CHECK(m.init == "bernoulli:0.25");
  CHECK(m.seed == 9);
  CHECK(m.rule == "any-better");
  CHECK(m.steps == 7);
  CHECK(m.out_dir == "frames");
  CHECK(m.format == "pbm-binary");
  CHECK(m.stride == 3);
  CHECK_NOTHROW(validate(m));

  const RankMatrix rm = resolve_rank_matrix(m);
  CHECK(rm.kind == TopologyKind::hex6);

  write_text(dir.path / "bad.json", "{not json");
  CHECK_THROWS_AS(load_manifest_json((dir.path / "bad.json").string()), ParseError);
  CHECK_THROWS_AS(load_manifest_json((dir.path / "absent.json").string()), IoError);
  write_text(dir.path / "typo.json", R"({"topolgy":"hex6"})");
  CHECK_THROWS_AS(load_manifest_json((dir.path / "typo.json").string()), ParseError);
}

TEST_CASE("simulate reports an unwritable output directory as an io error") {
  TempDir dir("unwritable");
  write_text(dir.path / "blocker", "");
  RunManifest m;
  m.game = "1.0,0.1,1.9,0.3";
  m.rows = 5;
  m.cols = 5;
  m.init = "uniform0";
  m.steps = 1;
  m.out_dir = (dir.path / "blocker" / "sub").string();  // parent is a regular file
  std::ostringstream out, err;
  CHECK(cmd_simulate(m, out, err) == exit_code::io_error);
}

TEST_CASE("rank source resolution covers file, inline and game forms") {
  TempDir dir("ranks");
  write_text(dir.path / "pd.rm", kPdFile);

  RunManifest file_based;
  file_based.ranks = "file:" + (dir.path / "pd.rm").string();
  CHECK(resolve_rank_matrix(file_based).kind == TopologyKind::moore8);

  RunManifest conflicted = file_based;
  conflicted.topology = "hex6";
  CHECK_THROWS_AS(resolve_rank_matrix(conflicted), ParseError);

  RunManifest game_based;
  game_based.game = "1.0,0.1,1.9,0.3";
  CHECK(resolve_rank_matrix(game_based).table == parse_rank_matrix(kPdFile).table);

  RunManifest nonsense;
  nonsense.ranks = "inline-but-wrong";
  CHECK_THROWS_AS(resolve_rank_matrix(nonsense), ParseError);
}
