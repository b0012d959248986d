#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "pcgym/cli/cli.hpp"
#include "test_util.hpp"

using namespace pcgym;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pcgym");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("usage errors exit 1, runtime failures exit 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"gen"}).code == kExitUsage);
  CHECK(cli({"gen", "--game", "pacman"}).code == kExitUsage);
  CHECK(cli({"gen", "--game", "zelda", "--difficulty", "1.5"}).code == kExitUsage);
  CHECK(cli({"rollout", "--game", "zelda", "--episodes", "0"}).code == kExitUsage);
  CHECK(cli({"rollout", "--game", "zelda", "--seed", "1", "--agent", "qtable:/nonexistent/q.bin"}).code ==
        kExitFailure);
  CHECK(cli({"render", "--level", "/nonexistent/level.txt"}).code == kExitFailure);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("gen writes levels and a manifest deterministically") {
  const auto a = testing::scratch("cli_gen_a");
  const auto b = testing::scratch("cli_gen_b");
  for (const auto& dir : {a, b}) {
    const Result r = cli({"gen", "--game", "boulderdash", "--difficulty", "0.5", "--count", "3", "--seed", "9",
                          "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
  }
  for (const char* f : {"boulderdash_0000.txt", "boulderdash_0001.txt", "boulderdash_0002.txt", "manifest.csv"}) {
    REQUIRE(std::filesystem::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const Level l = load_level_file(a / "boulderdash_0001.txt");
  CHECK(l.game() == Game::Boulderdash);
  CHECK(l.difficulty() == 0.5);

  const Result missing_seed = cli({"gen", "--game", "zelda", "--out", testing::scratch("cli_gen_c").string()});
  CHECK(missing_seed.code == kExitOk);
  CHECK(missing_seed.err.rfind("seed: ", 0) == 0);
}

TEST_CASE("render prints the level") {
  const auto dir = testing::scratch("cli_render");
  const Result r = cli({"render", "--level", (testing::reference_dir() / "zelda" / "lv0.txt").string(), "--svg",
                        (dir / "lv0.svg").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find('A') != std::string::npos);
  CHECK(r.out.back() == '\n');
  CHECK(slurp(dir / "lv0.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("rollout is reproducible and traces steps") {
  const auto dir = testing::scratch("cli_rollout");
  auto run = [&](const std::string& trace) {
    return cli({"rollout", "--game", "frogs", "--difficulty", "0.5", "--episodes", "4", "--seed", "3", "--max-steps",
                "60", "--trace", (dir / trace).string()});
  };
  const Result a = run("a.jsonl");
  const Result b = run("b.jsonl");
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(slurp(dir / "a.jsonl") == slurp(dir / "b.jsonl"));
  CHECK(a.out.find("episodes 4") != std::string::npos);
  CHECK(a.out.find("win_rate ") != std::string::npos);
}

TEST_CASE("environment variables fill options") {
  setenv("PCGYM_EPISODES", "2", 1);
  const Result r = cli({"rollout", "--game", "zelda", "--seed", "1", "--max-steps", "20"});
  unsetenv("PCGYM_EPISODES");
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("episodes 2\n") != std::string::npos);
}

TEST_CASE("train with the always-win stub climbs to the top") {
  const auto dir = testing::scratch("cli_train");
  const Result r = cli({"train", "--game", "zelda", "--agent", "always-win-stub", "--episodes", "100", "--workers",
                        "1", "--seed", "1", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("final difficulty 1.00") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "run.jsonl"));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
}

TEST_CASE("train a small Q-learner and evaluate its snapshot") {
  const auto dir = testing::scratch("cli_qlearn");
  const Result t = cli({"train", "--game", "zelda", "--mode", "level", "--episodes", "200", "--workers", "1",
                        "--seed", "2", "--max-steps", "50", "--reference-dir", testing::reference_dir().string(),
                        "--out", dir.string()});
  REQUIRE(t.code == kExitOk);
  REQUIRE(std::filesystem::exists(dir / "qtable.bin"));
  const Result e = cli({"evaluate", "--game", "zelda", "--agent", "random", "--agent",
                        "q=qtable:" + (dir / "qtable.bin").string(), "--episodes", "2", "--seed", "1",
                        "--max-steps", "30", "--reference-dir", testing::reference_dir().string(), "--out",
                        (dir / "eval.csv").string()});
  REQUIRE(e.code == kExitOk);
  for (const char* col : {"PCG 0.5", "PCG 1", "Lv 0", "Lv 4", "Max.", "Random", "q"}) {
    CHECK(e.out.find(col) != std::string::npos);
  }
  CHECK(std::filesystem::exists(dir / "eval.csv"));
}

TEST_CASE("analyze is reproducible and handles a degenerate corpus") {
  const auto a = testing::scratch("cli_analyze_a");
  const auto b = testing::scratch("cli_analyze_b");
  for (const auto& dir : {a, b}) {
    const Result r = cli({"analyze", "--game", "solarfox", "--count", "80", "--seed", "5", "--reference-dir",
                          testing::reference_dir().string(), "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("levels 85") != std::string::npos);
  }
  for (const char* f : {"projection.csv", "clusters.json", "scatter.svg"}) CHECK(slurp(a / f) == slurp(b / f));

  const auto in = testing::scratch("cli_analyze_same");
  for (int i = 0; i < 3; ++i) {
    std::ofstream(in / ("lv" + std::to_string(i) + ".txt")) << "wwwww\nwAk.w\nw..dw\nwwwww\n";
  }
  const Result r = cli({"analyze", "--game", "zelda", "--input", in.string(), "--no-reference", "--min-samples", "2",
                        "--out", testing::scratch("cli_analyze_same_out").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("clusters 1") != std::string::npos);
  CHECK(r.out.find("noise 0") != std::string::npos);
}
