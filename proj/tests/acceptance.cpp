// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pcgym/analysis/analysis.hpp"
#include "pcgym/cli/cli.hpp"
#include "pcgym/games/simulator.hpp"
#include "pcgym/generators/generator.hpp"
#include "pcgym/ppcg/controller.hpp"
#include "pcgym/ppcg/evaluate.hpp"
#include "pcgym/ppcg/training.hpp"

using namespace pcgym;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::array<Game, 4> kGames{Game::Zelda, Game::Frogs, Game::Solarfox, Game::Boulderdash};

const std::filesystem::path kSource = PCGYM_SOURCE_DIR;
const std::filesystem::path kScratch = std::filesystem::path(PCGYM_BINARY_DIR) / "scratch" / "acceptance";

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Integer fold in micro-units over a win/loss sequence.
std::vector<std::int64_t> fold(const std::vector<bool>& wins, std::int64_t alpha = 10000) {
  std::vector<std::int64_t> out;
  std::int64_t v = 0;
  for (bool w : wins) {
    v = std::clamp<std::int64_t>(v + (w ? alpha : -alpha), 0, 1'000'000);
    out.push_back(v);
  }
  return out;
}

std::vector<Level> boulderdash_corpus;

Verdict criterion1() {
  const auto start = Clock::now();
  long failures = 0;
  long total = 0;
  for (Game g : kGames) {
    for (double d : {0.0, 0.5, 1.0}) {
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Level l = generate({g, d, seed});
        ++total;
        if (!solvable(l)) ++failures;
        if (g == Game::Boulderdash) boulderdash_corpus.push_back(l);
      }
    }
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 120.0,
          std::to_string(total) + " levels, " + std::to_string(failures) + " unsolvable, " + fmt("%.1fs", t)};
}

Verdict criterion2() {
  const std::array<double, 5> ds{0.0, 0.25, 0.5, 0.75, 1.0};
  const int n = 500;
  bool ok = true;
  std::ostringstream detail;
  for (Game g : kGames) {
    struct Moments {
      double hazard = 0, hazard_sq = 0, collect = 0, collect_sq = 0, area = 0;
      std::set<std::pair<int, int>> dims;
    };
    std::vector<Moments> m(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(n); ++seed) {
        const LevelStats s = level_stats(generate({g, ds[i], seed}));
        m[i].hazard += s.hazards;
        m[i].hazard_sq += static_cast<double>(s.hazards) * s.hazards;
        m[i].collect += s.collectibles;
        m[i].collect_sq += static_cast<double>(s.collectibles) * s.collectibles;
        m[i].area += s.active_area;
        m[i].dims.insert({s.width, s.height});
      }
    }
    auto mean = [n](double sum) { return sum / n; };
    auto se = [n](double sum, double sq) {
      const double mu = sum / n;
      const double var = std::max(0.0, (sq - n * mu * mu) / (n - 1));
      return std::sqrt(var / n);
    };
    std::set<std::pair<int, int>> all_dims;
    for (std::size_t i = 0; i < ds.size(); ++i) all_dims.insert(m[i].dims.begin(), m[i].dims.end());
    for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
      const double dh = mean(m[i + 1].hazard) - mean(m[i].hazard);
      const double seh = std::hypot(se(m[i].hazard, m[i].hazard_sq), se(m[i + 1].hazard, m[i + 1].hazard_sq));
      const double dc = mean(m[i + 1].collect) - mean(m[i].collect);
      const double sec = std::hypot(se(m[i].collect, m[i].collect_sq), se(m[i + 1].collect, m[i + 1].collect_sq));
      if (dh < -seh || dc < -sec) {
        ok = false;
        detail << game_name(g) << " inversion at d=" << ds[i] << "; ";
      }
      if ((g == Game::Frogs || g == Game::Boulderdash) && m[i + 1].area < m[i].area) {
        ok = false;
        detail << game_name(g) << " area shrinks at d=" << ds[i] << "; ";
      }
    }
    if ((g == Game::Zelda || g == Game::Solarfox) && all_dims.size() != 1) {
      ok = false;
      detail << game_name(g) << " dims vary; ";
    }
    detail << game_name(g) << " hazards " << fmt("%.2f", mean(m.front().hazard)) << "->"
           << fmt("%.2f", mean(m.back().hazard)) << " collectibles " << fmt("%.2f", mean(m.front().collect)) << "->"
           << fmt("%.2f", mean(m.back().collect)) << "; ";
  }
  return {ok, detail.str()};
}

Verdict criterion3() {
  int below = 0;
  int fewest = 1 << 30;
  for (const Level& l : boulderdash_corpus) {
    const int gems = l.count(Semantic::Gem);
    fewest = std::min(fewest, gems);
    if (gems < 10) ++below;
  }
  return {!boulderdash_corpus.empty() && below == 0,
          std::to_string(boulderdash_corpus.size()) + " levels, fewest gems " + std::to_string(fewest)};
}

Verdict criterion4() {
  TrainingConfig cfg;
  cfg.game = Game::Frogs;
  cfg.workers = 1;
  cfg.episode_budget = 10000;
  cfg.seed = 404;
  BernoulliStubAgent agent(4);
  const RunLog log = run_training(agent, cfg);
  std::filesystem::create_directories(kScratch);
  const auto path = kScratch / "c4_run.jsonl";
  write_run_jsonl(log, path);
  const RunLog back = read_run_jsonl(path);

  DifficultyController ctl(0.01, 0.0);
  std::size_t mismatches = 0;
  for (const auto& e : back.episodes) {
    const double v = report_outcome(ctl, e.outcome.win);
    if (v != e.difficulty_after) ++mismatches;
  }
  return {mismatches == 0 && back.episodes.size() == 10000,
          std::to_string(back.episodes.size()) + " logged episodes, " + std::to_string(mismatches) +
              " mismatches, final " + fmt("%.2f", back.final_difficulty())};
}

Verdict criterion5() {
  const auto start = Clock::now();
  TrainingConfig cfg;
  cfg.game = Game::Zelda;
  cfg.workers = 1;
  cfg.seed = 5;

  cfg.episode_budget = 10000;
  BernoulliStubAgent coin(55);
  const double coin_final = run_training(coin, cfg).final_difficulty();

  cfg.episode_budget = 150;
  AlwaysWinAgent win;
  const RunLog wins = run_training(win, cfg);
  long first_top = -1;
  for (std::size_t i = 0; i < wins.episodes.size(); ++i) {
    if (wins.episodes[i].difficulty_after == 1.0) {
      first_top = static_cast<long>(i) + 1;
      break;
    }
  }

  cfg.episode_budget = 1000;
  AlwaysLoseAgent lose;
  bool stayed = true;
  for (const auto& e : run_training(lose, cfg).episodes) stayed &= e.difficulty_after == 0.0;

  const double t = seconds_since(start);
  const bool ok = std::abs(coin_final - 0.5) <= 0.05 && first_top == 100 && stayed && t < 60.0;
  return {ok, "bernoulli final " + fmt("%.2f", coin_final) + ", always-win reaches 1.0 after " +
                  std::to_string(first_top) + " episodes, always-lose " + (stayed ? "stays at 0" : "moved") + ", " +
                  fmt("%.1fs", t)};
}

Verdict criterion6() {
  DifficultyController ctl(0.01, 0.0, true);
  std::vector<std::thread> threads;
  for (int w = 0; w < 12; ++w) {
    threads.emplace_back([&ctl, w] {
      Rng rng(mix_seed(606, static_cast<std::uint64_t>(w)));
      for (int i = 0; i < 10000; ++i) ctl.report(rng.bernoulli(0.5));
    });
  }
  for (auto& t : threads) t.join();
  const auto log = ctl.log();
  std::vector<bool> order;
  for (const auto& u : log) order.push_back(u.win);
  const auto expected = fold(order);
  bool chain = true;
  for (std::size_t i = 0; i < log.size(); ++i) chain &= log[i].after == expected[i] && log[i].seq == i;
  const bool direct = ctl.update_count() == 120000 && log.size() == 120000 && chain &&
                      ctl.difficulty_fixed() == expected.back();

  // The same property through the orchestrator with 12 workers.
  TrainingConfig cfg;
  cfg.game = Game::Solarfox;
  cfg.workers = 12;
  cfg.episode_budget = 120000;
  cfg.seed = 66;
  BernoulliStubAgent coin(6);
  const RunLog run = run_training(coin, cfg);
  std::vector<bool> run_order;
  std::set<int> workers;
  for (const auto& e : run.episodes) {
    run_order.push_back(e.outcome.win);
    workers.insert(e.worker_id);
  }
  const auto run_expected = fold(run_order);
  bool run_chain = run.episodes.size() == 120000;
  for (std::size_t i = 0; run_chain && i < run.episodes.size(); ++i) {
    run_chain = run.episodes[i].difficulty_after == from_fixed(run_expected[i]);
  }
  return {direct && run_chain,
          "controller: " + std::to_string(ctl.update_count()) + " updates, final " + fmt("%.2f", ctl.difficulty()) +
              "; training: " + std::to_string(run.episodes.size()) + " episodes over " +
              std::to_string(workers.size()) + " workers, final " + fmt("%.2f", run.final_difficulty())};
}

Verdict criterion7() {
  Rng rng(707);
  int mismatch = 0;
  int order_dependent = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(200));
    const int centres = 1 + static_cast<int>(rng.below(5));
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < n; ++i) {
      const double cx = static_cast<double>(rng.below(static_cast<std::uint64_t>(centres))) * 1.5;
      pts.push_back({cx + std::round((rng.uniform() - 0.5) * 20) / 10, std::round((rng.uniform() - 0.5) * 20) / 10});
    }
    const double eps = 0.2 + rng.uniform() * 0.5;
    const int min_samples = 1 + static_cast<int>(rng.below(12));
    const ClusterReport got = dbscan(pts, eps, min_samples);
    if (!oracle::same_partition(got.labels, oracle::dbscan(pts, eps, min_samples))) ++mismatch;

    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<std::array<double, 2>> shuffled;
    for (std::size_t i : perm) shuffled.push_back(pts[i]);
    const ClusterReport again = dbscan(shuffled, eps, min_samples);
    std::vector<int> back(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) back[perm[i]] = again.labels[i];
    if (!oracle::same_partition(got.labels, back)) ++order_dependent;
  }
  return {mismatch == 0 && order_dependent == 0,
          "50 instances, " + std::to_string(mismatch) + " differ from brute force, " +
              std::to_string(order_dependent) + " change under shuffling"};
}

Verdict criterion8() {
  Rng rng(808);
  double worst_points = 0.0;
  double worst_ortho = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.below(199));
    int p = 1 + static_cast<int>(rng.below(500));
    if (trial == 0) {
      n = 200;
      p = 500;
    }
    std::vector<double> x(static_cast<std::size_t>(n) * p);
    const double density = 0.1 + 0.8 * rng.uniform();
    for (double& v : x) v = rng.bernoulli(density) ? 1.0 : 0.0;
    const Projection got = pca(x, n, p);
    const auto want = oracle::pca2(x, n, p);
    worst_points = std::max(worst_points, oracle::max_abs_diff_up_to_sign(got.points, want.points));
    for (std::size_t a = 0; a < got.components.size(); ++a) {
      for (std::size_t b = 0; b < got.components.size(); ++b) {
        const double dot = std::inner_product(got.components[a].begin(), got.components[a].end(),
                                              got.components[b].begin(), 0.0);
        worst_ortho = std::max(worst_ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  return {worst_points <= 1e-6 && worst_ortho <= 1e-9,
          "max coordinate gap " + fmt("%.2e", worst_points) + ", max orthonormality error " + fmt("%.2e", worst_ortho)};
}

Verdict criterion9() {
  std::vector<Level> levels;
  std::vector<RowMeta> meta;
  std::map<std::string, int> modes;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::uint64_t seed = mix_seed(909, i);
    levels.push_back(generate({Game::Solarfox, 1.0, seed}));
    const std::string variant = level_variant(levels.back());
    ++modes[variant];
    meta.push_back({"gen" + std::to_string(i), "generated", 1.0, seed, variant});
  }
  const auto refs = load_reference_levels(Game::Solarfox, kSource / "levels" / "reference");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    levels.push_back(refs[i]);
    meta.push_back({"lv" + std::to_string(i), "human", std::nullopt, std::nullopt, level_variant(refs[i])});
  }
  const AnalysisReport report = analyze(levels, meta);
  bool complete = report.references.size() == 5;
  for (const auto& r : report.references) complete &= r.nearest_distance.has_value();
  const bool three_modes = modes["green"] > 0 && modes["blue"] > 0 && modes["mixed"] > 0 && modes.size() == 3;

  std::ostringstream d;
  d << "modes green=" << modes["green"] << " blue=" << modes["blue"] << " mixed=" << modes["mixed"]
    << "; dbscan clusters=" << report.clusters.cluster_count << " noise=" << report.clusters.noise_count
    << "; references";
  for (const auto& r : report.references) {
    d << ' ' << r.id << "->" << r.nearest_cluster;
    if (r.nearest_distance) d << fmt("@%.2f", *r.nearest_distance);
  }
  return {three_modes && complete, d.str()};
}

Verdict criterion10() {
  const auto start = Clock::now();
  TrainingConfig cfg;
  cfg.game = Game::Zelda;
  cfg.mode = FixedPCGMode{0.0};
  cfg.workers = 1;
  cfg.episode_budget = 50000;
  cfg.seed = 1010;
  cfg.generator.zelda.width = 5;
  cfg.generator.zelda.height = 5;
  cfg.game_config.max_episode_steps = 12;

  QLearningConfig q;
  q.learning_rate = 0.5;
  q.discount = 0.95;
  q.epsilon_start = 1.0;
  q.epsilon_end = 0.05;
  q.decay_episodes = 25000;
  QLearningAgent agent(Game::Zelda, q, 10);
  run_training(agent, cfg);

  EvalSet fresh{"fresh", {}};
  for (std::uint64_t i = 0; i < 100; ++i) fresh.levels.push_back(generate({Game::Zelda, 0.0, mix_seed(0xE7A1, i)}, cfg.generator));
  agent.set_greedy(true);
  const EvalRow learned = evaluate(agent, "qlearning", {fresh}, cfg.game_config, 100);
  RandomAgent random(11);
  const EvalRow baseline = evaluate(random, "random", {fresh}, cfg.game_config, 100);
  const double t = seconds_since(start);
  const double q_rate = learned.cells[0].win_rate;
  const double r_rate = baseline.cells[0].win_rate;
  return {q_rate >= 0.9 && r_rate < 0.1 && t < 600.0,
          "q-learning win rate " + fmt("%.2f", q_rate) + ", random " + fmt("%.2f", r_rate) + ", " +
              std::to_string(agent.table().values.size()) + " states, " + fmt("%.1fs", t)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict criterion11() {
  auto run = [](std::vector<std::string> args, std::string& stdout_text) {
    args.insert(args.begin(), "pcgym");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    stdout_text = out.str();
    return code;
  };
  const std::string refdir = (kSource / "levels" / "reference").string();
  std::vector<std::string> differing;
  bool all_ok = true;
  std::array<std::map<std::string, std::string>, 2> outputs;
  for (int pass = 0; pass < 2; ++pass) {
    const auto dir = kScratch / ("c11_" + std::to_string(pass));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto& o = outputs[static_cast<std::size_t>(pass)];
    std::string text;
    all_ok &= run({"gen", "--game", "zelda", "--difficulty", "0.7", "--count", "20", "--seed", "11", "--out",
                   (dir / "gen").string()},
                  text) == kExitOk;
    o["gen stdout"] = text.substr(0, text.find(" to "));
    for (const auto& f : std::filesystem::directory_iterator(dir / "gen")) o["gen/" + f.path().filename().string()] = slurp(f.path());

    all_ok &= run({"rollout", "--game", "boulderdash", "--difficulty", "0.5", "--episodes", "10", "--seed", "11",
                   "--max-steps", "200", "--trace", (dir / "trace.jsonl").string()},
                  text) == kExitOk;
    o["rollout stdout"] = text;
    o["trace.jsonl"] = slurp(dir / "trace.jsonl");

    all_ok &= run({"analyze", "--game", "solarfox", "--count", "300", "--seed", "11", "--reference-dir", refdir,
                   "--out", (dir / "analysis").string()},
                  text) == kExitOk;
    o["analyze stdout"] = text;
    for (const auto& f : std::filesystem::directory_iterator(dir / "analysis")) {
      o["analysis/" + f.path().filename().string()] = slurp(f.path());
    }
  }
  if (outputs[0].size() != outputs[1].size()) all_ok = false;
  for (const auto& [name, body] : outputs[0]) {
    const auto it = outputs[1].find(name);
    if (it == outputs[1].end() || it->second != body) differing.push_back(name);
  }
  std::string detail = std::to_string(outputs[0].size()) + " outputs compared";
  for (const auto& d : differing) detail += ", differs: " + d;
  return {all_ok && differing.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3},   {4, criterion4},   {5, criterion5},  {6, criterion6},
      {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}};
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("criterion %2d: %s | %s | %.1fs\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
