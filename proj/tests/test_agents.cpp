#include <array>
#include <cmath>
#include <fstream>

#include "doctest.h"
#include "pcgym/agents/agent.hpp"
#include "pcgym/games/simulator.hpp"
#include "test_util.hpp"

using namespace pcgym;

TEST_CASE("random actions are uniform and reproducible") {
  Rng rng(99);
  std::array<int, kActionCount> counts{};
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(random_act(rng))];
  for (int c : counts) CHECK(std::abs(static_cast<double>(c) / draws - 1.0 / 6.0) < 0.01);

  RandomAgent a(5);
  RandomAgent b(5);
  const Observation obs;
  for (int i = 0; i < 100; ++i) CHECK(a.act(obs) == b.act(obs));
}

TEST_CASE("q_update single steps") {
  QTable t;
  t.learning_rate = 0.5;
  q_update(t, 1, Action::Use, 1.0, 2, true);
  CHECK(t.get(1)[static_cast<std::size_t>(Action::Use)] == 0.5);
  CHECK(t.get(3) == QValues{});

  // with no discount the target is the reward alone
  QTable z;
  z.learning_rate = 1.0;
  z.discount = 0.0;
  z.values[2] = {5, 5, 5, 5, 5, 5};
  q_update(z, 1, Action::Left, 0.25, 2, false);
  CHECK(z.get(1)[static_cast<std::size_t>(Action::Left)] == 0.25);

  QTable d;
  d.learning_rate = 1.0;
  d.discount = 0.5;
  d.values[2] = {0, 4, 0, 0, 0, 0};
  q_update(d, 1, Action::Up, 1.0, 2, false);
  CHECK(d.get(1)[static_cast<std::size_t>(Action::Up)] == 3.0);
  q_update(d, 1, Action::Up, 1.0, 2, true);
  CHECK(d.get(1)[static_cast<std::size_t>(Action::Up)] == 1.0);
}

TEST_CASE("tabular Q-learning converges to value iteration on a two-state chain") {
  // s0 --Right--> s1 --Use--> terminal (+1); every other action returns to s0.
  const double gamma = 0.9;
  auto next = [](int s, std::size_t a) {
    if (s == 0) return static_cast<Action>(a) == Action::Right ? 1 : 0;
    return static_cast<Action>(a) == Action::Use ? -1 : 0;
  };
  std::array<std::array<double, kActionCount>, 2> q_star{};
  for (int iter = 0; iter < 2000; ++iter) {
    auto v = [&](int s) { return *std::max_element(q_star[s].begin(), q_star[s].end()); };
    auto fresh = q_star;
    for (int s = 0; s < 2; ++s) {
      for (std::size_t a = 0; a < kActionCount; ++a) {
        const int n = next(s, a);
        fresh[s][a] = n < 0 ? 1.0 : gamma * v(n);
      }
    }
    q_star = fresh;
  }
  CHECK(q_star[1][static_cast<std::size_t>(Action::Use)] == doctest::Approx(1.0));
  CHECK(q_star[0][static_cast<std::size_t>(Action::Right)] == doctest::Approx(0.9));

  QTable t;
  t.learning_rate = 0.1;
  t.discount = gamma;
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const int s = static_cast<int>(rng.below(2));
    const std::size_t a = rng.below(kActionCount);
    const int n = next(s, a);
    q_update(t, static_cast<std::uint64_t>(s), static_cast<Action>(a), n < 0 ? 1.0 : 0.0,
             static_cast<std::uint64_t>(std::max(n, 0)), n < 0);
  }
  for (int s = 0; s < 2; ++s) {
    for (std::size_t a = 0; a < kActionCount; ++a) CHECK(std::abs(t.get(s)[a] - q_star[s][a]) < 1e-3);
  }
}

TEST_CASE("epsilon decays linearly and greedy mode freezes learning") {
  QLearningConfig cfg;
  cfg.epsilon_start = 1.0;
  cfg.epsilon_end = 0.0;
  cfg.decay_episodes = 4;
  QLearningAgent agent(Game::Zelda, cfg, 1);
  CHECK(agent.table().epsilon == 1.0);
  agent.end_episode({});
  agent.end_episode({});
  CHECK(agent.table().epsilon == doctest::Approx(0.5));
  for (int i = 0; i < 10; ++i) agent.end_episode({});
  CHECK(agent.table().epsilon == 0.0);
  CHECK(agent.episodes_seen() == 12);

  const Level l = testing::level(Game::Zelda, "wwwww\nwAk.w\nw...w\nw..dw\nwwwww");
  const Simulator sim(Game::Zelda);
  GameState s = sim.reset(l);
  const Observation o1 = sim.observe(s);
  sim.step(s, Action::Right);
  const Observation o2 = sim.observe(s);

  agent.set_greedy(true);
  agent.observe({&o1, Action::Right, 1.0, &o2, false});
  CHECK(agent.table().values.empty());
  agent.set_greedy(false);
  agent.observe({&o1, Action::Right, 1.0, &o2, false});
  CHECK(agent.table().get(hash_observation(o1))[static_cast<std::size_t>(Action::Right)] > 0.0);

  // greedy action follows the table
  agent.set_greedy(true);
  CHECK(agent.act(o1) == Action::Right);

  QLearningConfig fixed;
  fixed.epsilon_start = 0.3;
  QLearningAgent steady(Game::Zelda, fixed, 1);
  for (int i = 0; i < 5; ++i) steady.end_episode({});
  CHECK(steady.table().epsilon == 0.3);
}

TEST_CASE("Q-table snapshots round-trip") {
  const auto dir = testing::scratch("agents_snapshot");
  QTable t;
  t.learning_rate = 0.25;
  t.discount = 0.75;
  t.epsilon = 0.125;
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    QValues q{};
    for (double& v : q) v = rng.uniform() * 10 - 5;
    t.values[rng.next()] = q;
  }
  save_qtable(dir / "q.bin", t, Game::Solarfox, 13, 11);
  const QSnapshot snap = load_qtable(dir / "q.bin");
  CHECK(snap.game == Game::Solarfox);
  CHECK(snap.width == 13);
  CHECK(snap.height == 11);
  CHECK(snap.table.values == t.values);
  CHECK(snap.table.learning_rate == 0.25);
  CHECK(snap.table.discount == 0.75);
  CHECK(snap.table.epsilon == 0.125);

  // identical tables produce identical bytes regardless of insertion order
  QTable u;
  for (auto it = t.values.begin(); it != t.values.end(); ++it) u.values.insert(*it);
  u.learning_rate = t.learning_rate;
  u.discount = t.discount;
  u.epsilon = t.epsilon;
  save_qtable(dir / "u.bin", u, Game::Solarfox, 13, 11);
  auto bytes = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(bytes(dir / "q.bin") == bytes(dir / "u.bin"));

  {
    std::ofstream junk(dir / "junk.bin", std::ios::binary);
    junk << "nope";
  }
  CHECK_THROWS(load_qtable(dir / "junk.bin"));
  CHECK_THROWS(load_qtable(dir / "missing.bin"));
  const std::string full = bytes(dir / "q.bin");
  {
    std::ofstream cut(dir / "cut.bin", std::ios::binary);
    cut << full.substr(0, full.size() / 2);
  }
  CHECK_THROWS(load_qtable(dir / "cut.bin"));
}

TEST_CASE("stub outcomes") {
  const Level l = testing::level(Game::Zelda, "wwwww\nwAk.w\nw...w\nw..dw\nwwwww").with_provenance(0.25, 1);
  AlwaysWinAgent win;
  AlwaysLoseAgent lose;
  CHECK(win.scripted_outcome(l)->win);
  CHECK_FALSE(lose.scripted_outcome(l)->win);

  BernoulliStubAgent coin(8);
  int wins = 0;
  for (int i = 0; i < 20000; ++i) wins += coin.scripted_outcome(l)->win;
  CHECK(std::abs(wins / 20000.0 - 0.75) < 0.015);
}
