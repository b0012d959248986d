#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pcgym/core/action.hpp"
#include "pcgym/core/level.hpp"
#include "pcgym/core/rng.hpp"
#include "pcgym/games/game_state.hpp"

namespace pcgym {

struct Transition {
  const Observation* observation = nullptr;
  Action action = Action::Nil;
  double reward = 0.0;
  const Observation* next_observation = nullptr;
  bool terminal = false;
};

class AgentFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// observe() is called once per step and end_episode() once per episode.
// act() must not touch game state.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual Action act(const Observation& obs) = 0;
  virtual void observe(const Transition&) {}
  virtual void end_episode(const EpisodeOutcome&) {}

  // Test doubles can decide an episode without simulating it.
  virtual std::optional<EpisodeOutcome> scripted_outcome(const Level&) { return std::nullopt; }

  // Whether act/observe may be called from several workers at once. When
  // false the orchestrator serializes access.
  virtual bool thread_safe() const { return false; }

  virtual std::string name() const = 0;
};

Action random_act(Rng& rng);

class RandomAgent : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  Action act(const Observation&) override { return random_act(rng_); }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

// Outcome stubs for exercising the difficulty controller.
class AlwaysWinAgent : public Agent {
 public:
  Action act(const Observation&) override { return Action::Nil; }
  std::optional<EpisodeOutcome> scripted_outcome(const Level&) override;
  std::string name() const override { return "always-win-stub"; }
};

class AlwaysLoseAgent : public Agent {
 public:
  Action act(const Observation&) override { return Action::Nil; }
  std::optional<EpisodeOutcome> scripted_outcome(const Level&) override;
  std::string name() const override { return "always-lose-stub"; }
};

// Wins with probability 1 - d, where d is the level's recorded difficulty.
class BernoulliStubAgent : public Agent {
 public:
  explicit BernoulliStubAgent(std::uint64_t seed) : rng_(seed) {}
  Action act(const Observation&) override { return Action::Nil; }
  std::optional<EpisodeOutcome> scripted_outcome(const Level& level) override;
  std::string name() const override { return "bernoulli-stub"; }

 private:
  Rng rng_;
};

using QValues = std::array<double, kActionCount>;

struct QTable {
  std::unordered_map<std::uint64_t, QValues> values;
  double learning_rate = 0.1;
  double discount = 0.99;
  double epsilon = 1.0;

  // Unseen states read as all zeros.
  QValues get(std::uint64_t state) const;
  double max_value(std::uint64_t state) const;
};

// One-step Q-learning:
//   Q(s,a) += lr * (r + discount * max_a' Q(s',a') * (1 - terminal) - Q(s,a))
void q_update(QTable& table, std::uint64_t state, Action action, double reward,
              std::uint64_t next_state, bool terminal);

struct QLearningConfig {
  double learning_rate = 0.1;
  double discount = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  // Episodes over which epsilon decays linearly; the default is half the
  // training budget, filled in by whoever knows the budget.
  long decay_episodes = 0;
};

class QLearningAgent : public Agent {
 public:
  QLearningAgent(Game game, QLearningConfig config, std::uint64_t seed);

  Action act(const Observation& obs) override;
  void observe(const Transition& t) override;
  void end_episode(const EpisodeOutcome& outcome) override;
  std::string name() const override { return "qlearning"; }

  // Greedy mode: no exploration and no learning.
  void set_greedy(bool greedy) { greedy_ = greedy; }
  bool greedy() const { return greedy_; }

  const QTable& table() const { return table_; }
  QTable& table() { return table_; }
  long episodes_seen() const { return episodes_; }
  Game game() const { return game_; }
  int width() const { return width_; }
  int height() const { return height_; }

  void save(const std::filesystem::path& path) const;
  static QLearningAgent load(const std::filesystem::path& path, std::uint64_t seed);

 private:
  void update_epsilon();

  Game game_;
  QLearningConfig config_;
  QTable table_;
  Rng rng_;
  bool greedy_ = false;
  long episodes_ = 0;
  int width_ = 0;
  int height_ = 0;
};

// Snapshot format (little-endian):
//   "PCGQ" u32 version, u8 game, i32 width, i32 height, u64 entries,
//   f64 learning_rate, f64 discount, f64 epsilon,
//   then per entry (sorted by hash): u64 hash, 6 x f64.
void save_qtable(const std::filesystem::path& path, const QTable& table, Game game, int width,
                 int height);
struct QSnapshot {
  QTable table;
  Game game = Game::Zelda;
  int width = 0;
  int height = 0;
};
QSnapshot load_qtable(const std::filesystem::path& path);

}  // namespace pcgym
