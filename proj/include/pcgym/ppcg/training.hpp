#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcgym/agents/agent.hpp"
#include "pcgym/games/simulator.hpp"
#include "pcgym/generators/generator.hpp"
#include "pcgym/ppcg/controller.hpp"

namespace pcgym {

struct PPCGMode {};
struct FixedPCGMode {
  double difficulty = 1.0;
};
struct FixedLevelMode {
  Level level;
};
struct LevelSetMode {
  std::vector<Level> levels;
};
using TrainingMode = std::variant<PPCGMode, FixedPCGMode, FixedLevelMode, LevelSetMode>;

std::string mode_name(const TrainingMode& mode);

struct EpisodeRecord {
  long episode_id = 0;  // claim order
  std::uint64_t seq = 0;  // position in the log (completion order)
  int worker_id = 0;
  std::optional<std::uint64_t> level_seed;
  double difficulty_at_start = 0.0;
  double difficulty_after = 0.0;
  EpisodeOutcome outcome;
};

struct TrainingConfig {
  Game game = Game::Zelda;
  TrainingMode mode = PPCGMode{};
  int workers = 12;
  long episode_budget = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.01;
  double initial_difficulty = 0.0;
  GameConfig game_config;
  GeneratorConfig generator;
  // Called under the log lock after every episode, in log order.
  std::function<void(const EpisodeRecord&)> on_episode;
};

struct RunLog {
  Game game = Game::Zelda;
  std::string mode;
  std::uint64_t seed = 0;
  int workers = 1;
  double alpha = 0.01;
  double initial_difficulty = 0.0;
  std::vector<EpisodeRecord> episodes;  // completion order

  double final_difficulty() const;
  // Trailing moving average of episode scores.
  std::vector<double> smoothed_scores(std::size_t window = 100) const;
  std::vector<double> difficulty_trajectory() const;
};

// Level for the next episode. PPCG reads the controller's current value.
Level next_level(const TrainingConfig& config, const DifficultyController& controller, Rng& rng);

using AgentFactory = std::function<std::unique_ptr<Agent>()>;

// Runs episode_budget episodes over config.workers threads. With one worker
// the run is a pure function of the config and the agent's own seed.
RunLog run_training(Agent& agent, const TrainingConfig& config);
RunLog run_training(const AgentFactory& factory, const TrainingConfig& config);

// One simulated episode. The agent sees every transition.
EpisodeOutcome play_episode(Agent& agent, const Simulator& sim, const Level& level);

void write_run_jsonl(const RunLog& log, const std::filesystem::path& path);
void write_run_csv(const RunLog& log, const std::filesystem::path& path);
RunLog read_run_jsonl(const std::filesystem::path& path);

}  // namespace pcgym
