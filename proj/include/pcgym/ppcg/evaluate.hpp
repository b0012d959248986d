#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pcgym/agents/agent.hpp"
#include "pcgym/games/simulator.hpp"
#include "pcgym/generators/generator.hpp"

namespace pcgym {

struct EvalSet {
  std::string name;
  std::vector<Level> levels;
};

// The test protocol: 30 pre-generated levels at difficulty 0.5, 30 at 1, and
// each reference level on its own ("Lv 0" .. "Lv 4").
std::vector<EvalSet> standard_eval_sets(Game game, std::uint64_t seed, const std::filesystem::path& reference_dir,
                                        const GeneratorConfig& generator = {}, int levels_per_tier = 30);

std::vector<Level> load_reference_levels(Game game, const std::filesystem::path& reference_dir);

struct EvalCell {
  std::string set;
  int episodes = 0;
  double mean_score = 0.0;
  double win_rate = 0.0;
};

struct EvalRow {
  std::string model;
  std::vector<EvalCell> cells;  // one per eval set, same order
};

// Episode i of a set plays levels[i % size].
EvalRow evaluate(Agent& agent, const std::string& model, const std::vector<EvalSet>& sets,
                 const GameConfig& config = {}, int episodes_per_set = 30);

// Highest score reachable on a level under the reward schedule.
double max_score(const Level& level, const GameConfig& config = {});
EvalRow max_row(const std::vector<EvalSet>& sets, const GameConfig& config = {}, int episodes_per_set = 30);

// Rows are models, columns are test sets; cells are mean scores.
std::string format_eval_table(const std::vector<EvalSet>& sets, const std::vector<EvalRow>& rows);
std::string format_eval_csv(const std::vector<EvalRow>& rows);

}  // namespace pcgym
