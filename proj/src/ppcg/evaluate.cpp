#include "pcgym/ppcg/evaluate.hpp"

#include <iomanip>
#include <sstream>

#include "pcgym/ppcg/training.hpp"

namespace pcgym {

std::vector<Level> load_reference_levels(Game game, const std::filesystem::path& reference_dir) {
  std::vector<Level> levels;
  for (int i = 0; i < 5; ++i) {
    const auto path = reference_dir / std::string(game_name(game)) / ("lv" + std::to_string(i) + ".txt");
    levels.push_back(load_level_file(path, game));
  }
  return levels;
}

std::vector<EvalSet> standard_eval_sets(Game game, std::uint64_t seed, const std::filesystem::path& reference_dir,
                                        const GeneratorConfig& generator, int levels_per_tier) {
  std::vector<EvalSet> sets;
  const double tiers[] = {0.5, 1.0};
  for (std::size_t t = 0; t < 2; ++t) {
    EvalSet set{"PCG " + format_difficulty(tiers[t]), {}};
    for (int i = 0; i < levels_per_tier; ++i) {
      const std::uint64_t level_seed = mix_seed(mix_seed(seed, t), static_cast<std::uint64_t>(i));
      set.levels.push_back(generate({game, tiers[t], level_seed}, generator));
    }
    sets.push_back(std::move(set));
  }
  const auto refs = load_reference_levels(game, reference_dir);
  for (std::size_t i = 0; i < refs.size(); ++i) sets.push_back({"Lv " + std::to_string(i), {refs[i]}});
  return sets;
}

EvalRow evaluate(Agent& agent, const std::string& model, const std::vector<EvalSet>& sets,
                 const GameConfig& config, int episodes_per_set) {
  EvalRow row{model, {}};
  for (const auto& set : sets) {
    if (set.levels.empty()) throw std::invalid_argument("eval set '" + set.name + "' is empty");
    const Simulator sim(set.levels.front().game(), config);
    EvalCell cell{set.name, episodes_per_set, 0.0, 0.0};
    for (int i = 0; i < episodes_per_set; ++i) {
      const auto& level = set.levels[static_cast<std::size_t>(i) % set.levels.size()];
      const EpisodeOutcome o = play_episode(agent, sim, level);
      cell.mean_score += o.score;
      cell.win_rate += o.win ? 1.0 : 0.0;
    }
    if (episodes_per_set > 0) {
      cell.mean_score /= episodes_per_set;
      cell.win_rate /= episodes_per_set;
    }
    row.cells.push_back(cell);
  }
  return row;
}

double max_score(const Level& level, const GameConfig& config) {
  switch (level.game()) {
    case Game::Zelda:
      return config.zelda.key_reward * level.count(Semantic::Key) +
             config.zelda.enemy_kill_reward * level.count(Semantic::Enemy) + config.zelda.win_reward;
    case Game::Frogs:
      return config.frogs.win_reward;
    case Game::Solarfox:
      return config.solarfox.gem_reward * level.count(Semantic::Gem);
    case Game::Boulderdash:
      return config.boulderdash.gem_reward * level.count(Semantic::Gem) + config.boulderdash.win_reward;
  }
  return 0.0;
}

EvalRow max_row(const std::vector<EvalSet>& sets, const GameConfig& config, int episodes_per_set) {
  EvalRow row{"Max.", {}};
  for (const auto& set : sets) {
    EvalCell cell{set.name, episodes_per_set, 0.0, 1.0};
    for (int i = 0; i < episodes_per_set; ++i) {
      cell.mean_score += max_score(set.levels[static_cast<std::size_t>(i) % set.levels.size()], config);
    }
    if (episodes_per_set > 0) cell.mean_score /= episodes_per_set;
    row.cells.push_back(cell);
  }
  return row;
}

std::string format_eval_table(const std::vector<EvalSet>& sets, const std::vector<EvalRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Training";
  for (const auto& s : sets) out << std::right << std::setw(10) << s.name;
  out << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << r.model;
    for (const auto& c : r.cells) out << std::right << std::setw(10) << c.mean_score;
    out << '\n';
  }
  return out.str();
}

std::string format_eval_csv(const std::vector<EvalRow>& rows) {
  std::ostringstream out;
  out << "model,set,episodes,mean_score,win_rate\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& r : rows) {
    for (const auto& c : r.cells) {
      out << r.model << ',' << c.set << ',' << c.episodes << ',' << c.mean_score << ',' << c.win_rate << '\n';
    }
  }
  return out.str();
}

}  // namespace pcgym
