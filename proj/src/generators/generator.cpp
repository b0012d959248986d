#include "pcgym/generators/generator.hpp"

#include <cmath>

#include "pcgym/games/simulator.hpp"

namespace pcgym {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

double lerp(double a, double b, double t) { return a + (b - a) * t; }

GameConfig game_config_for(const GeneratorConfig& config) {
  GameConfig gc;
  gc.boulderdash.gems_required = config.boulderdash.gems_required;
  return gc;
}

DifficultyEffects difficulty_effects(Game game, double d, const GeneratorConfig& config) {
  DifficultyEffects fx;
  switch (game) {
    case Game::Zelda: {
      const auto& c = config.zelda;
      fx.active_width = c.width - 2;
      fx.active_height = c.height - 2;
      fx.hazard_count = round_half_up(d * c.max_enemies);
      fx.collectible_count = 1;
      fx.layout_knobs = {{"wall_removal", lerp(c.wall_removal_easy, c.wall_removal_hard, d)},
                         {"far_fraction", c.far_fraction}};
      break;
    }
    case Game::Frogs: {
      const auto& c = config.frogs;
      fx.active_width = round_half_up(lerp(c.min_width, c.max_width, d));
      fx.active_height = round_half_up(lerp(c.min_rows, c.max_rows, d));
      const double hazard_prob = lerp(c.hazard_row_prob_easy, c.hazard_row_prob_hard, d);
      const int lanes = fx.active_height - 2;
      const double cars_per_road =
          std::max(1, round_half_up(lerp(c.car_density_easy, c.car_density_hard, d) * fx.active_width));
      const double open_water = fx.active_width * (1.0 - lerp(c.log_cover_easy, c.log_cover_hard, d));
      fx.hazard_count = round_half_up(lanes * hazard_prob *
                                      ((1.0 - c.water_share) * cars_per_road + c.water_share * open_water));
      fx.collectible_count = 0;
      fx.layout_knobs = {{"hazard_row_prob", hazard_prob},
                         {"water_share", c.water_share},
                         {"log_length", round_half_up(lerp(c.log_length_easy, c.log_length_hard, d))},
                         {"log_cover", lerp(c.log_cover_easy, c.log_cover_hard, d)}};
      break;
    }
    case Game::Solarfox: {
      const auto& c = config.solarfox;
      fx.active_width = c.width;
      fx.active_height = c.height - 2;
      fx.hazard_count = round_half_up(d * c.max_enemies);
      fx.collectible_count = 4 * round_half_up(lerp(c.min_gems / 4.0, c.max_gems / 4.0, d));
      fx.layout_knobs = {{"mirror_modes", 3}, {"gem_modes", 3}};
      break;
    }
    case Game::Boulderdash: {
      const auto& c = config.boulderdash;
      fx.active_width = round_half_up(lerp(c.min_width, c.max_width, d));
      fx.active_height = round_half_up(lerp(c.min_height, c.max_height, d));
      const double fill = lerp(c.fill_easy, c.fill_hard, d);
      const double boulder_density = lerp(c.boulder_density_easy, c.boulder_density_hard, d);
      const double open_estimate = fx.active_width * fx.active_height * (1.0 - fill);
      fx.hazard_count =
          round_half_up(d * c.max_enemies) + round_half_up(boulder_density * open_estimate);
      fx.collectible_count = c.gems_required + round_half_up(d * c.extra_gems_max);
      fx.layout_knobs = {{"ca_fill", fill},
                         {"ca_passes", c.smoothing_passes},
                         {"boulder_density", boulder_density}};
      break;
    }
  }
  return fx;
}

Level generate(const GeneratorParams& params, const GeneratorConfig& config) {
  if (!(params.difficulty >= 0.0 && params.difficulty <= 1.0)) {
    throw GenerationError(GeneratorErrorKind::InvalidParams, "difficulty must lie in [0,1]");
  }
  const GameConfig rules = game_config_for(config);
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(attempt)));
    std::optional<Level> level;
    switch (params.game) {
      case Game::Zelda: level = generate_zelda(params.difficulty, rng, config.zelda); break;
      case Game::Frogs: level = generate_frogs(params.difficulty, rng, config.frogs); break;
      case Game::Solarfox: level = generate_solarfox(params.difficulty, rng, config.solarfox); break;
      case Game::Boulderdash:
        level = generate_boulderdash(params.difficulty, rng, config.boulderdash);
        break;
    }
    if (level && solvable(*level, rules)) {
      return level->with_provenance(params.difficulty, params.seed);
    }
  }
  throw GenerationError(GeneratorErrorKind::Exhausted,
                        "no solvable " + std::string(game_name(params.game)) + " level after " +
                            std::to_string(config.max_attempts) + " attempts",
                        config.max_attempts);
}

std::string level_variant(const Level& level) {
  if (level.game() != Game::Solarfox) return {};
  const int green = level.count(Semantic::Gem, gem_kind::kGreen);
  const int blue = level.count(Semantic::Gem, gem_kind::kBlue);
  if (green > 0 && blue > 0) return "mixed";
  if (green > 0) return "green";
  if (blue > 0) return "blue";
  return "none";
}

LevelStats level_stats(const Level& level) {
  LevelStats st;
  st.width = level.width();
  st.height = level.height();
  bool walled = charset(level.game()).find(Semantic::Wall).has_value();
  for (int x = 0; walled && x < level.width(); ++x) {
    walled = level.semantic(x, 0) == Semantic::Wall &&
             level.semantic(x, level.height() - 1) == Semantic::Wall;
  }
  for (int y = 0; walled && y < level.height(); ++y) {
    walled = level.semantic(0, y) == Semantic::Wall &&
             level.semantic(level.width() - 1, y) == Semantic::Wall;
  }
  st.active_area = walled ? (level.width() - 2) * (level.height() - 2) : level.width() * level.height();
  switch (level.game()) {
    case Game::Zelda:
      st.hazards = level.count(Semantic::Enemy);
      st.collectibles = level.count(Semantic::Key);
      break;
    case Game::Frogs:
      st.hazards = level.count(Semantic::Car) + level.count(Semantic::Water);
      st.collectibles = 0;
      break;
    case Game::Solarfox:
      st.hazards = level.count(Semantic::Enemy);
      st.collectibles = level.count(Semantic::Gem);
      break;
    case Game::Boulderdash:
      st.hazards = level.count(Semantic::Enemy) + level.count(Semantic::Boulder);
      st.collectibles = level.count(Semantic::Gem);
      break;
  }
  st.variant = level_variant(level);
  return st;
}

}  // namespace pcgym
