#pragma once

#include "pcgym/core/tiles.hpp"

namespace pcgym {

// Mechanics constants and reward schedule. Rewards are chosen to line up with
// the magnitude of the original games' scores, not copied from them.
struct ZeldaRules {
  double key_reward = 1.0;
  double enemy_kill_reward = 2.0;
  double win_reward = 1.0;
  int enemy_move_period = 2;  // enemies take one random step every N ticks
  friend bool operator==(const ZeldaRules&, const ZeldaRules&) = default;
};

struct FrogsRules {
  double win_reward = 1.0;
  int car_period = 1;  // cars advance one cell every N ticks
  int log_period = 2;
  friend bool operator==(const FrogsRules&, const FrogsRules&) = default;
};

struct SolarfoxRules {
  double gem_reward = 1.0;
  Direction initial_facing = Direction::Up;
  int enemy_move_period = 2;
  // Each enemy fires every max(fire_min_period, fire_base_period -
  // fire_period_step * enemy_count) ticks.
  int fire_base_period = 14;
  int fire_period_step = 2;
  int fire_min_period = 6;
  friend bool operator==(const SolarfoxRules&, const SolarfoxRules&) = default;
};

struct BoulderdashRules {
  double gem_reward = 2.0;
  double win_reward = 1.0;
  int gems_required = 10;
  int enemy_move_period = 2;
  friend bool operator==(const BoulderdashRules&, const BoulderdashRules&) = default;
};

struct GameConfig {
  int max_episode_steps = 2000;
  ZeldaRules zelda;
  FrogsRules frogs;
  SolarfoxRules solarfox;
  BoulderdashRules boulderdash;
  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

}  // namespace pcgym
