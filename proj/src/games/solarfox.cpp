#include <algorithm>

#include "pcgym/core/grid_search.hpp"
#include "pcgym/games/simulator.hpp"

namespace pcgym::detail {

namespace {

// The outer rows are the enemy lanes; the player must stay strictly between
// them and inside the side borders.
bool in_playfield(const GameState& s, Position p) {
  return p.x >= 0 && p.x < s.width() && p.y >= 1 && p.y <= s.height() - 2;
}

bool shot(const GameState& s) { return s.entity_at(s.player.pos, EntityKind::Bullet) >= 0; }

}  // namespace

void reset_solarfox(GameState& s) {
  const Charset& cs = charset(Game::Solarfox);
  const auto floor = cs.require(Semantic::Floor);
  const auto walker = cs.require(Semantic::Enemy, enemy_kind::kWalker);
  const auto bullet = cs.require(Semantic::Enemy, enemy_kind::kBullet);
  if (!in_playfield(s, s.player.pos)) {
    throw GameError(GameErrorKind::InvalidLevel, "solarfox player starts on an enemy lane");
  }
  s.player.facing = s.config.solarfox.initial_facing;
  const int mid = s.height() / 2;
  int enemies = 0;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const Position p{x, y};
      auto& cell = s.terrain[s.index(p)];
      if (cell == walker) {
        const Direction dir = enemies % 2 == 0 ? Direction::Right : Direction::Left;
        s.entities.push_back({EntityKind::Enemy, p, dir, 0});
        ++enemies;
        cell = floor;
      } else if (cell == bullet) {
        s.entities.push_back({EntityKind::Bullet, p, y < mid ? Direction::Down : Direction::Up, 0});
        cell = floor;
      }
    }
  }
  s.terrain[s.index(s.player.pos)] = floor;
  const SolarfoxRules& rules = s.config.solarfox;
  s.fire_period = std::max(rules.fire_min_period,
                           rules.fire_base_period - rules.fire_period_step * enemies);
  int i = 0;
  for (auto& e : s.entities) {
    if (e.kind != EntityKind::Enemy) continue;
    e.phase = enemies > 0 ? (i * s.fire_period) / enemies : 0;
    ++i;
  }
  s.counters.gems_remaining = s.level->count(Semantic::Gem);
  s.counters.gems_required = s.counters.gems_remaining;
}

double step_solarfox(GameState& s, Action a) {
  const Charset& cs = charset(Game::Solarfox);
  const auto floor = cs.require(Semantic::Floor);
  const SolarfoxRules& rules = s.config.solarfox;
  double reward = 0.0;

  // Player intent: steer, then keep moving.
  if (const Direction dir = action_direction(a); dir != Direction::None) s.player.facing = dir;
  const Position target = step_toward(s.player.pos, s.player.facing);
  if (!in_playfield(s, target)) {
    s.player.alive = false;
    return reward;
  }
  s.player.pos = target;
  if (shot(s)) {
    s.player.alive = false;
    return reward;
  }
  if (s.terrain_semantic(target) == Semantic::Gem) {
    s.terrain[s.index(target)] = floor;
    ++s.counters.gems_collected;
    --s.counters.gems_remaining;
    reward += rules.gem_reward;
    if (s.counters.gems_remaining == 0) {
      finish(s, true, Termination::Win);
      return reward;
    }
  }

  // Projectiles.
  std::erase_if(s.entities, [&](Entity& e) {
    if (e.kind != EntityKind::Bullet) return false;
    e.pos = step_toward(e.pos, e.dir);
    return !in_playfield(s, e.pos);
  });
  if (shot(s)) s.player.alive = false;

  // Enemies patrol their lane and fire toward the playfield.
  const int next_tick = s.tick + 1;
  std::vector<Entity> spawned;
  for (auto& e : s.entities) {
    if (e.kind != EntityKind::Enemy) continue;
    if (rules.enemy_move_period > 0 && next_tick % rules.enemy_move_period == 0) {
      Position to = step_toward(e.pos, e.dir);
      if (to.x < 0 || to.x >= s.width()) {
        e.dir = opposite(e.dir);
        to = step_toward(e.pos, e.dir);
      }
      if (to.x >= 0 && to.x < s.width()) e.pos = to;
    }
    if (s.fire_period > 0 && (next_tick + e.phase) % s.fire_period == 0) {
      const Direction shot_dir = e.pos.y < s.height() / 2 ? Direction::Down : Direction::Up;
      const Position at = step_toward(e.pos, shot_dir);
      if (in_playfield(s, at)) spawned.push_back({EntityKind::Bullet, at, shot_dir, 0});
    }
  }
  s.entities.insert(s.entities.end(), spawned.begin(), spawned.end());

  if (shot(s)) s.player.alive = false;
  return reward;
}

bool solvable_solarfox(const Level& level) {
  const Position p = level.player();
  if (p.y < 1 || p.y > level.height() - 2) return false;
  int gems = 0;
  for (int y = 0; y < level.height(); ++y) {
    for (int x = 0; x < level.width(); ++x) {
      if (level.semantic(x, y) != Semantic::Gem) continue;
      if (y < 1 || y > level.height() - 2) return false;
      ++gems;
    }
  }
  return gems > 0;
}

}  // namespace pcgym::detail
