#include "pcgym/core/grid_search.hpp"
#include "pcgym/games/simulator.hpp"

namespace pcgym::detail {

void reset_zelda(GameState& s) {
  const Charset& cs = charset(Game::Zelda);
  const auto floor = cs.require(Semantic::Floor);
  const auto enemy = cs.require(Semantic::Enemy);
  s.player.facing = Direction::Down;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const Position p{x, y};
      auto& cell = s.terrain[s.index(p)];
      if (cell == enemy) {
        s.entities.push_back({EntityKind::Enemy, p, Direction::None, 0});
        cell = floor;
      }
    }
  }
  s.terrain[s.index(s.player.pos)] = floor;
}

double step_zelda(GameState& s, Action a) {
  const Charset& cs = charset(Game::Zelda);
  const auto floor = cs.require(Semantic::Floor);
  const ZeldaRules& rules = s.config.zelda;
  double reward = 0.0;

  // Player intent.
  if (const Direction dir = action_direction(a); dir != Direction::None) {
    s.player.facing = dir;
    const Position target = step_toward(s.player.pos, dir);
    if (s.in_bounds(target)) {
      switch (s.terrain_semantic(target)) {
        case Semantic::Wall: break;
        case Semantic::Door:
          if (s.counters.has_key) {
            s.player.pos = target;
            finish(s, true, Termination::Win);
            return reward + rules.win_reward;
          }
          break;
        case Semantic::Key:
          s.player.pos = target;
          s.counters.has_key = true;
          s.terrain[s.index(target)] = floor;
          reward += rules.key_reward;
          break;
        default:
          s.player.pos = target;
          break;
      }
      if (s.entity_at(s.player.pos, EntityKind::Enemy) >= 0) s.player.alive = false;
    }
  } else if (a == Action::Use) {
    const Position target = step_toward(s.player.pos, s.player.facing);
    if (const int e = s.entity_at(target, EntityKind::Enemy); e >= 0) {
      s.entities.erase(s.entities.begin() + e);
      ++s.counters.enemies_killed;
      reward += rules.enemy_kill_reward;
    }
  }

  // Enemies: one random step every enemy_move_period ticks.
  const int next_tick = s.tick + 1;
  if (s.player.alive && rules.enemy_move_period > 0 && next_tick % rules.enemy_move_period == 0) {
    for (auto& e : s.entities) {
      if (e.kind != EntityKind::Enemy) continue;
      const Direction dir = kCardinal[s.rng.below(4)];
      const Position target = step_toward(e.pos, dir);
      if (!s.in_bounds(target)) continue;
      if (target == s.player.pos) {
        e.pos = target;
        s.player.alive = false;
        break;
      }
      if (s.terrain_semantic(target) != Semantic::Floor) continue;
      if (s.entity_at(target, EntityKind::Enemy) >= 0) continue;
      e.pos = target;
    }
  }

  // Collisions.
  if (s.entity_at(s.player.pos, EntityKind::Enemy) >= 0) s.player.alive = false;
  return reward;
}

bool solvable_zelda(const Level& level) {
  const Position start = level.player();
  const auto to_key = bfs_distances(level.width(), level.height(), start, [&](Position p) {
    const Semantic s = level.semantic(p.x, p.y);
    return s != Semantic::Wall && s != Semantic::Door;
  });
  for (Position key : level.find_all(Semantic::Key)) {
    if (to_key[static_cast<std::size_t>(key.y) * level.width() + key.x] < 0) continue;
    const auto to_door = bfs_distances(level.width(), level.height(), key, [&](Position p) {
      return level.semantic(p.x, p.y) != Semantic::Wall;
    });
    for (Position door : level.find_all(Semantic::Door)) {
      if (to_door[static_cast<std::size_t>(door.y) * level.width() + door.x] >= 0) return true;
    }
  }
  return false;
}

}  // namespace pcgym::detail
