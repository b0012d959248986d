#include <algorithm>

#include "pcgym/core/grid_search.hpp"
#include "pcgym/games/simulator.hpp"

namespace pcgym::detail {

namespace {

bool occupied(const GameState& s, Position p) {
  return s.player.pos == p || s.entity_at(p, EntityKind::Enemy) >= 0;
}

bool clear(const GameState& s, Position p, std::uint8_t empty) {
  return s.in_bounds(p) && s.terrain_at(p) == empty && !occupied(s, p);
}

bool rounded(Semantic sem) { return sem == Semantic::Boulder || sem == Semantic::Gem; }

// Classic rock physics: a boulder drops into empty space below; a boulder
// resting on another boulder or a gem rolls sideways when both the side cell
// and the cell beneath it are empty. Only a boulder that was already falling
// crushes what is under it.
void apply_gravity(GameState& s) {
  const Charset& cs = charset(Game::Boulderdash);
  const auto empty = cs.require(Semantic::Empty);
  const auto boulder = cs.require(Semantic::Boulder);
  std::vector<std::uint8_t> moved(s.terrain.size(), 0);
  std::vector<std::uint8_t> now_falling(s.terrain.size(), 0);
  auto move_boulder = [&](Position from, Position to) {
    s.terrain[s.index(from)] = empty;
    s.terrain[s.index(to)] = boulder;
    moved[s.index(to)] = 1;
    now_falling[s.index(to)] = 1;
  };

  for (int y = s.height() - 2; y >= 0; --y) {
    for (int x = 0; x < s.width(); ++x) {
      const Position p{x, y};
      if (s.terrain_at(p) != boulder || moved[s.index(p)]) continue;
      const bool was_falling = s.falling[s.index(p)] != 0;
      const Position below{x, y + 1};
      if (s.player.pos == below) {
        if (was_falling) s.player.alive = false;
        continue;
      }
      if (const int e = s.entity_at(below, EntityKind::Enemy); e >= 0) {
        if (was_falling) s.entities.erase(s.entities.begin() + e);
        continue;
      }
      if (s.terrain_at(below) == empty) {
        move_boulder(p, below);
        continue;
      }
      if (!rounded(s.terrain_semantic(below))) continue;
      for (Direction side : {Direction::Left, Direction::Right}) {
        const Position beside = step_toward(p, side);
        const Position beside_below = step_toward(beside, Direction::Down);
        if (clear(s, beside, empty) && clear(s, beside_below, empty)) {
          move_boulder(p, beside);
          break;
        }
      }
    }
  }
  s.falling = std::move(now_falling);
}

}  // namespace

void reset_boulderdash(GameState& s) {
  const Charset& cs = charset(Game::Boulderdash);
  const auto empty = cs.require(Semantic::Empty);
  const auto enemy = cs.require(Semantic::Enemy);
  s.player.facing = Direction::Down;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const Position p{x, y};
      auto& cell = s.terrain[s.index(p)];
      if (cell == enemy) {
        s.entities.push_back({EntityKind::Enemy, p, Direction::None, 0});
        cell = empty;
      }
    }
  }
  s.terrain[s.index(s.player.pos)] = empty;
  s.falling.assign(s.terrain.size(), 0);
  s.counters.gems_required = s.config.boulderdash.gems_required;
  s.counters.gems_remaining = s.level->count(Semantic::Gem);
}

double step_boulderdash(GameState& s, Action a) {
  const Charset& cs = charset(Game::Boulderdash);
  const auto empty = cs.require(Semantic::Empty);
  const auto boulder = cs.require(Semantic::Boulder);
  const BoulderdashRules& rules = s.config.boulderdash;
  double reward = 0.0;

  if (const Direction dir = action_direction(a); dir != Direction::None) {
    s.player.facing = dir;
    const Position target = step_toward(s.player.pos, dir);
    if (s.in_bounds(target)) {
      bool enter = false;
      switch (s.terrain_semantic(target)) {
        case Semantic::Dirt:
        case Semantic::Empty:
          s.terrain[s.index(target)] = empty;
          enter = true;
          break;
        case Semantic::Gem:
          s.terrain[s.index(target)] = empty;
          ++s.counters.gems_collected;
          --s.counters.gems_remaining;
          reward += rules.gem_reward;
          enter = true;
          break;
        case Semantic::Door:
          if (s.counters.gems_collected >= s.counters.gems_required) {
            s.player.pos = target;
            finish(s, true, Termination::Win);
            return reward + rules.win_reward;
          }
          break;
        case Semantic::Boulder:
          if (dir == Direction::Left || dir == Direction::Right) {
            const Position beyond = step_toward(target, dir);
            if (clear(s, beyond, empty)) {
              s.terrain[s.index(beyond)] = boulder;
              s.terrain[s.index(target)] = empty;
              s.falling[s.index(target)] = 0;
              enter = true;
            }
          }
          break;
        default:
          break;
      }
      if (enter) {
        s.player.pos = target;
        if (s.entity_at(target, EntityKind::Enemy) >= 0) s.player.alive = false;
      }
    }
  } else if (a == Action::Use) {
    const Position target = step_toward(s.player.pos, s.player.facing);
    if (const int e = s.entity_at(target, EntityKind::Enemy); e >= 0) {
      s.entities.erase(s.entities.begin() + e);
      ++s.counters.enemies_killed;
    }
  }

  apply_gravity(s);

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
      if (s.terrain_at(target) != empty || s.entity_at(target, EntityKind::Enemy) >= 0) continue;
      e.pos = target;
    }
  }

  if (s.entity_at(s.player.pos, EntityKind::Enemy) >= 0) s.player.alive = false;
  return reward;
}

bool solvable_boulderdash(const Level& level, int gems_required) {
  const auto dist = bfs_distances(level.width(), level.height(), level.player(), [&](Position p) {
    const Semantic s = level.semantic(p.x, p.y);
    return s == Semantic::Dirt || s == Semantic::Empty || s == Semantic::Gem ||
           s == Semantic::Enemy;
  });
  auto reached = [&](Position p) {
    return dist[static_cast<std::size_t>(p.y) * level.width() + p.x] >= 0;
  };
  int gems = 0;
  for (Position g : level.find_all(Semantic::Gem)) gems += reached(g);
  if (gems < gems_required) return false;
  for (Position door : level.find_all(Semantic::Door)) {
    for (Direction d : kCardinal) {
      const Position n = step_toward(door, d);
      if (level.in_bounds(n.x, n.y) && reached(n)) return true;
    }
  }
  return false;
}

}  // namespace pcgym::detail
