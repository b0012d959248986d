#include <algorithm>

#include "pcgym/core/grid_search.hpp"
#include "pcgym/games/simulator.hpp"

namespace pcgym::detail {

namespace {

// Logs drift right on even rows and left on odd rows, so vertically adjacent
// rivers always move against each other.
Direction log_direction(int row) { return row % 2 == 0 ? Direction::Right : Direction::Left; }

Position wrap_move(const GameState& s, Position p, Direction d) {
  const auto [lo, hi] = s.row_spans[static_cast<std::size_t>(p.y)];
  int x = p.x + dx(d);
  if (x > hi) x = lo;
  if (x < lo) x = hi;
  return {x, p.y};
}

bool drowned(const GameState& s) {
  return s.terrain_semantic(s.player.pos) == Semantic::Water &&
         s.entity_at(s.player.pos, EntityKind::Log) < 0;
}

bool run_over(const GameState& s) { return s.entity_at(s.player.pos, EntityKind::Car) >= 0; }

}  // namespace

void reset_frogs(GameState& s) {
  const Charset& cs = charset(Game::Frogs);
  const auto floor = cs.require(Semantic::Floor);
  const auto water = cs.require(Semantic::Water);
  const auto road = cs.require(Semantic::Road);
  s.player.facing = Direction::Up;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const Position p{x, y};
      auto& cell = s.terrain[s.index(p)];
      const TileId& t = cs[cell];
      if (t.semantic == Semantic::Log) {
        s.entities.push_back({EntityKind::Log, p, log_direction(y), 0});
        cell = water;
      } else if (t.semantic == Semantic::Car) {
        s.entities.push_back({EntityKind::Car, p, static_cast<Direction>(t.kind), 0});
        cell = road;
      }
    }
  }
  s.terrain[s.index(s.player.pos)] = floor;
}

double step_frogs(GameState& s, Action a) {
  const FrogsRules& rules = s.config.frogs;

  if (const Direction dir = action_direction(a); dir != Direction::None) {
    s.player.facing = dir;
    const Position target = step_toward(s.player.pos, dir);
    if (s.in_bounds(target) && s.terrain_semantic(target) != Semantic::Wall) {
      s.player.pos = target;
      if (s.terrain_semantic(target) == Semantic::Door) {
        finish(s, true, Termination::Win);
        return rules.win_reward;
      }
      if (run_over(s) || drowned(s)) {
        s.player.alive = false;
        return 0.0;
      }
    }
  }

  const int next_tick = s.tick + 1;
  if (rules.log_period > 0 && next_tick % rules.log_period == 0) {
    const int riding = s.entity_at(s.player.pos, EntityKind::Log);
    for (auto& e : s.entities) {
      if (e.kind == EntityKind::Log) e.pos = wrap_move(s, e.pos, e.dir);
    }
    if (riding >= 0) s.player.pos = s.entities[static_cast<std::size_t>(riding)].pos;
  }
  if (rules.car_period > 0 && next_tick % rules.car_period == 0) {
    for (auto& e : s.entities) {
      if (e.kind == EntityKind::Car) e.pos = wrap_move(s, e.pos, e.dir);
    }
  }

  if (run_over(s) || drowned(s)) s.player.alive = false;
  return 0.0;
}

bool solvable_frogs(const Level& level) {
  std::vector<bool> river_has_log(static_cast<std::size_t>(level.height()), false);
  for (int y = 0; y < level.height(); ++y) {
    for (int x = 0; x < level.width(); ++x) {
      if (level.semantic(x, y) == Semantic::Log) river_has_log[static_cast<std::size_t>(y)] = true;
    }
  }
  const auto dist = bfs_distances(level.width(), level.height(), level.player(), [&](Position p) {
    const Semantic s = level.semantic(p.x, p.y);
    if (s == Semantic::Wall) return false;
    if (s == Semantic::Water || s == Semantic::Log) return bool(river_has_log[static_cast<std::size_t>(p.y)]);
    return true;
  });
  for (Position goal : level.find_all(Semantic::Door)) {
    if (dist[static_cast<std::size_t>(goal.y) * level.width() + goal.x] >= 0) return true;
  }
  return false;
}

}  // namespace pcgym::detail
