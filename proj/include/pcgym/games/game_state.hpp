#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgym/core/action.hpp"
#include "pcgym/core/level.hpp"
#include "pcgym/core/rng.hpp"
#include "pcgym/games/config.hpp"

namespace pcgym {

enum class GameErrorKind { WrongGame, InvalidLevel, EpisodeFinished };

class GameError : public std::runtime_error {
 public:
  GameError(GameErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  GameErrorKind kind() const { return kind_; }

 private:
  GameErrorKind kind_;
};

enum class EntityKind : std::uint8_t { Enemy, Car, Log, Bullet };

struct Entity {
  EntityKind kind = EntityKind::Enemy;
  Position pos;
  Direction dir = Direction::None;
  int phase = 0;  // per-entity timing offset (bullet fire schedule)
  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Counters {
  int gems_collected = 0;
  int gems_required = 0;
  int gems_remaining = 0;
  int enemies_killed = 0;
  bool has_key = false;
  friend bool operator==(const Counters&, const Counters&) = default;
};

struct PlayerState {
  Position pos;
  Direction facing = Direction::Up;
  bool alive = true;
  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

// Mutable simulation state. Single owner; the source Level is shared read-only.
struct GameState {
  Game game = Game::Zelda;
  std::shared_ptr<const Level> level;
  GameConfig config;
  int tick = 0;
  PlayerState player;
  // Static layer with the player and dynamic entities lifted out. Keys, gems,
  // dirt and boulders are edited in place as the episode unfolds.
  std::vector<std::uint8_t> terrain;
  std::vector<Entity> entities;
  std::vector<std::uint8_t> falling;             // Boulderdash: boulder fell last tick
  std::vector<std::pair<int, int>> row_spans;    // first/last non-wall column per row
  int fire_period = 0;                           // Solarfox
  Counters counters;
  Rng rng{0};  // enemy random walks; seeded from the level at reset
  double score = 0.0;
  bool terminal = false;
  bool win = false;
  Termination terminated_by = Termination::Loss;

  int width() const { return level->width(); }
  int height() const { return level->height(); }
  bool in_bounds(Position p) const { return level->in_bounds(p.x, p.y); }
  std::size_t index(Position p) const {
    return static_cast<std::size_t>(p.y) * level->width() + p.x;
  }
  std::uint8_t terrain_at(Position p) const { return terrain[index(p)]; }
  Semantic terrain_semantic(Position p) const { return charset(game)[terrain_at(p)].semantic; }

  // Index of the first entity of `kind` at p, or -1.
  int entity_at(Position p, EntityKind kind) const;

  EpisodeOutcome outcome() const;

  friend bool operator==(const GameState& a, const GameState& b);
};

// Binary tensor of shape (channels, height, width); channel = charset index.
struct Observation {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  friend bool operator==(const Observation&, const Observation&) = default;
};

// 64-bit FNV-1a over the tensor bytes and shape.
std::uint64_t hash_observation(const Observation& obs);

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminal = false;
  bool win = false;
};

}  // namespace pcgym
