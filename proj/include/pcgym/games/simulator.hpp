#pragma once

#include <vector>

#include "pcgym/games/game_state.hpp"

namespace pcgym {

// Forward model for one game. Holds only configuration, so one instance can
// serve any number of concurrent episodes.
//
// Within a step the update order is fixed:
//   player intent -> projectiles -> vehicles/logs -> boulders -> enemies -> collisions
// A move that wins ends the step immediately, before any hazard moves.
class Simulator {
 public:
  explicit Simulator(Game game, GameConfig config = {});

  Game game() const { return game_; }
  const GameConfig& config() const { return config_; }

  GameState reset(const Level& level) const;
  GameState reset(std::shared_ptr<const Level> level) const;
  StepResult step(GameState& state, Action action) const;
  Observation observe(const GameState& state) const;

 private:
  Game game_;
  GameConfig config_;
};

// Charset channel shown at every cell: terrain with entities and the player
// drawn on top. Row-major, width*height entries.
std::vector<std::uint8_t> composite_cells(const GameState& state);
Observation one_hot(Game game, int width, int height, std::span<const std::uint8_t> cells);
Observation observe(const GameState& state);

// ASCII rendering of the current state (same glyphs as the level format).
std::string render_ascii(const GameState& state);

// Playability oracle that ignores hostile dynamics:
//   Zelda       - player reaches a key without passing the door, then a door
//   Frogs       - goal reachable; water rows count as crossable when they hold a log
//   Solarfox    - at least one gem and everything inside the safe playfield
//   Boulderdash - gems_required gems and the exit reachable through dirt/empty
bool solvable(const Level& level, const GameConfig& config = {});

namespace detail {
// Per-game hooks used by Simulator.
void reset_zelda(GameState& s);
void reset_frogs(GameState& s);
void reset_solarfox(GameState& s);
void reset_boulderdash(GameState& s);
double step_zelda(GameState& s, Action a);
double step_frogs(GameState& s, Action a);
double step_solarfox(GameState& s, Action a);
double step_boulderdash(GameState& s, Action a);
bool solvable_zelda(const Level& level);
bool solvable_frogs(const Level& level);
bool solvable_solarfox(const Level& level);
bool solvable_boulderdash(const Level& level, int gems_required);

void finish(GameState& s, bool win, Termination how);
}  // namespace detail

}  // namespace pcgym
