#include "pcgym/games/simulator.hpp"

#include <algorithm>

namespace pcgym {

int GameState::entity_at(Position p, EntityKind kind) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].kind == kind && entities[i].pos == p) return static_cast<int>(i);
  }
  return -1;
}

EpisodeOutcome GameState::outcome() const {
  return EpisodeOutcome{win, score, tick, terminated_by};
}

bool operator==(const GameState& a, const GameState& b) {
  return a.game == b.game && *a.level == *b.level && a.config == b.config && a.tick == b.tick &&
         a.player == b.player && a.terrain == b.terrain && a.entities == b.entities &&
         a.falling == b.falling && a.row_spans == b.row_spans && a.fire_period == b.fire_period &&
         a.counters == b.counters && a.rng == b.rng && a.score == b.score &&
         a.terminal == b.terminal && a.win == b.win && a.terminated_by == b.terminated_by;
}

std::uint64_t hash_observation(const Observation& obs) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001B3ULL;
  };
  for (int v : {obs.channels, obs.height, obs.width}) {
    for (int i = 0; i < 4; ++i) mix(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  for (auto b : obs.data) mix(b);
  return h;
}

namespace detail {

void finish(GameState& s, bool win, Termination how) {
  s.terminal = true;
  s.win = win;
  s.terminated_by = how;
}

}  // namespace detail

Simulator::Simulator(Game game, GameConfig config) : game_(game), config_(config) {}

GameState Simulator::reset(const Level& level) const {
  return reset(std::make_shared<const Level>(level));
}

GameState Simulator::reset(std::shared_ptr<const Level> level) const {
  if (!level) throw GameError(GameErrorKind::InvalidLevel, "null level");
  if (level->game() != game_) {
    throw GameError(GameErrorKind::WrongGame, "simulator for " + std::string(game_name(game_)) +
                                                  " got a " +
                                                  std::string(game_name(level->game())) + " level");
  }
  GameState s;
  s.game = game_;
  s.level = std::move(level);
  s.config = config_;
  s.player.pos = s.level->player();
  s.terrain.assign(s.level->cells().begin(), s.level->cells().end());

  // Enemy randomness is a function of the level alone.
  std::uint64_t seed = s.level->seed().value_or(0);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (auto c : s.level->cells()) h = (h ^ c) * 0x100000001B3ULL;
  s.rng = Rng(mix_seed(seed ^ h, 0xE4E3));

  const Charset& cs = charset(game_);
  const auto wall = cs.find(Semantic::Wall);
  s.row_spans.resize(static_cast<std::size_t>(s.height()));
  for (int y = 0; y < s.height(); ++y) {
    int lo = 0;
    int hi = s.width() - 1;
    if (wall) {
      while (lo < hi && s.level->at(lo, y) == *wall) ++lo;
      while (hi > lo && s.level->at(hi, y) == *wall) --hi;
    }
    s.row_spans[static_cast<std::size_t>(y)] = {lo, hi};
  }

  switch (game_) {
    case Game::Zelda: detail::reset_zelda(s); break;
    case Game::Frogs: detail::reset_frogs(s); break;
    case Game::Solarfox: detail::reset_solarfox(s); break;
    case Game::Boulderdash: detail::reset_boulderdash(s); break;
  }
  return s;
}

StepResult Simulator::step(GameState& state, Action action) const {
  if (state.terminal) {
    throw GameError(GameErrorKind::EpisodeFinished, "step called on a finished episode");
  }
  if (state.game != game_) throw GameError(GameErrorKind::WrongGame, "state belongs to another game");
  double reward = 0.0;
  switch (game_) {
    case Game::Zelda: reward = detail::step_zelda(state, action); break;
    case Game::Frogs: reward = detail::step_frogs(state, action); break;
    case Game::Solarfox: reward = detail::step_solarfox(state, action); break;
    case Game::Boulderdash: reward = detail::step_boulderdash(state, action); break;
  }
  ++state.tick;
  state.score += reward;
  if (!state.terminal && !state.player.alive) detail::finish(state, false, Termination::Loss);
  if (!state.terminal && state.tick >= state.config.max_episode_steps) {
    detail::finish(state, false, Termination::Timeout);
  }
  return StepResult{observe(state), reward, state.terminal, state.win};
}

Observation Simulator::observe(const GameState& state) const { return pcgym::observe(state); }

std::vector<std::uint8_t> composite_cells(const GameState& s) {
  std::vector<std::uint8_t> cells = s.terrain;
  const Charset& cs = charset(s.game);
  auto paint = [&](EntityKind kind) {
    for (const auto& e : s.entities) {
      if (e.kind != kind) continue;
      std::uint8_t channel = 0;
      switch (kind) {
        case EntityKind::Enemy: channel = cs.require(Semantic::Enemy, enemy_kind::kWalker); break;
        case EntityKind::Bullet: channel = cs.require(Semantic::Enemy, enemy_kind::kBullet); break;
        case EntityKind::Log: channel = cs.require(Semantic::Log); break;
        case EntityKind::Car:
          channel = cs.require(Semantic::Car, static_cast<std::uint8_t>(e.dir));
          break;
      }
      cells[s.index(e.pos)] = channel;
    }
  };
  paint(EntityKind::Log);
  paint(EntityKind::Car);
  paint(EntityKind::Enemy);
  paint(EntityKind::Bullet);
  cells[s.index(s.player.pos)] = cs.player_channel();
  return cells;
}

Observation one_hot(Game game, int width, int height, std::span<const std::uint8_t> cells) {
  Observation obs;
  obs.channels = static_cast<int>(charset(game).size());
  obs.height = height;
  obs.width = width;
  obs.data.assign(static_cast<std::size_t>(obs.channels) * height * width, 0);
  const std::size_t plane = static_cast<std::size_t>(height) * width;
  for (std::size_t i = 0; i < cells.size(); ++i) obs.data[cells[i] * plane + i] = 1;
  return obs;
}

Observation observe(const GameState& state) {
  const auto cells = composite_cells(state);
  return one_hot(state.game, state.width(), state.height(), cells);
}

std::string render_ascii(const GameState& state) {
  const auto cells = composite_cells(state);
  const Charset& cs = charset(state.game);
  std::string out;
  for (int y = 0; y < state.height(); ++y) {
    for (int x = 0; x < state.width(); ++x) {
      out += cs[cells[static_cast<std::size_t>(y) * state.width() + x]].glyph;
    }
    out += '\n';
  }
  return out;
}

bool solvable(const Level& level, const GameConfig& config) {
  switch (level.game()) {
    case Game::Zelda: return detail::solvable_zelda(level);
    case Game::Frogs: return detail::solvable_frogs(level);
    case Game::Solarfox: return detail::solvable_solarfox(level);
    case Game::Boulderdash: return detail::solvable_boulderdash(level, config.boulderdash.gems_required);
  }
  return false;
}

}  // namespace pcgym
