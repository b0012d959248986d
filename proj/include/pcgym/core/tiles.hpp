#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace pcgym {

enum class Game : std::uint8_t { Zelda, Frogs, Solarfox, Boulderdash };

inline constexpr std::array<Game, 4> kAllGames{Game::Zelda, Game::Frogs, Game::Solarfox,
                                              Game::Boulderdash};

std::string_view game_name(Game game);
std::optional<Game> parse_game_name(std::string_view name);

enum class Direction : std::uint8_t { None, Up, Down, Left, Right };

int dx(Direction d);
int dy(Direction d);
Direction opposite(Direction d);

enum class Semantic : std::uint8_t {
  Floor,
  Wall,
  Player,
  Door,
  Key,
  Gem,
  Enemy,
  Water,
  Road,
  Forest,
  Log,
  Car,
  Boulder,
  Dirt,
  Empty,
};

std::string_view semantic_name(Semantic s);

// Sub-kinds carried in TileId::kind.
namespace gem_kind {
inline constexpr std::uint8_t kGreen = 0;
inline constexpr std::uint8_t kBlue = 1;
}  // namespace gem_kind

namespace enemy_kind {
inline constexpr std::uint8_t kWalker = 0;
inline constexpr std::uint8_t kBullet = 1;
}  // namespace enemy_kind

// One entry of a game's charset. `channel` is the index of the tile in the
// charset and doubles as the observation channel.
struct TileId {
  Game game;
  std::uint8_t channel;
  char glyph;
  Semantic semantic;
  std::uint8_t kind;  // gem_kind / enemy_kind / Direction for cars, else 0
  std::string_view name;
};

class Charset {
 public:
  constexpr Charset(Game game, std::span<const TileId> tiles) : game_(game), tiles_(tiles) {}

  Game game() const { return game_; }
  std::size_t size() const { return tiles_.size(); }
  std::span<const TileId> tiles() const { return tiles_; }
  const TileId& operator[](std::size_t channel) const { return tiles_[channel]; }

  std::optional<std::uint8_t> find_glyph(char glyph) const;
  // Channel of the first tile with this semantic (and kind, when given).
  std::optional<std::uint8_t> find(Semantic s, std::optional<std::uint8_t> kind = {}) const;
  // Like find() but throws std::logic_error when the game has no such tile.
  std::uint8_t require(Semantic s, std::optional<std::uint8_t> kind = {}) const;
  std::uint8_t player_channel() const { return require(Semantic::Player); }

 private:
  Game game_;
  std::span<const TileId> tiles_;
};

const Charset& charset(Game game);

}  // namespace pcgym
