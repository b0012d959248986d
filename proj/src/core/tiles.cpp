#include "pcgym/core/tiles.hpp"

#include <stdexcept>
#include <string>

namespace pcgym {

namespace {

constexpr std::array<TileId, 6> kZeldaTiles{{
    {Game::Zelda, 0, '.', Semantic::Floor, 0, "floor"},
    {Game::Zelda, 1, 'w', Semantic::Wall, 0, "wall"},
    {Game::Zelda, 2, 'A', Semantic::Player, 0, "player"},
    {Game::Zelda, 3, 'k', Semantic::Key, 0, "key"},
    {Game::Zelda, 4, 'd', Semantic::Door, 0, "door"},
    {Game::Zelda, 5, 'e', Semantic::Enemy, enemy_kind::kWalker, "enemy"},
}};

constexpr std::array<TileId, 10> kFrogsTiles{{
    {Game::Frogs, 0, '.', Semantic::Floor, 0, "floor"},
    {Game::Frogs, 1, 'w', Semantic::Wall, 0, "wall"},
    {Game::Frogs, 2, 'A', Semantic::Player, 0, "player"},
    {Game::Frogs, 3, 'g', Semantic::Door, 0, "goal"},
    {Game::Frogs, 4, '~', Semantic::Water, 0, "water"},
    {Game::Frogs, 5, '-', Semantic::Road, 0, "road"},
    {Game::Frogs, 6, 'f', Semantic::Forest, 0, "forest"},
    {Game::Frogs, 7, '=', Semantic::Log, 0, "log"},
    {Game::Frogs, 8, '<', Semantic::Car, static_cast<std::uint8_t>(Direction::Left), "car_left"},
    {Game::Frogs, 9, '>', Semantic::Car, static_cast<std::uint8_t>(Direction::Right), "car_right"},
}};

constexpr std::array<TileId, 6> kSolarfoxTiles{{
    {Game::Solarfox, 0, '.', Semantic::Floor, 0, "floor"},
    {Game::Solarfox, 1, 'A', Semantic::Player, 0, "player"},
    {Game::Solarfox, 2, 'g', Semantic::Gem, gem_kind::kGreen, "green_gem"},
    {Game::Solarfox, 3, 'b', Semantic::Gem, gem_kind::kBlue, "blue_gem"},
    {Game::Solarfox, 4, 'e', Semantic::Enemy, enemy_kind::kWalker, "enemy"},
    {Game::Solarfox, 5, '*', Semantic::Enemy, enemy_kind::kBullet, "bullet"},
}};

constexpr std::array<TileId, 8> kBoulderdashTiles{{
    {Game::Boulderdash, 0, '-', Semantic::Empty, 0, "empty"},
    {Game::Boulderdash, 1, 'w', Semantic::Wall, 0, "wall"},
    {Game::Boulderdash, 2, '.', Semantic::Dirt, 0, "dirt"},
    {Game::Boulderdash, 3, 'A', Semantic::Player, 0, "player"},
    {Game::Boulderdash, 4, 'd', Semantic::Door, 0, "exit"},
    {Game::Boulderdash, 5, '*', Semantic::Gem, gem_kind::kGreen, "gem"},
    {Game::Boulderdash, 6, 'o', Semantic::Boulder, 0, "boulder"},
    {Game::Boulderdash, 7, 'e', Semantic::Enemy, enemy_kind::kWalker, "enemy"},
}};

const Charset kZelda{Game::Zelda, kZeldaTiles};
const Charset kFrogs{Game::Frogs, kFrogsTiles};
const Charset kSolarfox{Game::Solarfox, kSolarfoxTiles};
const Charset kBoulderdash{Game::Boulderdash, kBoulderdashTiles};

}  // namespace

std::string_view game_name(Game game) {
  switch (game) {
    case Game::Zelda: return "zelda";
    case Game::Frogs: return "frogs";
    case Game::Solarfox: return "solarfox";
    case Game::Boulderdash: return "boulderdash";
  }
  return "unknown";
}

std::optional<Game> parse_game_name(std::string_view name) {
  for (Game g : kAllGames) {
    if (game_name(g) == name) return g;
  }
  return std::nullopt;
}

int dx(Direction d) {
  switch (d) {
    case Direction::Left: return -1;
    case Direction::Right: return 1;
    default: return 0;
  }
}

int dy(Direction d) {
  switch (d) {
    case Direction::Up: return -1;
    case Direction::Down: return 1;
    default: return 0;
  }
}

Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
    case Direction::None: break;
  }
  return Direction::None;
}

std::string_view semantic_name(Semantic s) {
  switch (s) {
    case Semantic::Floor: return "Floor";
    case Semantic::Wall: return "Wall";
    case Semantic::Player: return "Player";
    case Semantic::Door: return "Door";
    case Semantic::Key: return "Key";
    case Semantic::Gem: return "Gem";
    case Semantic::Enemy: return "Enemy";
    case Semantic::Water: return "Water";
    case Semantic::Road: return "Road";
    case Semantic::Forest: return "Forest";
    case Semantic::Log: return "Log";
    case Semantic::Car: return "Car";
    case Semantic::Boulder: return "Boulder";
    case Semantic::Dirt: return "Dirt";
    case Semantic::Empty: return "Empty";
  }
  return "?";
}

std::optional<std::uint8_t> Charset::find_glyph(char glyph) const {
  for (const auto& t : tiles_) {
    if (t.glyph == glyph) return t.channel;
  }
  return std::nullopt;
}

std::optional<std::uint8_t> Charset::find(Semantic s, std::optional<std::uint8_t> kind) const {
  for (const auto& t : tiles_) {
    if (t.semantic == s && (!kind || t.kind == *kind)) return t.channel;
  }
  return std::nullopt;
}

std::uint8_t Charset::require(Semantic s, std::optional<std::uint8_t> kind) const {
  if (auto c = find(s, kind)) return *c;
  throw std::logic_error("charset for " + std::string(game_name(game_)) + " has no " +
                         std::string(semantic_name(s)) + " tile");
}

const Charset& charset(Game game) {
  switch (game) {
    case Game::Zelda: return kZelda;
    case Game::Frogs: return kFrogs;
    case Game::Solarfox: return kSolarfox;
    case Game::Boulderdash: return kBoulderdash;
  }
  throw std::logic_error("unknown game");
}

}  // namespace pcgym
