#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcgym/core/tiles.hpp"

namespace pcgym {

struct Position {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Position&, const Position&) = default;
};

enum class LevelErrorKind {
  EmptyText,
  UnknownGlyph,
  RaggedRows,
  NoPlayer,
  MultiplePlayers,
  TooSmall,
  OpenBorder,
  BadMetadata,
  WrongGame,
};

class LevelError : public std::runtime_error {
 public:
  LevelError(LevelErrorKind kind, const std::string& what, int row = -1, int col = -1,
             char glyph = '\0')
      : std::runtime_error(what), kind_(kind), row_(row), col_(col), glyph_(glyph) {}

  LevelErrorKind kind() const { return kind_; }
  int row() const { return row_; }
  int col() const { return col_; }
  char glyph() const { return glyph_; }

 private:
  LevelErrorKind kind_;
  int row_;
  int col_;
  char glyph_;
};

// Immutable tile grid. Cells hold charset channel indices, row-major.
class Level {
 public:
  static constexpr int kMinSide = 3;

  // Validates and builds a level; throws LevelError on any invariant violation.
  static Level create(Game game, int width, int height, std::vector<std::uint8_t> cells,
                      std::optional<double> difficulty = std::nullopt,
                      std::optional<std::uint64_t> seed = std::nullopt);

  Game game() const { return game_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::optional<double> difficulty() const { return difficulty_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  std::uint8_t at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t at(Position p) const { return at(p.x, p.y); }
  const TileId& tile(int x, int y) const { return charset(game_)[at(x, y)]; }
  Semantic semantic(int x, int y) const { return tile(x, y).semantic; }
  char glyph(int x, int y) const { return tile(x, y).glyph; }

  Position player() const { return player_; }
  int count_channel(std::uint8_t channel) const;
  int count(Semantic s, std::optional<std::uint8_t> kind = std::nullopt) const;
  std::vector<Position> find_all(Semantic s) const;

  // Same grid with provenance replaced.
  Level with_provenance(std::optional<double> difficulty, std::optional<std::uint64_t> seed) const;

  friend bool operator==(const Level&, const Level&) = default;

 private:
  Level() = default;

  Game game_ = Game::Zelda;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
  std::optional<double> difficulty_;
  std::optional<std::uint64_t> seed_;
  Position player_;
};

// Rows of glyphs separated by LF, preceded by `# difficulty=` / `# seed=`
// comment lines when that provenance is present. Inverse of parse_level.
std::string serialize_level(const Level& level);

// Accepts '#' header lines carrying game=, difficulty=, seed= (space separated
// key=value pairs, any number per line). A game= entry that disagrees with
// `game` is an error.
Level parse_level(std::string_view text, Game game);

// serialize_level with a leading `# game=<name>` line.
std::string to_level_file(const Level& level);
// Reads a level file; the game comes from the header unless `game` is given.
Level load_level_file(const std::filesystem::path& path, std::optional<Game> game = std::nullopt);
void save_level_file(const std::filesystem::path& path, const Level& level);
// game= value from the header, if any.
std::optional<Game> sniff_game(std::string_view text);

std::string format_difficulty(double d);

}  // namespace pcgym
