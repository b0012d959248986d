#include "pcgym/core/level.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pcgym {

namespace {

bool requires_wall_border(Game game) { return game == Game::Zelda || game == Game::Boulderdash; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Header {
  std::optional<Game> game;
  std::optional<double> difficulty;
  std::optional<std::uint64_t> seed;
};

void parse_header_line(std::string_view line, Header& header) {
  line.remove_prefix(1);  // '#'
  while (!line.empty()) {
    line = trim(line);
    const auto end = line.find_first_of(" \t");
    std::string_view token = line.substr(0, end);
    line = end == std::string_view::npos ? std::string_view{} : line.substr(end);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;  // free-form comment word
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "game") {
      header.game = parse_game_name(value);
      if (!header.game) {
        throw LevelError(LevelErrorKind::BadMetadata, "unknown game '" + std::string(value) + "'");
      }
    } else if (key == "difficulty") {
      double d = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), d);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw LevelError(LevelErrorKind::BadMetadata, "bad difficulty '" + std::string(value) + "'");
      }
      header.difficulty = d;
    } else if (key == "seed") {
      std::uint64_t s = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw LevelError(LevelErrorKind::BadMetadata, "bad seed '" + std::string(value) + "'");
      }
      header.seed = s;
    }
  }
}

}  // namespace

Level Level::create(Game game, int width, int height, std::vector<std::uint8_t> cells,
                    std::optional<double> difficulty, std::optional<std::uint64_t> seed) {
  if (width < kMinSide || height < kMinSide) {
    throw LevelError(LevelErrorKind::TooSmall, "level must be at least 3x3, got " +
                                                   std::to_string(width) + "x" +
                                                   std::to_string(height));
  }
  if (cells.size() != static_cast<std::size_t>(width) * height) {
    throw LevelError(LevelErrorKind::RaggedRows, "cell count does not match dimensions");
  }
  if (difficulty && !(*difficulty >= 0.0 && *difficulty <= 1.0)) {
    throw LevelError(LevelErrorKind::BadMetadata, "difficulty outside [0,1]");
  }
  const Charset& cs = charset(game);
  const std::uint8_t player = cs.player_channel();
  const std::uint8_t wall = cs.find(Semantic::Wall).value_or(0xFF);

  Level level;
  level.game_ = game;
  level.width_ = width;
  level.height_ = height;
  level.difficulty_ = difficulty;
  level.seed_ = seed;

  int players = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint8_t c = cells[static_cast<std::size_t>(y) * width + x];
      if (c >= cs.size()) {
        throw LevelError(LevelErrorKind::UnknownGlyph, "channel out of range", y, x);
      }
      if (c == player) {
        if (++players > 1) {
          throw LevelError(LevelErrorKind::MultiplePlayers, "more than one player tile", y, x, 'A');
        }
        level.player_ = {x, y};
      }
      const bool border = x == 0 || y == 0 || x == width - 1 || y == height - 1;
      if (border && requires_wall_border(game) && c != wall) {
        throw LevelError(LevelErrorKind::OpenBorder,
                         std::string(game_name(game)) + " levels need a wall border", y, x,
                         cs[c].glyph);
      }
    }
  }
  if (players == 0) throw LevelError(LevelErrorKind::NoPlayer, "level has no player tile");
  level.cells_ = std::move(cells);
  return level;
}

int Level::count_channel(std::uint8_t channel) const {
  int n = 0;
  for (auto c : cells_) n += c == channel;
  return n;
}

int Level::count(Semantic s, std::optional<std::uint8_t> kind) const {
  const Charset& cs = charset(game_);
  int n = 0;
  for (auto c : cells_) {
    const TileId& t = cs[c];
    n += t.semantic == s && (!kind || t.kind == *kind);
  }
  return n;
}

std::vector<Position> Level::find_all(Semantic s) const {
  std::vector<Position> out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (semantic(x, y) == s) out.push_back({x, y});
    }
  }
  return out;
}

Level Level::with_provenance(std::optional<double> difficulty,
                             std::optional<std::uint64_t> seed) const {
  return create(game_, width_, height_, cells_, difficulty, seed);
}

std::string format_difficulty(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, ptr);
}

std::string serialize_level(const Level& level) {
  std::string out;
  if (level.difficulty()) out += "# difficulty=" + format_difficulty(*level.difficulty()) + "\n";
  if (level.seed()) out += "# seed=" + std::to_string(*level.seed()) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(level.width() + 1) * level.height());
  for (int y = 0; y < level.height(); ++y) {
    if (y > 0) out += '\n';
    for (int x = 0; x < level.width(); ++x) out += level.glyph(x, y);
  }
  return out;
}

std::string to_level_file(const Level& level) {
  return "# game=" + std::string(game_name(level.game())) + "\n" + serialize_level(level) + "\n";
}

std::optional<Game> sniff_game(std::string_view text) {
  Header header;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() == '#') parse_header_line(line, header);
    pos = end + 1;
  }
  return header.game;
}

Level parse_level(std::string_view text, Game game) {
  const Charset& cs = charset(game);
  Header header;
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (!line.empty() && line.front() == '#') {
      if (!rows.empty()) {
        throw LevelError(LevelErrorKind::BadMetadata, "header line after grid rows",
                         static_cast<int>(rows.size()));
      }
      parse_header_line(line, header);
      continue;
    }
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw LevelError(LevelErrorKind::EmptyText, "level text has no rows");
  if (header.game && *header.game != game) {
    throw LevelError(LevelErrorKind::WrongGame, "level file is for " +
                                                    std::string(game_name(*header.game)) +
                                                    ", expected " + std::string(game_name(game)));
  }

  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  const std::uint8_t player = cs.player_channel();
  int players = 0;
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(rows[y].size()) != width) {
      throw LevelError(LevelErrorKind::RaggedRows,
                       "row " + std::to_string(y) + " has " + std::to_string(rows[y].size()) +
                           " glyphs, expected " + std::to_string(width),
                       y);
    }
    for (int x = 0; x < width; ++x) {
      const char g = rows[y][x];
      auto channel = cs.find_glyph(g);
      if (!channel) {
        std::ostringstream msg;
        msg << "unknown glyph '" << g << "' at row " << y << ", col " << x;
        throw LevelError(LevelErrorKind::UnknownGlyph, msg.str(), y, x, g);
      }
      if (*channel == player && ++players > 1) {
        throw LevelError(LevelErrorKind::MultiplePlayers, "more than one player tile", y, x, g);
      }
      cells.push_back(*channel);
    }
  }
  if (players == 0) throw LevelError(LevelErrorKind::NoPlayer, "level has no player tile");
  return Level::create(game, width, height, std::move(cells), header.difficulty, header.seed);
}

Level load_level_file(const std::filesystem::path& path, std::optional<Game> game) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open level file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (!game) game = sniff_game(text);
  if (!game) throw LevelError(LevelErrorKind::BadMetadata, path.string() + ": no game= header");
  return parse_level(text, *game);
}

void save_level_file(const std::filesystem::path& path, const Level& level) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write level file " + path.string());
  out << to_level_file(level);
}

}  // namespace pcgym
