#include <algorithm>

#include "pcgym/generators/generator.hpp"

namespace pcgym {

namespace {

enum class Region { UpperHalf, LeftHalf, UpperLeftQuarter };
enum class GemMode { Green, Blue, Mixed };

}  // namespace

std::optional<Level> generate_solarfox(double d, Rng& rng, const SolarfoxGenConfig& cfg) {
  const Charset& cs = charset(Game::Solarfox);
  const int w = cfg.width;
  const int h = cfg.height;
  const int cx = w / 2;
  const int cy = h / 2;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h, cs.require(Semantic::Floor));
  auto at = [&](int x, int y) -> std::uint8_t& { return cells[static_cast<std::size_t>(y) * w + x]; };

  // (1) player in the middle
  at(cx, cy) = cs.player_channel();

  // (2) gems in one region; rows 0 and h-1 are the enemy lanes
  const auto region = static_cast<Region>(rng.below(3));
  const auto mode = static_cast<GemMode>(rng.below(3));
  const int total = 4 * round_half_up(lerp(cfg.min_gems / 4.0, cfg.max_gems / 4.0, d));
  std::vector<Position> candidates;
  int copies = 2;
  for (int y = 1; y < cy; ++y) {
    for (int x = 0; x < w; ++x) {
      switch (region) {
        case Region::UpperHalf: candidates.push_back({x, y}); break;
        case Region::LeftHalf: break;
        case Region::UpperLeftQuarter:
          if (x < cx) candidates.push_back({x, y});
          break;
      }
    }
  }
  if (region == Region::LeftHalf) {
    for (int y = 1; y <= h - 2; ++y) {
      for (int x = 0; x < cx; ++x) candidates.push_back({x, y});
    }
  }
  if (region == Region::UpperLeftQuarter) copies = 4;
  const int in_region = total / copies;
  if (in_region < 1 || static_cast<std::size_t>(in_region) > candidates.size()) return std::nullopt;
  if (mode == GemMode::Mixed && in_region < 2) return std::nullopt;
  rng.shuffle(std::span<Position>(candidates));

  const auto green = cs.require(Semantic::Gem, gem_kind::kGreen);
  const auto blue = cs.require(Semantic::Gem, gem_kind::kBlue);
  for (int i = 0; i < in_region; ++i) {
    std::uint8_t gem = green;
    switch (mode) {
      case GemMode::Green: gem = green; break;
      case GemMode::Blue: gem = blue; break;
      case GemMode::Mixed:
        // first two fixed so both kinds always appear
        gem = i == 0 ? green : i == 1 ? blue : (rng.bernoulli(0.5) ? green : blue);
        break;
    }
    const Position p = candidates[static_cast<std::size_t>(i)];
    // (3) replicate the pattern over the remaining parts of the map
    at(p.x, p.y) = gem;
    if (region != Region::LeftHalf) at(p.x, h - 1 - p.y) = gem;
    if (region != Region::UpperHalf) at(w - 1 - p.x, p.y) = gem;
    if (region == Region::UpperLeftQuarter) at(w - 1 - p.x, h - 1 - p.y) = gem;
  }

  // Enemies alternate between the north and south lanes.
  const int enemies = round_half_up(d * cfg.max_enemies);
  std::vector<int> north;
  std::vector<int> south;
  for (int x = 0; x < w; ++x) {
    north.push_back(x);
    south.push_back(x);
  }
  rng.shuffle(std::span<int>(north));
  rng.shuffle(std::span<int>(south));
  const auto enemy = cs.require(Semantic::Enemy, enemy_kind::kWalker);
  for (int i = 0; i < enemies && i / 2 < w; ++i) {
    if (i % 2 == 0) {
      at(north[static_cast<std::size_t>(i / 2)], 0) = enemy;
    } else {
      at(south[static_cast<std::size_t>(i / 2)], h - 1) = enemy;
    }
  }
  return Level::create(Game::Solarfox, w, h, std::move(cells), d);
}

}  // namespace pcgym
