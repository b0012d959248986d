#include <algorithm>

#include "pcgym/core/grid_search.hpp"
#include "pcgym/generators/generator.hpp"

namespace pcgym {

namespace {

// Cave layout via the 4-5 rule: a cell is rock when at least five of its
// eight neighbours are rock, or when it already is rock and four are.
// Off-grid neighbours count as rock.
std::vector<std::uint8_t> cellular_cave(int w, int h, double fill, int passes, Rng& rng) {
  std::vector<std::uint8_t> rock(static_cast<std::size_t>(w) * h, 1);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) rock[idx(x, y)] = rng.bernoulli(fill) ? 1 : 0;
  }
  std::vector<std::uint8_t> next = rock;
  for (int pass = 0; pass < passes; ++pass) {
    for (int y = 1; y < h - 1; ++y) {
      for (int x = 1; x < w - 1; ++x) {
        int n = 0;
        for (int oy = -1; oy <= 1; ++oy) {
          for (int ox = -1; ox <= 1; ++ox) {
            if (ox == 0 && oy == 0) continue;
            n += rock[idx(x + ox, y + oy)];
          }
        }
        next[idx(x, y)] = (n >= 5 || (rock[idx(x, y)] && n >= 4)) ? 1 : 0;
      }
    }
    rock.swap(next);
  }
  return rock;
}

}  // namespace

std::optional<Level> generate_boulderdash(double d, Rng& rng, const BoulderdashGenConfig& cfg) {
  const Charset& cs = charset(Game::Boulderdash);
  const auto wall = cs.require(Semantic::Wall);
  const auto dirt = cs.require(Semantic::Dirt);
  const auto empty = cs.require(Semantic::Empty);

  const int w = round_half_up(lerp(cfg.min_width, cfg.max_width, d)) + 2;
  const int h = round_half_up(lerp(cfg.min_height, cfg.max_height, d)) + 2;
  auto idx = [w](Position p) { return static_cast<std::size_t>(p.y) * w + p.x; };

  // (1) layout: cellular automaton, then keep the largest open cave
  const auto rock = cellular_cave(w, h, lerp(cfg.fill_easy, cfg.fill_hard, d), cfg.smoothing_passes, rng);
  std::vector<int> component(rock.size(), -1);
  std::vector<std::vector<Position>> caves;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const Position p{x, y};
      if (rock[idx(p)] || component[idx(p)] >= 0) continue;
      const auto dist = bfs_distances(w, h, p, [&](Position q) { return rock[idx(q)] == 0; });
      caves.emplace_back();
      for (int yy = 0; yy < h; ++yy) {
        for (int xx = 0; xx < w; ++xx) {
          const Position q{xx, yy};
          if (dist[idx(q)] >= 0) {
            component[idx(q)] = static_cast<int>(caves.size()) - 1;
            caves.back().push_back(q);
          }
        }
      }
    }
  }
  if (caves.empty()) return std::nullopt;
  const auto largest = std::max_element(caves.begin(), caves.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  std::vector<Position> open = *largest;

  const int gems = cfg.gems_required + round_half_up(d * cfg.extra_gems_max);
  const int enemies = round_half_up(d * cfg.max_enemies);
  const double boulder_density = lerp(cfg.boulder_density_easy, cfg.boulder_density_hard, d);
  const int boulders = round_half_up(boulder_density * static_cast<double>(open.size()));
  const int placed = 2 + gems + enemies + boulders;
  if (static_cast<int>(open.size()) < placed + 4) return std::nullopt;
  const int empties = std::min(round_half_up(cfg.empty_fraction * static_cast<double>(open.size())),
                               static_cast<int>(open.size()) - placed);

  std::vector<std::uint8_t> cells(rock.size(), wall);
  for (Position p : open) cells[idx(p)] = dirt;

  // Shuffled once; each step below takes the next unused open cells.
  rng.shuffle(std::span<Position>(open));
  std::size_t next = 0;
  auto take = [&]() { return open[next++]; };
  for (int i = 0; i < boulders; ++i) cells[idx(take())] = cs.require(Semantic::Boulder);
  for (int i = 0; i < empties; ++i) cells[idx(take())] = empty;

  // (2) player, (3) door, (4) gems, (5) enemies
  cells[idx(take())] = cs.player_channel();
  cells[idx(take())] = cs.require(Semantic::Door);
  for (int i = 0; i < gems; ++i) cells[idx(take())] = cs.require(Semantic::Gem);
  const auto enemy = cs.require(Semantic::Enemy);
  for (int i = 0; i < enemies; ++i) {
    const Position p = take();
    cells[idx(p)] = enemy;
    // enemies only walk through empty space, so give each a small pocket
    for (Direction dir : kCardinal) {
      const Position q = step_toward(p, dir);
      if (cells[idx(q)] == dirt) cells[idx(q)] = empty;
    }
  }
  return Level::create(Game::Boulderdash, w, h, std::move(cells), d);
}

}  // namespace pcgym
