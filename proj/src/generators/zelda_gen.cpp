#include <algorithm>
#include <cmath>

#include "pcgym/core/grid_search.hpp"
#include "pcgym/generators/generator.hpp"

namespace pcgym {

namespace {

struct Grid {
  int width;
  int height;
  std::vector<std::uint8_t> cells;
  std::uint8_t& at(Position p) { return cells[static_cast<std::size_t>(p.y) * width + p.x]; }
};

// Randomized Prim's algorithm over the odd-coordinate lattice: grow the maze
// from one cell by repeatedly opening a random frontier passage.
void carve_prim_maze(Grid& g, Rng& rng, std::uint8_t floor) {
  const int cols = (g.width - 1) / 2;
  const int rows = (g.height - 1) / 2;
  if (cols <= 0 || rows <= 0) return;
  auto cell_pos = [](int cx, int cy) { return Position{2 * cx + 1, 2 * cy + 1}; };
  std::vector<std::uint8_t> in_maze(static_cast<std::size_t>(cols) * rows, 0);

  struct Edge {
    int from_x, from_y, to_x, to_y;
  };
  std::vector<Edge> frontier;
  auto add_frontier = [&](int cx, int cy) {
    const int nbrs[4][2] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
    for (const auto& n : nbrs) {
      const int nx = cx + n[0];
      const int ny = cy + n[1];
      if (nx < 0 || ny < 0 || nx >= cols || ny >= rows) continue;
      if (in_maze[static_cast<std::size_t>(ny) * cols + nx]) continue;
      frontier.push_back({cx, cy, nx, ny});
    }
  };

  const int sx = rng.uniform_int(0, cols - 1);
  const int sy = rng.uniform_int(0, rows - 1);
  in_maze[static_cast<std::size_t>(sy) * cols + sx] = 1;
  g.at(cell_pos(sx, sy)) = floor;
  add_frontier(sx, sy);

  while (!frontier.empty()) {
    const std::size_t pick = rng.below(frontier.size());
    const Edge e = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    auto& visited = in_maze[static_cast<std::size_t>(e.to_y) * cols + e.to_x];
    if (visited) continue;
    visited = 1;
    const Position a = cell_pos(e.from_x, e.from_y);
    const Position b = cell_pos(e.to_x, e.to_y);
    g.at(b) = floor;
    g.at({(a.x + b.x) / 2, (a.y + b.y) / 2}) = floor;
    add_frontier(e.to_x, e.to_y);
  }
}

}  // namespace

std::optional<Level> generate_zelda(double d, Rng& rng, const ZeldaGenConfig& cfg) {
  const Charset& cs = charset(Game::Zelda);
  const auto wall = cs.require(Semantic::Wall);
  const auto floor = cs.require(Semantic::Floor);

  Grid g{cfg.width, cfg.height,
         std::vector<std::uint8_t>(static_cast<std::size_t>(cfg.width) * cfg.height, wall)};

  // (1) maze layout
  carve_prim_maze(g, rng, floor);

  // (2) knock out interior walls; fewer at high difficulty so the maze survives
  std::vector<Position> interior_walls;
  for (int y = 1; y < g.height - 1; ++y) {
    for (int x = 1; x < g.width - 1; ++x) {
      if (g.at({x, y}) == wall) interior_walls.push_back({x, y});
    }
  }
  rng.shuffle(std::span<Position>(interior_walls));
  const double removal = lerp(cfg.wall_removal_easy, cfg.wall_removal_hard, d);
  const auto removed = std::min<std::size_t>(
      interior_walls.size(), static_cast<std::size_t>(round_half_up(removal * interior_walls.size())));
  for (std::size_t i = 0; i < removed; ++i) g.at(interior_walls[i]) = floor;

  // (3) player on a random empty tile
  std::vector<Position> open;
  for (int y = 1; y < g.height - 1; ++y) {
    for (int x = 1; x < g.width - 1; ++x) {
      if (g.at({x, y}) == floor) open.push_back({x, y});
    }
  }
  if (open.size() < 3) return std::nullopt;
  const Position player = open[rng.below(open.size())];
  g.at(player) = cs.require(Semantic::Player);

  // (4) key and door far from the player
  const auto dist = bfs_distances(g.width, g.height, player,
                                  [&](Position p) { return g.at(p) != wall; });
  auto distance = [&](Position p) { return dist[static_cast<std::size_t>(p.y) * g.width + p.x]; };
  int max_dist = 0;
  for (Position p : open) max_dist = std::max(max_dist, distance(p));
  const int threshold = std::max(1, static_cast<int>(std::ceil(cfg.far_fraction * max_dist)));
  std::vector<Position> far;
  for (Position p : open) {
    if (p != player && distance(p) >= threshold) far.push_back(p);
  }
  const int enemies = round_half_up(d * cfg.max_enemies);
  if (far.size() < static_cast<std::size_t>(2 + enemies)) return std::nullopt;
  rng.shuffle(std::span<Position>(far));
  g.at(far[0]) = cs.require(Semantic::Key);
  g.at(far[1]) = cs.require(Semantic::Door);

  // (5) enemies, also far from the player
  for (int i = 0; i < enemies; ++i) g.at(far[static_cast<std::size_t>(2 + i)]) = cs.require(Semantic::Enemy);

  return Level::create(Game::Zelda, g.width, g.height, std::move(g.cells), d);
}

}  // namespace pcgym
