#pragma once

#include <array>
#include <deque>
#include <vector>

#include "pcgym/core/level.hpp"

namespace pcgym {

inline constexpr std::array<Direction, 4> kCardinal{Direction::Up, Direction::Down,
                                                    Direction::Left, Direction::Right};

inline Position step_toward(Position p, Direction d) { return {p.x + dx(d), p.y + dy(d)}; }

// 4-connected breadth-first distances from `start`; -1 marks unreached cells.
// `passable(Position)` decides which cells may be entered (start is always
// accepted).
template <typename Passable>
std::vector<int> bfs_distances(int width, int height, Position start, Passable&& passable) {
  std::vector<int> dist(static_cast<std::size_t>(width) * height, -1);
  auto idx = [width](Position p) { return static_cast<std::size_t>(p.y) * width + p.x; };
  std::deque<Position> frontier{start};
  dist[idx(start)] = 0;
  while (!frontier.empty()) {
    const Position p = frontier.front();
    frontier.pop_front();
    for (Direction d : kCardinal) {
      const Position q = step_toward(p, d);
      if (q.x < 0 || q.y < 0 || q.x >= width || q.y >= height) continue;
      if (dist[idx(q)] >= 0 || !passable(q)) continue;
      dist[idx(q)] = dist[idx(p)] + 1;
      frontier.push_back(q);
    }
  }
  return dist;
}

}  // namespace pcgym
