#include <algorithm>

#include "pcgym/generators/generator.hpp"

namespace pcgym {

namespace {

enum class Lane { Forest, Road, River };

}  // namespace

// Active rows sit inside a one-tile wall frame, so easy levels are physically
// smaller: the frame is the padding.
std::optional<Level> generate_frogs(double d, Rng& rng, const FrogsGenConfig& cfg) {
  const Charset& cs = charset(Game::Frogs);
  const auto wall = cs.require(Semantic::Wall);
  const auto floor = cs.require(Semantic::Floor);
  const auto forest = cs.require(Semantic::Forest);
  const auto road = cs.require(Semantic::Road);
  const auto water = cs.require(Semantic::Water);
  const auto log = cs.require(Semantic::Log);

  const int active_w = round_half_up(lerp(cfg.min_width, cfg.max_width, d));
  const int active_h = std::max(3, round_half_up(lerp(cfg.min_rows, cfg.max_rows, d)));
  const int width = active_w + 2;
  const int height = active_h + 2;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, wall);
  auto at = [&](int x, int y) -> std::uint8_t& {
    return cells[static_cast<std::size_t>(y) * width + x];
  };
  const int top = 1;
  const int bottom = height - 2;

  // (1) player on the lowest empty row
  for (int x = 1; x <= active_w; ++x) at(x, bottom) = floor;
  at(rng.uniform_int(1, active_w), bottom) = cs.player_channel();

  // (2) goal on the highest row
  for (int x = 1; x <= active_w; ++x) at(x, top) = forest;
  at(rng.uniform_int(1, active_w), top) = cs.require(Semantic::Door);

  // (3) intermediate rows become forest, road or river
  const double hazard_prob = lerp(cfg.hazard_row_prob_easy, cfg.hazard_row_prob_hard, d);
  const double car_density = lerp(cfg.car_density_easy, cfg.car_density_hard, d);
  const int log_len = std::max(2, round_half_up(lerp(cfg.log_length_easy, cfg.log_length_hard, d)));
  const double log_cover = lerp(cfg.log_cover_easy, cfg.log_cover_hard, d);
  std::vector<int> columns(static_cast<std::size_t>(active_w));
  for (int y = top + 1; y < bottom; ++y) {
    Lane lane = Lane::Forest;
    if (rng.bernoulli(hazard_prob)) lane = rng.bernoulli(cfg.water_share) ? Lane::River : Lane::Road;
    switch (lane) {
      case Lane::Forest:
        for (int x = 1; x <= active_w; ++x) at(x, y) = forest;
        break;
      case Lane::Road: {
        // (4a) cars, all heading the same way
        for (int x = 1; x <= active_w; ++x) at(x, y) = road;
        const auto car = cs.require(Semantic::Car, static_cast<std::uint8_t>(
                                                       rng.bernoulli(0.5) ? Direction::Left
                                                                          : Direction::Right));
        const int cars = std::clamp(round_half_up(car_density * active_w), 1, std::max(1, active_w / 2));
        for (int i = 0; i < active_w; ++i) columns[static_cast<std::size_t>(i)] = i + 1;
        rng.shuffle(std::span<int>(columns));
        for (int i = 0; i < cars; ++i) at(columns[static_cast<std::size_t>(i)], y) = car;
        break;
      }
      case Lane::River: {
        // (4b) logs: n segments of log_len separated by gaps of at least one
        for (int x = 1; x <= active_w; ++x) at(x, y) = water;
        const int len = std::min(log_len, std::max(1, active_w - 1));
        int n = std::max(1, round_half_up(log_cover * active_w / len));
        n = std::min(n, std::max(1, active_w / (len + 1)));
        std::vector<int> gaps(static_cast<std::size_t>(n), 1);
        for (int extra = active_w - n * (len + 1); extra > 0; --extra) ++gaps[rng.below(gaps.size())];
        int x = rng.uniform_int(0, active_w - 1);
        for (int i = 0; i < n; ++i) {
          for (int k = 0; k < len; ++k) at(1 + (x + k) % active_w, y) = log;
          x += len + gaps[static_cast<std::size_t>(i)];
        }
        break;
      }
    }
  }
  return Level::create(Game::Frogs, width, height, std::move(cells), d);
}

}  // namespace pcgym
