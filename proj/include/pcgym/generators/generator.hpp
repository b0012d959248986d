#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgym/core/level.hpp"
#include "pcgym/core/rng.hpp"
#include "pcgym/games/config.hpp"

namespace pcgym {

// Tuning surface for the constructive generators. Every "min_*/max_*" pair is
// interpolated linearly by difficulty; counts are rounded half-up.
struct ZeldaGenConfig {
  int width = 13;
  int height = 9;
  double wall_removal_easy = 0.5;   // fraction of interior walls knocked out at d=0
  double wall_removal_hard = 0.05;  // ... and at d=1
  double far_fraction = 0.5;        // "far" = BFS distance >= fraction * max distance
  int max_enemies = 3;
};

struct FrogsGenConfig {
  int min_width = 8;  // active columns at d=0
  int max_width = 20;
  int min_rows = 4;  // active rows at d=0, including start and goal rows
  int max_rows = 9;
  double hazard_row_prob_easy = 0.15;
  double hazard_row_prob_hard = 0.9;
  double water_share = 0.5;  // hazard rows that are rivers rather than roads
  double car_density_easy = 0.08;
  double car_density_hard = 0.25;
  int log_length_easy = 4;
  int log_length_hard = 2;
  double log_cover_easy = 0.6;  // fraction of a river covered by logs
  double log_cover_hard = 0.3;
};

struct SolarfoxGenConfig {
  int width = 13;
  int height = 11;
  int min_gems = 8;  // totals, multiples of 4 so every mirroring is exact
  int max_gems = 24;
  int max_enemies = 4;
};

struct BoulderdashGenConfig {
  int min_width = 12;  // active area at d=0
  int max_width = 24;
  int min_height = 8;
  int max_height = 11;
  double fill_easy = 0.38;  // initial wall probability of the cellular automaton
  double fill_hard = 0.45;
  int smoothing_passes = 3;
  double empty_fraction = 0.08;
  double boulder_density_easy = 0.02;
  double boulder_density_hard = 0.08;
  int extra_gems_max = 6;  // gems = gems_required + round(d * extra_gems_max)
  int max_enemies = 4;
  int gems_required = 10;
};

struct GeneratorConfig {
  int max_attempts = 100;
  ZeldaGenConfig zelda;
  FrogsGenConfig frogs;
  SolarfoxGenConfig solarfox;
  BoulderdashGenConfig boulderdash;
};

struct GeneratorParams {
  Game game = Game::Zelda;
  double difficulty = 0.0;
  std::uint64_t seed = 0;
};

// Targets the generator aims for at a given difficulty.
struct DifficultyEffects {
  int active_width = 0;
  int active_height = 0;
  int hazard_count = 0;
  int collectible_count = 0;
  std::vector<std::pair<std::string, double>> layout_knobs;
};

enum class GeneratorErrorKind { InvalidParams, Exhausted };

class GenerationError : public std::runtime_error {
 public:
  GenerationError(GeneratorErrorKind kind, const std::string& what, int attempts = 0)
      : std::runtime_error(what), kind_(kind), attempts_(attempts) {}
  GeneratorErrorKind kind() const { return kind_; }
  int attempts() const { return attempts_; }

 private:
  GeneratorErrorKind kind_;
  int attempts_;
};

// Builds a level that passes core validation and `solvable`. Each attempt
// draws from an independent sub-stream of `seed`; the returned Level records
// the caller's difficulty and seed, so the call is a pure function of params.
Level generate(const GeneratorParams& params, const GeneratorConfig& config = {});

DifficultyEffects difficulty_effects(Game game, double difficulty, const GeneratorConfig& config = {});

// Single attempts. Return nullopt when the draw cannot be completed (e.g. no
// room for far placements); the caller still has to check solvability.
std::optional<Level> generate_zelda(double d, Rng& rng, const ZeldaGenConfig& cfg);
std::optional<Level> generate_frogs(double d, Rng& rng, const FrogsGenConfig& cfg);
std::optional<Level> generate_solarfox(double d, Rng& rng, const SolarfoxGenConfig& cfg);
std::optional<Level> generate_boulderdash(double d, Rng& rng, const BoulderdashGenConfig& cfg);

// Measured counts on a finished level (used by manifests and tests).
struct LevelStats {
  int width = 0;
  int height = 0;
  int active_area = 0;  // interior of the wall border (whole grid when unwalled)
  int hazards = 0;
  int collectibles = 0;
  std::string variant;  // Solarfox gem mode: green / blue / mixed
};

LevelStats level_stats(const Level& level);

// Gem mode of a Solarfox level ("green", "blue", "mixed", "none"); empty for
// other games.
std::string level_variant(const Level& level);

GameConfig game_config_for(const GeneratorConfig& config);

int round_half_up(double v);
double lerp(double a, double b, double t);

}  // namespace pcgym
