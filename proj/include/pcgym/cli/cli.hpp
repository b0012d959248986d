#pragma once

#include <iosfwd>
#include <string>

#include "pcgym/core/level.hpp"

namespace pcgym {

// Exit codes: 0 success, 1 usage error, 2 runtime failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Fill colour for a tile in SVG renders (the legend in the README).
std::string tile_color(const TileId& tile);
std::string render_svg(const Level& level, int tile_size = 24);

}  // namespace pcgym
