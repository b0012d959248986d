#include <sstream>

#include "pcgym/cli/cli.hpp"

namespace pcgym {

std::string tile_color(const TileId& tile) {
  switch (tile.semantic) {
    case Semantic::Floor: return "#e8e0cc";
    case Semantic::Wall: return "#4a4a4a";
    case Semantic::Player: return "#1e64dc";
    case Semantic::Door: return tile.game == Game::Frogs ? "#f0c419" : "#8b4513";
    case Semantic::Key: return "#ffd700";
    case Semantic::Gem: return tile.kind == gem_kind::kBlue ? "#22b8e6" : "#2ca02c";
    case Semantic::Enemy: return tile.kind == enemy_kind::kBullet ? "#ff00c8" : "#d62728";
    case Semantic::Water: return "#3a6fd8";
    case Semantic::Road: return "#777777";
    case Semantic::Forest: return "#2e7d32";
    case Semantic::Log: return "#a0522d";
    case Semantic::Car: return "#ff8c00";
    case Semantic::Boulder: return "#9e9e9e";
    case Semantic::Dirt: return "#c2a36b";
    case Semantic::Empty: return "#111111";
  }
  return "#ffffff";
}

std::string render_svg(const Level& level, int tile_size) {
  const Charset& cs = charset(level.game());
  std::ostringstream out;
  const int w = level.width() * tile_size;
  const int h = level.height() * tile_size;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
  for (int y = 0; y < level.height(); ++y) {
    for (int x = 0; x < level.width(); ++x) {
      const TileId& t = cs[level.at(x, y)];
      out << "<rect x=\"" << x * tile_size << "\" y=\"" << y * tile_size << "\" width=\"" << tile_size
          << "\" height=\"" << tile_size << "\" fill=\"" << tile_color(t) << "\"><title>" << t.name
          << "</title></rect>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pcgym
