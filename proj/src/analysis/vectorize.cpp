#include <algorithm>

#include "pcgym/analysis/analysis.hpp"

namespace pcgym {

LevelMatrix vectorize(const std::vector<Level>& levels, std::vector<RowMeta> meta) {
  if (levels.empty()) throw AnalysisError(AnalysisErrorKind::EmptyCorpus, "cannot vectorize an empty corpus");
  if (!meta.empty() && meta.size() != levels.size()) {
    throw AnalysisError(AnalysisErrorKind::BadInput, "row metadata does not match the corpus size");
  }
  const Game game = levels.front().game();
  LevelMatrix m;
  for (const auto& level : levels) {
    if (level.game() != game) {
      throw AnalysisError(AnalysisErrorKind::MixedGames, "corpus mixes " + std::string(game_name(game)) + " and " +
                                                             std::string(game_name(level.game())) + " levels");
    }
    if (m.width != 0 && (level.width() != m.width || level.height() != m.height)) m.padded = true;
    m.width = std::max(m.width, level.width());
    m.height = std::max(m.height, level.height());
  }

  const int tiles = static_cast<int>(charset(game).size());
  m.channels = tiles + (m.padded ? 1 : 0);
  m.rows = static_cast<int>(levels.size());
  m.cols = m.channels * m.height * m.width;
  m.data.assign(static_cast<std::size_t>(m.rows) * m.cols, 0);
  const std::size_t plane = static_cast<std::size_t>(m.height) * m.width;

  for (int r = 0; r < m.rows; ++r) {
    const Level& level = levels[static_cast<std::size_t>(r)];
    std::uint8_t* row = m.data.data() + static_cast<std::size_t>(r) * m.cols;
    for (int y = 0; y < m.height; ++y) {
      for (int x = 0; x < m.width; ++x) {
        const std::size_t cell = static_cast<std::size_t>(y) * m.width + x;
        const bool inside = x < level.width() && y < level.height();
        const int channel = inside ? level.at(x, y) : tiles;
        row[static_cast<std::size_t>(channel) * plane + cell] = 1;
      }
    }
  }

  if (meta.empty()) {
    meta.resize(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
      meta[i].id = std::to_string(i);
      meta[i].difficulty = levels[i].difficulty();
      meta[i].seed = levels[i].seed();
    }
  }
  m.meta = std::move(meta);
  return m;
}

}  // namespace pcgym
