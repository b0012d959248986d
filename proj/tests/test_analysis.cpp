#include <fstream>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "pcgym/analysis/analysis.hpp"
#include "pcgym/generators/generator.hpp"
#include "test_util.hpp"

using namespace pcgym;
using testing::level;

namespace {

std::vector<std::array<double, 2>> blobs(Rng& rng, int n) {
  std::vector<std::array<double, 2>> pts;
  const int centres = 1 + static_cast<int>(rng.below(4));
  for (int i = 0; i < n; ++i) {
    const double cx = static_cast<double>(i % centres) * 2.0;
    // coarse grid so that exact ties and boundary distances occur
    pts.push_back({cx + std::round((rng.uniform() - 0.5) * 16) / 8, std::round((rng.uniform() - 0.5) * 16) / 8});
  }
  return pts;
}

}  // namespace

TEST_CASE("vectorize: one-hot blocks in channel-major order") {
  const std::vector<Level> levels{level(Game::Zelda, "www\nwAw\nwww"), level(Game::Zelda, "www\nwAw\nwww")};
  const LevelMatrix m = vectorize(levels);
  CHECK(m.rows == 2);
  CHECK(m.channels == 6);
  CHECK(m.cols == 6 * 9);
  CHECK_FALSE(m.padded);
  for (int r = 0; r < 2; ++r) {
    int total = 0;
    for (int c = 0; c < m.cols; ++c) total += m.at(r, c);
    CHECK(total == 9);
  }
  const int player = charset(Game::Zelda).player_channel();
  CHECK(m.at(0, player * 9 + 4) == 1);
  const int wall = charset(Game::Zelda).require(Semantic::Wall);
  int walls = 0;
  for (int c = 0; c < 9; ++c) walls += m.at(0, wall * 9 + c);
  CHECK(walls == 8);
  CHECK(m.meta[1].id == "1");
}

TEST_CASE("vectorize: padding only when sizes differ") {
  const Level small = level(Game::Frogs, "fgf\n---\n.A.");
  const Level wide = level(Game::Frogs, "fgff\n----\n.A..\n....");
  const LevelMatrix m = vectorize({small, wide});
  CHECK(m.padded);
  CHECK(m.width == 4);
  CHECK(m.height == 4);
  CHECK(m.channels == static_cast<int>(charset(Game::Frogs).size()) + 1);
  const int pad = m.channels - 1;
  int padded_cells = 0;
  for (int c = 0; c < 16; ++c) padded_cells += m.at(0, pad * 16 + c);
  CHECK(padded_cells == 16 - 9);
  // anchored top-left: (0,0) is real, (3,3) is padding
  CHECK(m.at(0, pad * 16 + 0) == 0);
  CHECK(m.at(0, pad * 16 + 15) == 1);
  for (int r = 0; r < 2; ++r) {
    int total = 0;
    for (int c = 0; c < m.cols; ++c) total += m.at(r, c);
    CHECK(total == 16);
  }
}

TEST_CASE("vectorize: input errors") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const AnalysisError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of([] { vectorize({}); }) == static_cast<int>(AnalysisErrorKind::EmptyCorpus));
  CHECK(kind_of([] {
          vectorize({level(Game::Zelda, "www\nwAw\nwww"), level(Game::Frogs, "fgf\n---\n.A.")});
        }) == static_cast<int>(AnalysisErrorKind::MixedGames));
  CHECK(kind_of([] { vectorize({level(Game::Zelda, "www\nwAw\nwww")}, {RowMeta{}, RowMeta{}}); }) ==
        static_cast<int>(AnalysisErrorKind::BadInput));
}

TEST_CASE("pca: degenerate inputs") {
  const std::vector<double> same(5 * 4, 1.0);
  Projection p = pca(same, 5, 4);
  CHECK(p.rank == 0);
  CHECK(p.degenerate);
  CHECK(p.explained_variance == std::vector<double>{0.0, 0.0});
  for (const auto& pt : p.points) CHECK(pt == std::array<double, 2>{0.0, 0.0});

  // points on the line y = 2x
  std::vector<double> line;
  for (int i = 0; i < 6; ++i) {
    line.push_back(i);
    line.push_back(2.0 * i);
  }
  p = pca(line, 6, 2);
  CHECK(p.rank == 1);
  CHECK(p.degenerate);
  CHECK(p.explained_variance[0] == doctest::Approx(5.0 * 3.5));
  CHECK(std::abs(p.explained_variance[1]) < 1e-12);
  CHECK(std::abs(p.components[0][0]) == doctest::Approx(1 / std::sqrt(5.0)));
  CHECK(p.components[0][1] > 0);

  CHECK_THROWS_AS(pca(same, 1, 20), AnalysisError);
}

TEST_CASE("pca agrees with a Jacobi oracle") {
  Rng rng(31);
  for (auto [n, p] : {std::pair{50, 20}, std::pair{30, 80}, std::pair{12, 12}}) {
    std::vector<double> x(static_cast<std::size_t>(n) * p);
    for (double& v : x) v = rng.bernoulli(0.3) ? 1.0 : 0.0;
    const Projection got = pca(x, n, p);
    const auto want = oracle::pca2(x, n, p);
    CHECK(oracle::max_abs_diff_up_to_sign(got.points, want.points) < 1e-6);
    CHECK(got.explained_variance[0] == doctest::Approx(want.variance[0]).epsilon(1e-9));
    CHECK(got.explained_variance[1] == doctest::Approx(want.variance[1]).epsilon(1e-9));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const auto& u = got.components[static_cast<std::size_t>(a)];
        const auto& v = got.components[static_cast<std::size_t>(b)];
        const double dot = std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
      }
    }
  }
}

TEST_CASE("dbscan: small examples") {
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({0.01 * i, 0.0});
  for (int i = 0; i < 12; ++i) pts.push_back({5.0 + 0.01 * i, 5.0});
  ClusterReport r = dbscan(pts, 0.5, 10);
  CHECK(r.cluster_count == 2);
  CHECK(r.noise_count == 0);
  CHECK(r.labels[0] == 0);
  CHECK(r.labels[23] == 1);
  CHECK(r.sizes == std::vector<int>{12, 12});
  CHECK(r.centroids[1][0] == doctest::Approx(5.055));

  r = dbscan({{1.0, 1.0}}, 0.5, 10);
  CHECK(r.cluster_count == 0);
  CHECK(r.labels == std::vector<int>{-1});

  r = dbscan(std::vector<std::array<double, 2>>(15, {2.0, 2.0}), 0.5, 10);
  CHECK(r.cluster_count == 1);
  CHECK(r.noise_count == 0);

  r = dbscan({}, 0.5, 10);
  CHECK(r.cluster_count == 0);
  CHECK_THROWS_AS(dbscan({{0, 0}}, 0.0, 10), AnalysisError);
  CHECK_THROWS_AS(dbscan({{0, 0}}, 0.5, 0), AnalysisError);
}

TEST_CASE("dbscan matches brute force and ignores input order") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(196));
    const auto pts = blobs(rng, n);
    const double eps = 0.15 + rng.uniform() * 0.4;
    const int min_samples = 2 + static_cast<int>(rng.below(9));
    const ClusterReport got = dbscan(pts, eps, min_samples);
    REQUIRE(oracle::same_partition(got.labels, oracle::dbscan(pts, eps, min_samples)));

    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<std::array<double, 2>> shuffled;
    for (std::size_t i : perm) shuffled.push_back(pts[i]);
    const ClusterReport again = dbscan(shuffled, eps, min_samples);
    std::vector<int> back(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) back[perm[i]] = again.labels[i];
    CHECK(oracle::same_partition(got.labels, back));
  }
}

TEST_CASE("analysis report and writers") {
  std::vector<Level> levels;
  std::vector<RowMeta> meta;
  for (std::uint64_t s = 0; s < 60; ++s) {
    levels.push_back(generate({Game::Solarfox, 1.0, s}));
    meta.push_back({"gen" + std::to_string(s), "generated", 1.0, s, level_variant(levels.back())});
  }
  levels.push_back(load_level_file(testing::reference_dir() / "solarfox" / "lv0.txt", Game::Solarfox));
  meta.push_back({"lv0", "human", std::nullopt, std::nullopt, level_variant(levels.back())});

  const AnalysisReport report = analyze(levels, meta, {0.5, 3});
  REQUIRE(report.references.size() == 1);
  CHECK(report.references[0].id == "lv0");
  CHECK(report.references[0].row == 60);
  if (report.clusters.cluster_count > 0) CHECK(report.references[0].nearest_distance.has_value());

  const auto dir = testing::scratch("analysis_writers");
  write_projection_csv(report, dir / "projection.csv");
  write_clusters_json(report, dir / "clusters.json");
  write_scatter_svg(report, dir / "scatter.svg");
  std::ifstream csv(dir / "projection.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "id,x,y,label,source,difficulty");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 61);

  std::ifstream js(dir / "clusters.json");
  const auto j = nlohmann::json::parse(js);
  CHECK(j["game"] == "solarfox");
  CHECK(j["levels"] == 61);
  CHECK(j["cluster_count"] == report.clusters.cluster_count);
  CHECK(j["references"].size() == 1);

  std::ifstream svg(dir / "scatter.svg");
  const std::string body((std::istreambuf_iterator<char>(svg)), {});
  CHECK(body.rfind("<svg", 0) == 0);
}
