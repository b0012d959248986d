#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcgym/core/level.hpp"

namespace pcgym {

enum class AnalysisErrorKind { EmptyCorpus, MixedGames, BadInput };

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(AnalysisErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  AnalysisErrorKind kind() const { return kind_; }

 private:
  AnalysisErrorKind kind_;
};

struct RowMeta {
  std::string id;
  std::string source = "generated";  // or "human"
  std::optional<double> difficulty;
  std::optional<std::uint64_t> seed;
  std::string variant;
};

// One row per level. Columns run over (channel, row, col) with the column
// index varying fastest. Levels smaller than the corpus maximum are anchored
// top-left and the uncovered cells are marked in an extra padding channel,
// which only exists when dims differ.
struct LevelMatrix {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  int height = 0;
  int width = 0;
  bool padded = false;
  std::vector<std::uint8_t> data;
  std::vector<RowMeta> meta;

  std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// meta may be empty; ids then default to the row index.
LevelMatrix vectorize(const std::vector<Level>& levels, std::vector<RowMeta> meta = {});

struct Projection {
  int n = 0;
  int k = 0;
  int dims = 0;
  std::vector<std::array<double, 2>> points;        // first two coordinates
  std::vector<std::vector<double>> coordinates;      // n x k
  std::vector<std::vector<double>> components;       // k x dims, orthonormal
  std::vector<double> explained_variance;            // k, descending
  std::vector<double> mean;                          // dims
  int rank = 0;
  bool degenerate = false;  // fewer than k axes carry variance
};

// Dense row-major n x p input. Axes are eigenvectors of the sample
// covariance (divided by n - 1). The largest-magnitude entry of each axis
// is made positive.
Projection pca(const std::vector<double>& data, int n, int p, int k = 2);
Projection pca(const LevelMatrix& matrix, int k = 2);

struct ClusterReport {
  std::vector<int> labels;  // -1 = noise
  std::vector<bool> core;
  std::vector<std::array<double, 2>> centroids;
  std::vector<int> sizes;
  int cluster_count = 0;
  int noise_count = 0;
};

// Clusters are connected components of core points (a point with at least
// min_samples points, itself included, within eps). A border point joins the
// cluster of its nearest core point, so the result does not depend on input
// order. Labels are numbered by first appearance.
ClusterReport dbscan(const std::vector<std::array<double, 2>>& points, double eps = 0.5, int min_samples = 10);

struct ReferencePlacement {
  std::string id;
  std::size_t row = 0;
  int label = -1;
  bool outlier = true;
  int nearest_cluster = -1;
  std::optional<double> nearest_distance;  // empty when there are no clusters
};

struct AnalysisReport {
  Game game = Game::Zelda;
  double eps = 0.5;
  int min_samples = 10;
  Projection projection;
  ClusterReport clusters;
  std::vector<RowMeta> meta;
  std::vector<ReferencePlacement> references;
};

struct AnalysisOptions {
  double eps = 0.5;
  int min_samples = 10;
};

// Reference ("human") levels take part in centering and clustering.
AnalysisReport analyze(const std::vector<Level>& levels, std::vector<RowMeta> meta, const AnalysisOptions& options = {});

void write_projection_csv(const AnalysisReport& report, const std::filesystem::path& path);
void write_clusters_json(const AnalysisReport& report, const std::filesystem::path& path);
void write_scatter_svg(const AnalysisReport& report, const std::filesystem::path& path);

}  // namespace pcgym
