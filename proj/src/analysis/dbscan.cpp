#include <cmath>
#include <map>
#include <numeric>

#include "pcgym/analysis/analysis.hpp"

namespace pcgym {

namespace {

using Cell = std::pair<long long, long long>;

// Uniform grid with cell side eps. Queries scan one extra ring so that
// rounding in floor(x / eps) can never hide a neighbour.
class GridIndex {
 public:
  GridIndex(const std::vector<std::array<double, 2>>& pts, double eps) : pts_(pts), eps_(eps) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[cell_of(pts[i])].push_back(i);
  }

  template <typename F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    const Cell c = cell_of(pts_[i]);
    const double eps2 = eps_ * eps_;
    for (long long dy = -2; dy <= 2; ++dy) {
      for (long long dx = -2; dx <= 2; ++dx) {
        const auto it = cells_.find({c.first + dx, c.second + dy});
        if (it == cells_.end()) continue;
        for (std::size_t j : it->second) {
          const double ddx = pts_[i][0] - pts_[j][0];
          const double ddy = pts_[i][1] - pts_[j][1];
          if (ddx * ddx + ddy * ddy <= eps2) f(j, ddx * ddx + ddy * ddy);
        }
      }
    }
  }

 private:
  Cell cell_of(const std::array<double, 2>& p) const {
    return {static_cast<long long>(std::floor(p[0] / eps_)), static_cast<long long>(std::floor(p[1] / eps_))};
  }

  const std::vector<std::array<double, 2>>& pts_;
  double eps_;
  std::map<Cell, std::vector<std::size_t>> cells_;
};

}  // namespace

ClusterReport dbscan(const std::vector<std::array<double, 2>>& points, double eps, int min_samples) {
  if (!(eps > 0.0) || min_samples < 1) {
    throw AnalysisError(AnalysisErrorKind::BadInput, "dbscan needs eps > 0 and min_samples >= 1");
  }
  for (const auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
      throw AnalysisError(AnalysisErrorKind::BadInput, "dbscan input contains a non-finite point");
    }
  }
  const std::size_t n = points.size();
  const GridIndex index(points, eps);
  ClusterReport out;
  out.core.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    int count = 0;
    index.for_each_neighbor(i, [&](std::size_t, double) { ++count; });
    out.core[i] = count >= min_samples;
  }

  // Core points: union-find over core-core edges.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.core[i]) continue;
    index.for_each_neighbor(i, [&](std::size_t j, double) {
      if (out.core[j]) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    });
  }

  // Each point's anchor: itself if core, else its nearest core neighbour.
  std::vector<long long> anchor(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.core[i]) {
      anchor[i] = static_cast<long long>(i);
      continue;
    }
    double best = 0.0;
    index.for_each_neighbor(i, [&](std::size_t j, double d2) {
      if (!out.core[j]) return;
      if (anchor[i] < 0 || d2 < best ||
          (d2 == best && points[j] < points[static_cast<std::size_t>(anchor[i])])) {
        anchor[i] = static_cast<long long>(j);
        best = d2;
      }
    });
  }

  std::map<std::size_t, int> label_of_root;
  out.labels.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (anchor[i] < 0) {
      ++out.noise_count;
      continue;
    }
    const std::size_t root = find(static_cast<std::size_t>(anchor[i]));
    auto [it, inserted] = label_of_root.emplace(root, out.cluster_count);
    if (inserted) ++out.cluster_count;
    out.labels[i] = it->second;
  }

  out.sizes.assign(static_cast<std::size_t>(out.cluster_count), 0);
  out.centroids.assign(static_cast<std::size_t>(out.cluster_count), {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] < 0) continue;
    const auto c = static_cast<std::size_t>(out.labels[i]);
    ++out.sizes[c];
    out.centroids[c][0] += points[i][0];
    out.centroids[c][1] += points[i][1];
  }
  for (std::size_t c = 0; c < out.centroids.size(); ++c) {
    out.centroids[c][0] /= out.sizes[c];
    out.centroids[c][1] /= out.sizes[c];
  }
  return out;
}

}  // namespace pcgym
