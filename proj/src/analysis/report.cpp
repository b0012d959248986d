#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "json.hpp"
#include "pcgym/analysis/analysis.hpp"

namespace pcgym {

namespace {

std::string fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

AnalysisReport analyze(const std::vector<Level>& levels, std::vector<RowMeta> meta, const AnalysisOptions& options) {
  const LevelMatrix m = vectorize(levels, std::move(meta));
  AnalysisReport r;
  r.game = levels.front().game();
  r.eps = options.eps;
  r.min_samples = options.min_samples;
  r.projection = pca(m, 2);
  r.clusters = dbscan(r.projection.points, options.eps, options.min_samples);
  r.meta = m.meta;

  for (std::size_t i = 0; i < r.meta.size(); ++i) {
    if (r.meta[i].source != "human") continue;
    ReferencePlacement ref;
    ref.id = r.meta[i].id;
    ref.row = i;
    ref.label = r.clusters.labels[i];
    ref.outlier = ref.label < 0;
    const auto& p = r.projection.points[i];
    for (std::size_t c = 0; c < r.clusters.centroids.size(); ++c) {
      const double d = std::hypot(p[0] - r.clusters.centroids[c][0], p[1] - r.clusters.centroids[c][1]);
      if (!ref.nearest_distance || d < *ref.nearest_distance) {
        ref.nearest_distance = d;
        ref.nearest_cluster = static_cast<int>(c);
      }
    }
    r.references.push_back(ref);
  }
  return r;
}

void write_projection_csv(const AnalysisReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "id,x,y,label,source,difficulty\n";
  for (std::size_t i = 0; i < report.meta.size(); ++i) {
    const auto& m = report.meta[i];
    const auto& p = report.projection.points[i];
    out << m.id << ',' << fixed(p[0], 6) << ',' << fixed(p[1], 6) << ',' << report.clusters.labels[i] << ','
        << m.source << ',' << (m.difficulty ? format_difficulty(*m.difficulty) : "") << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_clusters_json(const AnalysisReport& report, const std::filesystem::path& path) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["game"] = std::string(game_name(report.game));
  j["levels"] = report.meta.size();
  j["eps"] = report.eps;
  j["min_samples"] = report.min_samples;
  j["explained_variance"] = report.projection.explained_variance;
  j["rank"] = report.projection.rank;
  j["degenerate"] = report.projection.degenerate;
  j["cluster_count"] = report.clusters.cluster_count;
  j["noise_count"] = report.clusters.noise_count;

  std::vector<std::map<std::string, int>> variants(static_cast<std::size_t>(report.clusters.cluster_count));
  std::map<std::string, int> noise_variants;
  for (std::size_t i = 0; i < report.meta.size(); ++i) {
    const auto& v = report.meta[i].variant;
    if (v.empty()) continue;
    const int label = report.clusters.labels[i];
    ++(label < 0 ? noise_variants : variants[static_cast<std::size_t>(label)])[v];
  }
  ordered_json clusters = ordered_json::array();
  for (int c = 0; c < report.clusters.cluster_count; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    ordered_json cj = {{"label", c},
                       {"size", report.clusters.sizes[cu]},
                       {"centroid", {report.clusters.centroids[cu][0], report.clusters.centroids[cu][1]}}};
    if (!variants[cu].empty()) cj["variants"] = variants[cu];
    clusters.push_back(cj);
  }
  j["clusters"] = clusters;
  if (!noise_variants.empty()) j["noise_variants"] = noise_variants;

  ordered_json refs = ordered_json::array();
  for (const auto& ref : report.references) {
    ordered_json rj = {{"id", ref.id}, {"label", ref.label}, {"outlier", ref.outlier},
                       {"nearest_cluster", ref.nearest_cluster}, {"nearest_distance", nullptr}};
    if (ref.nearest_distance) rj["nearest_distance"] = *ref.nearest_distance;
    refs.push_back(rj);
  }
  j["references"] = refs;

  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_scatter_svg(const AnalysisReport& report, const std::filesystem::path& path) {
  constexpr double kW = 640, kH = 480, kMargin = 30;
  const auto& pts = report.projection.points;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  if (!pts.empty()) {
    x0 = x1 = pts[0][0];
    y0 = y1 = pts[0][1];
  }
  for (const auto& p : pts) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double sx = (kW - 2 * kMargin) / std::max(x1 - x0, 1e-9);
  const double sy = (kH - 2 * kMargin) / std::max(y1 - y0, 1e-9);
  auto px = [&](double x) { return fixed(kMargin + (x - x0) * sx, 2); };
  auto py = [&](double y) { return fixed(kH - kMargin - (y - y0) * sy, 2); };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
      << kW << ' ' << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#f4f4f4\"/>\n";
  std::vector<std::size_t> human;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (report.meta[i].source == "human") {
      human.push_back(i);
      continue;
    }
    const int label = report.clusters.labels[i];
    const char* color = label < 0 ? "#000000" : kPalette[label % 10];
    out << "<circle cx=\"" << px(pts[i][0]) << "\" cy=\"" << py(pts[i][1]) << "\" r=\"2.5\" fill=\"" << color
        << "\"/>\n";
  }
  for (int c = 0; c < report.clusters.cluster_count; ++c) {
    const auto& ctr = report.clusters.centroids[static_cast<std::size_t>(c)];
    out << "<circle cx=\"" << px(ctr[0]) << "\" cy=\"" << py(ctr[1]) << "\" r=\"8\" fill=\"" << kPalette[c % 10]
        << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t i : human) {
    out << "<circle cx=\"" << px(pts[i][0]) << "\" cy=\"" << py(pts[i][1])
        << "\" r=\"5\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace pcgym
