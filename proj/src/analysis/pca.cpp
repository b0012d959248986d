#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pcgym/analysis/analysis.hpp"

namespace pcgym {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Flip so the entry of largest magnitude (first one on ties) is positive.
void fix_sign(VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0) v = -v;
}

// Unit vector orthogonal to the first `count` columns of `basis`, taken from
// the standard basis in index order.
VectorXd completion(const MatrixXd& basis, int count) {
  const Eigen::Index p = basis.rows();
  for (Eigen::Index j = 0; j < p; ++j) {
    VectorXd e = VectorXd::Unit(p, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < count; ++c) e -= basis.col(c).dot(e) * basis.col(c);
    }
    const double norm = e.norm();
    if (norm > 0.5) return e / norm;
  }
  return VectorXd::Zero(p);
}

}  // namespace

Projection pca(const std::vector<double>& data, int n, int p, int k) {
  if (n < 2) throw AnalysisError(AnalysisErrorKind::BadInput, "PCA needs at least two rows");
  if (p < 1 || k < 1) throw AnalysisError(AnalysisErrorKind::BadInput, "PCA needs columns and k >= 1");
  if (data.size() != static_cast<std::size_t>(n) * p) {
    throw AnalysisError(AnalysisErrorKind::BadInput, "PCA input size does not match n x p");
  }

  Projection out;
  out.n = n;
  out.dims = p;
  out.k = std::min(k, p);
  out.degenerate = out.k < k;

  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(data.data(), n, p);
  const VectorXd mean = x.colwise().mean().transpose();
  const MatrixXd xc = x.rowwise() - mean.transpose();
  const double denom = static_cast<double>(n - 1);

  // Eigenvalues come back ascending; walk from the top.
  VectorXd lambda;
  MatrixXd axes(p, out.k);
  int usable = 0;
  if (p <= n) {
    const MatrixXd cov = (xc.transpose() * xc) / denom;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    lambda = es.eigenvalues();
    const double tol = 1e-10 * std::max(1.0, lambda[p - 1]);
    for (int i = 0; i < out.k && lambda[p - 1 - i] > tol; ++i) {
      axes.col(i) = es.eigenvectors().col(p - 1 - i);
      ++usable;
    }
    lambda = lambda.reverse().eval();
  } else {
    // Gram route: with G = Xc Xc^T / (n-1) and G u = l u, the covariance
    // axis is Xc^T u / sqrt(l (n-1)).
    const MatrixXd gram = (xc * xc.transpose()) / denom;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    lambda = es.eigenvalues();
    const double tol = 1e-10 * std::max(1.0, lambda[n - 1]);
    for (int i = 0; i < out.k && lambda[n - 1 - i] > tol; ++i) {
      const double l = lambda[n - 1 - i];
      axes.col(i) = xc.transpose() * es.eigenvectors().col(n - 1 - i) / std::sqrt(l * denom);
      ++usable;
    }
    lambda = lambda.reverse().eval();
  }

  // Re-orthonormalize the data axes, then complete the basis.
  for (int i = 0; i < usable; ++i) {
    VectorXd v = axes.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < i; ++c) v -= axes.col(c).dot(v) * axes.col(c);
    }
    v.normalize();
    fix_sign(v);
    axes.col(i) = v;
  }
  for (int i = usable; i < out.k; ++i) {
    VectorXd v = completion(axes, i);
    fix_sign(v);
    axes.col(i) = v;
  }
  out.rank = usable;
  out.degenerate = out.degenerate || usable < k;

  const MatrixXd proj = xc * axes;
  out.mean.assign(mean.data(), mean.data() + p);
  out.explained_variance.assign(static_cast<std::size_t>(out.k), 0.0);
  out.components.assign(static_cast<std::size_t>(out.k), std::vector<double>(static_cast<std::size_t>(p)));
  out.coordinates.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(out.k), 0.0));
  for (int i = 0; i < out.k; ++i) {
    if (i < usable) out.explained_variance[static_cast<std::size_t>(i)] = lambda[i];
    for (int j = 0; j < p; ++j) out.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = axes(j, i);
  }
  out.points.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < usable; ++i) out.coordinates[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = proj(r, i);
    for (int i = 0; i < std::min(2, usable); ++i) out.points[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = proj(r, i);
  }
  return out;
}

Projection pca(const LevelMatrix& matrix, int k) {
  std::vector<double> data(matrix.data.begin(), matrix.data.end());
  return pca(data, matrix.rows, matrix.cols, k);
}

}  // namespace pcgym
