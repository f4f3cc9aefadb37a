#include "curv/metric.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace curv {

namespace {

bool is_canonical(const Eigen::MatrixXd& eps, int p) {
  const int m = static_cast<int>(eps.rows());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double want = (i == j) ? (i < p ? -1.0 : 1.0) : 0.0;
      if (std::abs(eps(i, j) - want) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

Metric::Metric(Eigen::MatrixXd components, int p, int q)
    : eps_(std::move(components)), p_(p), q_(q) {
  const int m = static_cast<int>(eps_.rows());
  if (m == 0 || p + q != m || p < 0 || q < 0)
    throw dimension_mismatch("metric signature (p,q) must satisfy p+q = dim >= 1");
  if ((eps_ - eps_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, eps_.cwiseAbs().maxCoeff()))
    throw validation_error("metric components must be symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eps_);
  int negatives = 0, zeros = 0;
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    if (std::abs(es.eigenvalues()(i)) < 1e-12 * scale) ++zeros;
    else if (es.eigenvalues()(i) < 0) ++negatives;
  }
  if (zeros > 0) throw validation_error("metric is degenerate");
  if (negatives != p)
    throw validation_error("metric eigenvalue signs do not match declared signature");

  inv_ = eps_.inverse();
  canonical_ = is_canonical(eps_, p);
}

Metric make_metric(int p, int q) {
  if (p + q < 1) throw dimension_mismatch("empty space: p+q must be >= 1");
  const int m = p + q;
  Eigen::MatrixXd eps = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < p; ++i) eps(i, i) = -1.0;
  return Metric(eps, p, q);
}

OrthonormalizedMetric orthonormalize(const Eigen::MatrixXd& eps) {
  const int m = static_cast<int>(eps.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eps);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();

  // order eigenvectors so the negative directions come first
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()(a) < es.eigenvalues()(b);
  });

  int p = 0;
  Eigen::MatrixXd L(m, m);
  for (int c = 0; c < m; ++c) {
    const double lam = es.eigenvalues()(order[c]);
    if (std::abs(lam) < 1e-12 * scale) throw validation_error("metric is degenerate");
    if (lam < 0) ++p;
    L.col(c) = es.eigenvectors().col(order[c]) / std::sqrt(std::abs(lam));
  }
  return {make_metric(p, m - p), L};
}

}  // namespace curv
