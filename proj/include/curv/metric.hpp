#ifndef CURV_METRIC_HPP
#define CURV_METRIC_HPP

#include <Eigen/Dense>

#include "curv/common.hpp"

namespace curv {

/// Non-degenerate symmetric bilinear form of signature (p,q), p negative and
/// q positive directions, together with its inverse. The canonical form is
/// diag(-1 x p, +1 x q); decomposition routines assume canonical input and
/// non-canonical metrics are orthonormalized first (see orthonormalize()).
class Metric {
 public:
  Metric(Eigen::MatrixXd components, int p, int q);

  int dimension() const { return static_cast<int>(eps_.rows()); }
  int p() const { return p_; }
  int q() const { return q_; }
  bool euclidean() const { return p_ == 0; }
  bool canonical() const { return canonical_; }

  const Eigen::MatrixXd& components() const { return eps_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }

  double operator()(int i, int j) const { return eps_(i, j); }
  double inv(int i, int j) const { return inv_(i, j); }

  /// <x, y>
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(eps_ * y);
  }

 private:
  Eigen::MatrixXd eps_;
  Eigen::MatrixXd inv_;
  int p_, q_;
  bool canonical_;
};

/// Canonical metric diag(-1,...,-1,+1,...,+1) with p entries -1 first.
Metric make_metric(int p, int q);

/// Basis change L with L^T eps L = canonical; returns the canonical metric
/// and the change of basis. For canonical input L = identity.
struct OrthonormalizedMetric {
  Metric canonical;
  Eigen::MatrixXd change_of_basis;
};
OrthonormalizedMetric orthonormalize(const Eigen::MatrixXd& eps);

}  // namespace curv

#endif
