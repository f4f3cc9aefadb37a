#ifndef CURV_ENDO_HPP
#define CURV_ENDO_HPP

#include <Eigen/Dense>

#include "curv/metric.hpp"

namespace curv {

/// Endomorphism of V, column convention: (L e_j) = sum_a L(a,j) e_a.
class Endo {
 public:
  explicit Endo(Eigen::MatrixXd matrix) : mat_(std::move(matrix)) {}

  static Endo identity(int m) { return Endo(Eigen::MatrixXd::Identity(m, m)); }

  int dimension() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  double operator()(int i, int j) const { return mat_(i, j); }

  // verdicts relative to a metric
  bool self_adjoint(const Metric& g, double tol = 1e-9) const;
  bool skew_adjoint(const Metric& g, double tol = 1e-9) const;
  bool metric_preserving(const Metric& g, double tol = 1e-9) const;

  /// <L e_i, e_j> as a matrix (the lowered endomorphism).
  Eigen::MatrixXd lowered(const Metric& g) const { return mat_.transpose() * g.components(); }

 private:
  Eigen::MatrixXd mat_;
};

}  // namespace curv

#endif
