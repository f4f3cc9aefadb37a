#ifndef CURV_BILINEAR_FORM_HPP
#define CURV_BILINEAR_FORM_HPP

#include <Eigen/Dense>

#include "curv/metric.hpp"

namespace curv {

/// A bilinear form b on V with its decomposition into symmetric,
/// antisymmetric and trace-free symmetric parts relative to a metric.
class BilinearForm {
 public:
  explicit BilinearForm(Eigen::MatrixXd b) : b_(std::move(b)) {}

  static BilinearForm zero(int m) { return BilinearForm(Eigen::MatrixXd::Zero(m, m)); }

  int dimension() const { return static_cast<int>(b_.rows()); }
  const Eigen::MatrixXd& components() const { return b_; }
  double operator()(int i, int j) const { return b_(i, j); }

  Eigen::MatrixXd symmetric_part() const { return 0.5 * (b_ + b_.transpose()); }
  Eigen::MatrixXd antisymmetric_part() const { return 0.5 * (b_ - b_.transpose()); }

  /// eps-trace: eps^{ij} b_{ij}
  double trace(const Metric& g) const { return (g.inverse().array() * b_.array()).sum(); }

  /// trace-free symmetric part relative to g
  Eigen::MatrixXd trace_free_part(const Metric& g) const {
    Eigen::MatrixXd s = symmetric_part();
    double tr = (g.inverse().array() * s.array()).sum();
    return s - (tr / g.dimension()) * g.components();
  }

  double norm() const { return b_.norm(); }

 private:
  Eigen::MatrixXd b_;
};

}  // namespace curv

#endif
