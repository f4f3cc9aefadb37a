#include "curv/endo.hpp"

namespace curv {

namespace {
double rel_err(const Eigen::MatrixXd& diff, const Eigen::MatrixXd& ref) {
  return diff.cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
}
}  // namespace

bool Endo::self_adjoint(const Metric& g, double tol) const {
  Eigen::MatrixXd eL = g.components() * mat_;
  return rel_err(eL - eL.transpose(), eL) <= tol;
}

bool Endo::skew_adjoint(const Metric& g, double tol) const {
  Eigen::MatrixXd eL = g.components() * mat_;
  return rel_err(eL + eL.transpose(), eL) <= tol;
}

bool Endo::metric_preserving(const Metric& g, double tol) const {
  Eigen::MatrixXd pulled = mat_.transpose() * g.components() * mat_;
  return rel_err(pulled - g.components(), g.components()) <= tol;
}

}  // namespace curv
