#ifndef CURV_QUATERNIONIC_HPP
#define CURV_QUATERNIONIC_HPP

#include <optional>
#include <vector>

#include "curv/hermitian.hpp"

namespace curv {

enum class HyperFlavor { hyper_hermitian, hyper_para_hermitian };

/// Triple (J1, J2, J3) with J1 J2 = -J2 J1 = J3 and
///   hyper:      J1^2 = J2^2 = J3^2 = -id, all three hermitian;
///   hyper-para: J1^2 = -J2^2 = -J3^2 = -id, J1 hermitian, J2/J3 para.
struct HyperTriple {
  Metric metric;
  ComplexStructure J1, J2, J3;
  HyperFlavor flavor;
};

HyperTriple validate_hyper(const Metric& g, const Eigen::MatrixXd& J1,
                           const Eigen::MatrixXd& J2, const Eigen::MatrixXd& J3,
                           HyperFlavor flavor);

/// Standard quaternion triple on Euclidean R^4k (left multiplication by i, j, k).
HyperTriple standard_hyper_triple(const Metric& g);
/// Standard hyper-para triple on signature (n, n), built from the standard
/// complex structure and an anticommuting para swap.
HyperTriple standard_hyper_para_triple(const Metric& g);

/// tau*_Q = tau*_{J1} + tau*_{J2} + tau*_{J3} with flavor-correct signs.
double tau_star_q(const CurvatureModel& model, const HyperTriple& triple);

/// J'_i = sum_j rot(i,j) J_j for rot in SO(3) (hyper) or SO(2,1) with the
/// invariant form diag(-1,+1,+1) matching the squares of (J1,J2,J3).
HyperTriple reparametrize(const HyperTriple& triple, const Eigen::Matrix3d& rot,
                          double tol = 1e-9);

/// Adams number: maximal size of a Clifford family on R^m.
int adams_nu(int m);

struct CliffordFamily {
  std::vector<Endo> psi;  // skew-adjoint, psi_i psi_j + psi_j psi_i = -2 delta_ij
  int m = 0;
};

/// Explicit family of given size on Euclidean R^m; exact integer entries.
/// Throws if ell exceeds adams_nu(m).
CliffordFamily clifford_family(const Metric& g, int ell);

/// Constructor provenance carried by Clifford models for realizability verdicts.
struct CliffordTag {
  int ell = 0;
  double lambda0 = 0.0;
  std::vector<double> lambda;  // lambda_1..lambda_ell, all nonzero
};

struct CliffordModel {
  CurvatureModel model;
  CliffordTag tag;
};

/// A = lambda0 A_id + sum_i lambda_i A_{psi_i}; an Osserman curvature model.
/// A_id is the constant-curvature normalization (sectional curvature lambda0
/// when ell = 0).
CliffordModel clifford_model(const Metric& g, double lambda0,
                             const std::vector<double>& lambda);

}  // namespace curv

#endif
