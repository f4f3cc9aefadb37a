#ifndef CURV_RIEMANN_HPP
#define CURV_RIEMANN_HPP

#include <optional>
#include <string>
#include <vector>

#include "curv/bilinear_form.hpp"
#include "curv/endo.hpp"
#include "curv/rank4.hpp"

namespace curv {

/// (V, <.,.>, A): a metric with a tensor satisfying the Riemann symmetries.
struct CurvatureModel {
  Metric metric;
  Rank4Tensor tensor;
  std::string label;

  CurvatureModel(Metric g, Rank4Tensor A, std::string name = {});
};

struct RicciInvariants {
  BilinearForm ricci;          // rho_{il} = eps^{jk} A_{ijkl}
  double scalar = 0.0;         // tau
  BilinearForm ricci_traceless;
};

RicciInvariants ricci_scalar(const CurvatureModel& model);

struct SingerThorpeDecomposition {
  Rank4Tensor weyl;                  // component in ker(rho)
  Rank4Tensor ricci_traceless_part;  // sigma of rho_0
  Rank4Tensor scalar_part;           // sigma of the pure-trace Ricci
  BilinearForm ricci;
  BilinearForm ricci_traceless;
  double scalar = 0.0;
  double reconstruction_residual = 0.0;
  bool conformally_flat = false;
  double weyl_norm = 0.0;
};

/// A = W + sigma(rho_0) + scalar part, with
/// sigma(rho)(x,y,z,w) = 1/(m-2) { rho(x,w)<y,z> + <x,w>rho(y,z)
///                               - rho(x,z)<y,w> - <x,z>rho(y,w) }
///                      - tau/((m-1)(m-2)) { <x,w><y,z> - <x,z><y,w> }.
SingerThorpeDecomposition singer_thorpe(const CurvatureModel& model);

/// sigma applied to a symmetric bilinear form (right inverse of rho).
Rank4Tensor sigma_of_ricci(const Eigen::MatrixXd& rho, const Metric& g);

/// A_phi as printed: A(x,y,z,w) = <phi x,z><phi y,w> - <phi x,w><phi y,z>.
/// With phi = id this has sectional curvature -1.
Rank4Tensor phi_tensor_raw(const Metric& g, const Endo& phi);

/// C * (negated A_phi), so that phi = id yields sectional curvature C.
CurvatureModel rank_one_phi(const Metric& g, const Endo& phi, double C);

/// Constant sectional curvature C: A(x,y,z,w) = C { <x,w><y,z> - <x,z><y,w> }.
CurvatureModel constant_curvature(const Metric& g, double C);

/// A_psi(x,y,z,w) = <psi y,z><psi x,w> - <psi x,z><psi y,w> - 2<psi x,y><psi z,w>
/// for skew-adjoint psi; the -2 term is what makes the first Bianchi identity hold.
CurvatureModel skew_psi_tensor(const Metric& g, const Endo& psi);

/// Sectional curvature K(x,y) = A(x,y,y,x) / (<x,x><y,y> - <x,y>^2).
double sectional_curvature(const CurvatureModel& model, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Pullback-invariant record separating non-isomorphic models. Not claimed
/// sufficient for isomorphism.
struct ModelFingerprint {
  double scalar = 0.0;                    // tau
  double ricci_traceless_norm = 0.0;      // |rho_0|
  double weyl_norm = 0.0;                 // |W|
  std::vector<double> ricci_eigenvalues;  // sorted spectrum of eps^{-1} rho
  std::vector<double> two_form_eigenvalues;  // sorted (real parts of) spectrum of A on Lambda^2
  bool two_form_diagonalizable = true;
};

ModelFingerprint model_fingerprint(const CurvatureModel& model);

}  // namespace curv

#endif
