#ifndef CURV_AFFINE_HPP
#define CURV_AFFINE_HPP

#include <array>
#include <memory>
#include <string>

#include "curv/bilinear_form.hpp"
#include "curv/rank4.hpp"
#include "curv/subspace.hpp"

namespace curv {

/// Ricci trace of an affine operator: rho_{ij} = A_{kij}^k, trace over the
/// first slot. Input must satisfy the affine symmetries.
BilinearForm affine_ricci(const Rank4Tensor& A);

/// Right inverse of the Ricci trace:
///   (sigma rho_a)(x,y)z = -1/(1+m) { 2 rho_a(x,y) z + rho_a(x,z) y - rho_a(y,z) x }
///   (sigma rho_s)(x,y)z =  1/(1-m) { rho_s(x,z) y - rho_s(y,z) x }
/// so that affine_ricci(sigma_split(ra, rs, m)) = ra + rs. m = 1 is singular.
Rank4Tensor sigma_split(const Eigen::MatrixXd& rho_antisym,
                        const Eigen::MatrixXd& rho_sym, int m);

struct AffineDecompositionGL {
  Rank4Tensor projective_weyl;  // component in ker(rho)
  Rank4Tensor sym_part;         // sigma of the symmetric Ricci part
  Rank4Tensor antisym_part;     // sigma of the antisymmetric Ricci part
  BilinearForm ricci;
  Eigen::MatrixXd ricci_sym;
  Eigen::MatrixXd ricci_antisym;
  double reconstruction_residual = 0.0;  // relative
  double weyl_norm = 0.0, sym_norm = 0.0, antisym_norm = 0.0;
};

/// Three-part general-linear decomposition A = P + sigma(rho_s) + sigma(rho_a).
AffineDecompositionGL decompose_gl(const Rank4Tensor& A);

struct AffineFlags {
  bool ricci_symmetric = false;
  bool ricci_antisymmetric = false;
  bool ricci_flat = false;
  bool projectively_flat = false;
  bool flat = false;
  bool realizable = false;       // by a manifold sharing the same flags
  std::string realizability_case;
};

/// Flags plus the eight-row realizability verdict. The only non-realizable
/// combination is projectively flat + Ricci antisymmetric + not flat.
AffineFlags classify_affine(const Rank4Tensor& A, double rel_tol = 1e-9);

/// Cached module bases for the eight-part orthogonal decomposition at a
/// given dimension and signature. Modules are stored in lowered (0,4) form.
struct BokanSpaces {
  Subspace space;                  // lowered affine space A(V)
  std::array<Subspace, 8> modules; // A1..A8
  std::array<int, 8> dims{};
  Eigen::VectorXd gram;            // induced inner product diagonal
};

std::shared_ptr<const BokanSpaces> bokan_spaces(const Metric& g);

struct BokanDecomposition {
  std::array<Rank4Tensor, 8> parts;  // affine kind
  std::array<int, 8> dims{};
  std::array<double, 8> part_norms{};
  bool direct_sum_mode = false;      // least squares over the direct sum (indefinite)
  double reconstruction_residual = 0.0;
};

/// Eight-part decomposition. Euclidean signature uses orthogonal projection;
/// indefinite signatures fall back to direct-sum least squares.
BokanDecomposition decompose_bokan(const Rank4Tensor& A, const Metric& g);

}  // namespace curv

#endif
