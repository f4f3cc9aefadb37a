#ifndef CURV_HERMITIAN_HPP
#define CURV_HERMITIAN_HPP

#include <array>
#include <memory>
#include <string>

#include "curv/riemann.hpp"
#include "curv/subspace.hpp"

namespace curv {

enum class StructureFlavor { hermitian, para_hermitian };

std::string to_string(StructureFlavor flavor);

/// J with J^2 = -id and J^T eps J = eps (hermitian), or J^2 = +id and
/// J^T eps J = -eps (para-hermitian). Existence needs p, q both even
/// (hermitian) resp. p = q (para).
class ComplexStructure {
 public:
  ComplexStructure(const Metric& g, Endo J, StructureFlavor flavor);

  const Endo& J() const { return j_; }
  StructureFlavor flavor() const { return flavor_; }
  int dimension() const { return j_.dimension(); }

  /// Kaehler form Omega(x,y) = <x, J y>; antisymmetric for both flavors.
  const Eigen::MatrixXd& kaehler_form() const { return omega_; }

  /// +1 for hermitian, -1 for para-hermitian star contractions.
  double star_sign() const { return flavor_ == StructureFlavor::hermitian ? 1.0 : -1.0; }

 private:
  Endo j_;
  StructureFlavor flavor_;
  Eigen::MatrixXd omega_;
};

/// Standard block structure J0 = [[0,-1],[1,0]] + ... (hermitian, any even
/// split with p, q even) on the canonical metric.
ComplexStructure standard_complex_structure(const Metric& g);
/// Standard para structure on signature (n, n): the block swap with the
/// alternating sign twist, anticommuting with standard_complex_structure.
ComplexStructure standard_para_structure(const Metric& g);

ComplexStructure make_complex_structure(const Metric& g, const Eigen::MatrixXd& J,
                                        StructureFlavor flavor);

struct StarInvariants {
  BilinearForm rho_star;  // need not be symmetric
  double tau_star = 0.0;
};

/// rho*(x,y) = s eps^{il} A(e_i, x, Jy, Je_l) and its trace, s per flavor.
StarInvariants star_invariants(const CurvatureModel& model, const ComplexStructure& S);

/// Cached module bases of the ten-part unitary (resp. para-unitary)
/// decomposition of R(V).
struct TVSpaces {
  Subspace space;                    // R(V)
  std::array<Subspace, 10> modules;  // W1..W10
  std::array<int, 10> dims{};
  Eigen::VectorXd gram;
};

std::shared_ptr<const TVSpaces> tv_spaces(const Metric& g, const ComplexStructure& S);

struct TVDecomposition {
  std::array<Rank4Tensor, 10> parts;
  std::array<int, 10> dims{};
  std::array<double, 10> part_norms{};
  std::array<bool, 10> absent{};     // structurally zero at this dimension
  bool direct_sum_mode = false;
  double reconstruction_residual = 0.0;
  double tau = 0.0, tau_star = 0.0;
};

TVDecomposition decompose_tv(const CurvatureModel& model, const ComplexStructure& S);

struct GrayReport {
  bool identity_holds = false;
  double defect_norm = 0.0;       // working sign convention (see below)
  double raw_defect_norm = 0.0;   // the all-plus eight-term combination
  double w7_component_norm = 0.0;
  bool detectors_agree = false;   // defect-based and W7-projection verdicts
  double tolerance = 0.0;
};

/// Working convention: hermitian
///   A(x,y,z,w) + A(Jx,Jy,Jz,Jw) - [six mixed J-pair terms] = 0,
/// para-hermitian mirrors with + on the mixed block. Under these signs the
/// solution space is exactly the orthocomplement of W7, which the report
/// cross-checks through decompose_tv.
GrayReport gray_defect(const CurvatureModel& model, const ComplexStructure& S,
                       double rel_tol = 1e-9);

}  // namespace curv

#endif
