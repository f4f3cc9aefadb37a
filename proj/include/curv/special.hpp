#ifndef CURV_SPECIAL_HPP
#define CURV_SPECIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "curv/quaternionic.hpp"
#include "curv/riemann.hpp"

namespace curv {

enum class SpectralProperty { ivanov_petrova, osserman };

/// Outcome of a constancy-of-spectrum sampling run. The verdict is evidence
/// over the stated sample count, not a proof.
struct SpectralSamplingReport {
  SpectralProperty property;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;                       // absolute, scaled by max |eigenvalue|
  std::vector<std::vector<double>> spectra;     // sorted multiset per sample
  std::vector<double> reference_spectrum;       // sorted, first sample
  std::vector<std::vector<double>> deviating;   // sorted spectra that broke constancy
  double max_deviation = 0.0;
  bool verdict = false;
  std::vector<std::pair<double, int>> multiplicity_pattern;  // value, multiplicity
};

/// Normalized skew-symmetric curvature operator of the oriented plane
/// spanned by x, y. Euclidean only.
Endo skew_curvature_operator(const CurvatureModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y);

/// |eigenvalue| multiset of a skew operator = its singular values.
std::vector<double> skew_spectrum(const Endo& op);

SpectralSamplingReport check_ip(const CurvatureModel& model, int samples = 64,
                                std::uint64_t seed = kDefaultSeed, double tol = 1e-7);

/// The exceptional dimension-4 family: twelve generators with a2 = -2 a1.
CurvatureModel ip_exceptional_4d(double a1);

struct IpClassification {
  enum class Form { constant_like_phi, exceptional_4d, unknown };
  Form form = Form::unknown;
  double C = 0.0;
  int phi_neg = 0, phi_pos = 0;   // signature of <.,.>_phi: (#-1, #+1) eigenvalues
  Eigen::MatrixXd phi;            // recovered witness when form is constant_like_phi
  bool realizable = false;
  double residual = 0.0;          // entrywise verification residual, relative
  std::string detail;
};

/// Matches A = C A_phi with phi^2 = id (phi recovered from the Ricci
/// spectrum, or by column-space intersection when trace(phi) = 0), else the
/// exceptional 4d family; realizable iff the signature of <.,.>_phi is one of
/// (0,m), (m,0), (1,m-1), (m-1,1). Input must pass check_ip.
IpClassification classify_ip(const CurvatureModel& model, int samples = 64,
                             std::uint64_t seed = kDefaultSeed);

/// Jacobi operator J(x) y = R(y,x)x; self-adjoint, J(x)x = 0. Euclidean only.
Endo jacobi_operator(const CurvatureModel& model, const Eigen::VectorXd& x);

std::vector<double> jacobi_spectrum(const CurvatureModel& model, const Eigen::VectorXd& x);

SpectralSamplingReport check_osserman(const CurvatureModel& model, int samples = 128,
                                      std::uint64_t seed = kDefaultSeed, double tol = 1e-7);

struct OssermanRealizability {
  bool realizable = false;
  std::string matched_case;  // "constant sectional curvature", "complex projective space", ...
};

/// Realizability by an Osserman manifold, decided from the Clifford
/// constructor provenance (m != 16): ell = 0, or ell = 1 with lambda1 =
/// lambda0, or ell = 3 with all lambdas equal.
OssermanRealizability osserman_realizable(const CliffordModel& model, double tol = 1e-12);

}  // namespace curv

#endif
