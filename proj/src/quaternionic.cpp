#include "curv/quaternionic.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace curv {

namespace {

using Mat = Eigen::MatrixXd;

void check_relation(bool ok, const char* what) {
  if (!ok) throw validation_error(std::string("hyper triple violates ") + what);
}

}  // namespace

HyperTriple validate_hyper(const Metric& g, const Mat& J1m, const Mat& J2m, const Mat& J3m,
                           HyperFlavor flavor) {
  const int m = g.dimension();
  if (J1m.rows() != m || J2m.rows() != m || J3m.rows() != m)
    throw dimension_mismatch("hyper triple: dimension mismatch");
  const Mat id = Mat::Identity(m, m);
  const double tol = 1e-9;

  auto is = [&](const Mat& A, const Mat& B) { return (A - B).cwiseAbs().maxCoeff() <= tol; };

  if (flavor == HyperFlavor::hyper_hermitian) {
    check_relation(is(J1m * J1m, -id), "J1^2 = -id");
    check_relation(is(J2m * J2m, -id), "J2^2 = -id");
    check_relation(is(J3m * J3m, -id), "J3^2 = -id");
  } else {
    check_relation(is(J1m * J1m, -id), "J1^2 = -id");
    check_relation(is(J2m * J2m, id), "J2^2 = +id");
    check_relation(is(J3m * J3m, id), "J3^2 = +id");
  }
  check_relation(is(J1m * J2m, J3m), "J1 J2 = J3");
  check_relation(is(J2m * J1m, -J3m), "J2 J1 = -J3");

  auto f2 = flavor == HyperFlavor::hyper_hermitian ? StructureFlavor::hermitian
                                                   : StructureFlavor::para_hermitian;
  return HyperTriple{g, ComplexStructure(g, Endo(J1m), StructureFlavor::hermitian),
                     ComplexStructure(g, Endo(J2m), f2), ComplexStructure(g, Endo(J3m), f2),
                     flavor};
}

namespace {

// left multiplications by i, j, k on H = R^4 in the basis (1, i, j, k)
std::array<Mat, 3> quaternion_generators() {
  Mat I(4, 4), J(4, 4), K(4, 4);
  I << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  J << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
  K << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  return {I, J, K};
}

}  // namespace

HyperTriple standard_hyper_triple(const Metric& g) {
  const int m = g.dimension();
  if (!g.euclidean() || m % 4 != 0)
    throw unsupported_error("standard hyper triple needs Euclidean dimension divisible by 4");
  auto gens = quaternion_generators();
  Mat J1 = Mat::Zero(m, m), J2 = Mat::Zero(m, m), J3 = Mat::Zero(m, m);
  for (int b = 0; b < m; b += 4) {
    J1.block(b, b, 4, 4) = gens[0];
    J2.block(b, b, 4, 4) = gens[1];
    J3.block(b, b, 4, 4) = gens[2];
  }
  return validate_hyper(g, J1, J2, J3, HyperFlavor::hyper_hermitian);
}

HyperTriple standard_hyper_para_triple(const Metric& g) {
  const int m = g.dimension();
  if (g.p() != g.q() || m % 4 != 0)
    throw unsupported_error("standard hyper-para triple needs signature (n, n), m divisible by 4");
  // J1: standard rotation blocks; J2: block swap with alternating sign twist
  Mat J1 = Mat::Zero(m, m), J2 = Mat::Zero(m, m);
  for (int a = 0; a + 1 < m; a += 2) {
    J1(a, a + 1) = -1.0;
    J1(a + 1, a) = 1.0;
  }
  const int n = m / 2;
  for (int a = 0; a < n; ++a) {
    const double sgn = (a % 2 == 0) ? 1.0 : -1.0;
    J2(a, n + a) = sgn;
    J2(n + a, a) = sgn;
  }
  Mat J3 = J1 * J2;
  return validate_hyper(g, J1, J2, J3, HyperFlavor::hyper_para_hermitian);
}

double tau_star_q(const CurvatureModel& model, const HyperTriple& triple) {
  return star_invariants(model, triple.J1).tau_star +
         star_invariants(model, triple.J2).tau_star +
         star_invariants(model, triple.J3).tau_star;
}

HyperTriple reparametrize(const HyperTriple& triple, const Eigen::Matrix3d& rot, double tol) {
  Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
  if (triple.flavor == HyperFlavor::hyper_para_hermitian) eta(0, 0) = -1.0;

  if ((rot * eta * rot.transpose() - eta).cwiseAbs().maxCoeff() > tol)
    throw validation_error("reparametrization is not in the structure group");
  if (std::abs(rot.determinant() - 1.0) > tol)
    throw validation_error("reparametrization must have determinant 1");

  const Mat& A = triple.J1.J().matrix();
  const Mat& B = triple.J2.J().matrix();
  const Mat& C = triple.J3.J().matrix();
  Mat N1 = rot(0, 0) * A + rot(0, 1) * B + rot(0, 2) * C;
  Mat N2 = rot(1, 0) * A + rot(1, 1) * B + rot(1, 2) * C;
  Mat N3 = rot(2, 0) * A + rot(2, 1) * B + rot(2, 2) * C;
  return validate_hyper(triple.metric, N1, N2, N3, triple.flavor);
}

int adams_nu(int m) {
  if (m < 1) throw unsupported_error("adams_nu needs m >= 1");
  int s = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++s;
  }
  static const int table[4] = {0, 1, 3, 7};
  return 8 * (s / 4) + table[s % 4];
}

namespace {

Mat rotation2() {
  Mat r(2, 2);
  r << 0, -1, 1, 0;
  return r;
}

// octonion left multiplications via the Cayley-Dickson doubling of H
Eigen::Vector4d quat_mult(const Eigen::Vector4d& x, const Eigen::Vector4d& y) {
  return {x(0) * y(0) - x(1) * y(1) - x(2) * y(2) - x(3) * y(3),
          x(0) * y(1) + x(1) * y(0) + x(2) * y(3) - x(3) * y(2),
          x(0) * y(2) - x(1) * y(3) + x(2) * y(0) + x(3) * y(1),
          x(0) * y(3) + x(1) * y(2) - x(2) * y(1) + x(3) * y(0)};
}
Eigen::Vector4d quat_conj(const Eigen::Vector4d& x) { return {x(0), -x(1), -x(2), -x(3)}; }

Eigen::VectorXd oct_mult(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::Vector4d a = x.head<4>(), b = x.tail<4>(), c = y.head<4>(), d = y.tail<4>();
  Eigen::VectorXd out(8);
  out.head<4>() = quat_mult(a, c) - quat_mult(quat_conj(d), b);
  out.tail<4>() = quat_mult(d, a) + quat_mult(b, quat_conj(c));
  return out;
}

std::vector<Mat> octonion_generators() {
  std::vector<Mat> fam;
  for (int i = 1; i < 8; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(8);
    e(i) = 1.0;
    Mat M(8, 8);
    for (int j = 0; j < 8; ++j) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(8);
      u(j) = 1.0;
      M.col(j) = oct_mult(e, u);
    }
    fam.push_back(M);
  }
  return fam;
}

// doubling step: given a family on R^n, produce {[[0,-I],[I,0]]} +
// {[[Li,0],[0,-Li]]} on R^{2n}; grows the family size by one
std::vector<Mat> double_family(const std::vector<Mat>& fam, int n) {
  std::vector<Mat> out;
  Mat A = Mat::Zero(2 * n, 2 * n);
  A.block(0, n, n, n) = -Mat::Identity(n, n);
  A.block(n, 0, n, n) = Mat::Identity(n, n);
  out.push_back(A);
  for (const auto& L : fam) {
    Mat B = Mat::Zero(2 * n, 2 * n);
    B.block(0, 0, n, n) = L;
    B.block(n, n, n, n) = -L;
    out.push_back(B);
  }
  return out;
}

/// Maximal family on R^{2^s}, by the period-8 construction:
/// explicit generators up to s = 3, then R^{16 n} = R^16 (x) R^n with the new
/// generators e_i (x) id and omega (x) gamma_j, omega the volume element.
std::vector<Mat> power_of_two_family(int s) {
  if (s == 0) return {};
  if (s == 1) return {rotation2()};
  if (s == 2) {
    auto g = quaternion_generators();
    return {g[0], g[1], g[2]};
  }
  if (s == 3) return octonion_generators();

  // family of 8 on R^16 from the octonions by one doubling
  std::vector<Mat> e16 = double_family(octonion_generators(), 8);
  Mat omega = Mat::Identity(16, 16);
  for (const auto& g : e16) omega = omega * g;

  std::vector<Mat> inner = power_of_two_family(s - 4);
  const int n = 1 << (s - 4);
  const int N = 16 * n;
  std::vector<Mat> out;
  for (const auto& e : e16) {
    Mat big = Mat::Zero(N, N);
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b)
        if (e(a, b) != 0.0) big.block(a * n, b * n, n, n) = e(a, b) * Mat::Identity(n, n);
    out.push_back(big);
  }
  for (const auto& gam : inner) {
    Mat big = Mat::Zero(N, N);
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b)
        if (omega(a, b) != 0.0) big.block(a * n, b * n, n, n) = omega(a, b) * gam;
    out.push_back(big);
  }
  return out;
}

}  // namespace

CliffordFamily clifford_family(const Metric& g, int ell) {
  if (!g.euclidean())
    throw unsupported_error("Clifford families are constructed in Euclidean signature only");
  const int m = g.dimension();
  const int nu = adams_nu(m);
  if (ell < 0) throw unsupported_error("clifford_family: ell must be non-negative");
  if (ell > nu) {
    std::ostringstream os;
    os << "no Clifford family of size " << ell << " exists on R^" << m << ": nu(" << m
       << ") = " << nu;
    throw unsupported_error(os.str());
  }

  // m = a 2^s with a odd; block-diagonal copies of the power-of-two family
  int s = 0, rest = m;
  while (rest % 2 == 0) {
    rest /= 2;
    ++s;
  }
  const int blk = 1 << s;
  std::vector<Mat> gens = power_of_two_family(s);

  CliffordFamily fam;
  fam.m = m;
  for (int i = 0; i < ell; ++i) {
    Mat big = Mat::Zero(m, m);
    for (int b = 0; b < m; b += blk) big.block(b, b, blk, blk) = gens[i];
    fam.psi.emplace_back(big);
  }
  return fam;
}

CliffordModel clifford_model(const Metric& g, double lambda0,
                             const std::vector<double>& lambda) {
  const int ell = static_cast<int>(lambda.size());
  for (double l : lambda)
    if (l == 0.0)
      throw validation_error("clifford_model: lambda_i must be nonzero for i >= 1");
  CliffordFamily fam = clifford_family(g, ell);

  CurvatureModel model = constant_curvature(g, lambda0);
  for (int i = 0; i < ell; ++i) {
    CurvatureModel part = skew_psi_tensor(g, fam.psi[i]);
    model.tensor += lambda[i] * part.tensor;
  }
  model.label = "clifford";
  // re-validate the assembled sum
  CurvatureModel finalm(g, model.tensor, model.label);
  return {std::move(finalm), CliffordTag{ell, lambda0, lambda}};
}

}  // namespace curv
