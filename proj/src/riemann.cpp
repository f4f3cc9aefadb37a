#include "curv/riemann.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace curv {

CurvatureModel::CurvatureModel(Metric g, Rank4Tensor A, std::string name)
    : metric(std::move(g)), tensor(std::move(A)), label(std::move(name)) {
  if (tensor.kind() != TensorKind::riemann)
    throw validation_error("curvature model requires a riemann-kind tensor");
  SymmetryReport rep = validate_symmetries(tensor, metric);
  if (!rep.all_ok()) {
    std::ostringstream os;
    os << "tensor fails the curvature symmetries (max violation " << rep.max_violation << ")";
    throw validation_error(os.str());
  }
}

RicciInvariants ricci_scalar(const CurvatureModel& model) {
  const int m = model.metric.dimension();
  const auto& g = model.metric;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      double s = 0.0;
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) s += g.inv(j, k) * model.tensor(i, j, k, l);
      rho(i, l) = s;
    }
  double tau = (g.inverse().array() * rho.array()).sum();
  Eigen::MatrixXd rho0 = rho - (tau / m) * g.components();
  return {BilinearForm(rho), tau, BilinearForm(rho0)};
}

Rank4Tensor sigma_of_ricci(const Eigen::MatrixXd& rho, const Metric& g) {
  const int m = g.dimension();
  if (m < 3) throw unsupported_error("sigma is singular for m <= 2");
  double tau = (g.inverse().array() * rho.array()).sum();
  const double c1 = 1.0 / (m - 2);
  const double c2 = tau / (static_cast<double>(m - 1) * (m - 2));
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) =
              c1 * (rho(i, l) * g(j, k) + g(i, l) * rho(j, k) - rho(i, k) * g(j, l) -
                    g(i, k) * rho(j, l)) -
              c2 * (g(i, l) * g(j, k) - g(i, k) * g(j, l));
  return T;
}

SingerThorpeDecomposition singer_thorpe(const CurvatureModel& model) {
  const int m = model.metric.dimension();
  RicciInvariants inv = ricci_scalar(model);
  const auto& g = model.metric;

  Eigen::MatrixXd pure_trace = (inv.scalar / m) * g.components();
  Rank4Tensor scalar_part = sigma_of_ricci(pure_trace, g);
  Rank4Tensor traceless_part = sigma_of_ricci(inv.ricci_traceless.components(), g);
  Rank4Tensor weyl = model.tensor - scalar_part - traceless_part;

  SingerThorpeDecomposition out{std::move(weyl), std::move(traceless_part),
                                std::move(scalar_part), inv.ricci, inv.ricci_traceless,
                                inv.scalar};
  Rank4Tensor recon = out.weyl + out.ricci_traceless_part + out.scalar_part;
  recon -= model.tensor;
  const double norm = model.tensor.frobenius_norm();
  out.reconstruction_residual = recon.frobenius_norm() / std::max(1e-300, norm);
  out.weyl_norm = out.weyl.frobenius_norm();
  out.conformally_flat = out.weyl_norm <= 1e-9 * std::max(1.0, norm);
  return out;
}

namespace {

Eigen::MatrixXd lowered_map(const Metric& g, const Endo& L) {
  return L.matrix().transpose() * g.components();  // <L e_i, e_j>
}

}  // namespace

Rank4Tensor phi_tensor_raw(const Metric& g, const Endo& phi) {
  if (!phi.self_adjoint(g)) throw validation_error("phi must be self-adjoint");
  const int m = g.dimension();
  Eigen::MatrixXd P = lowered_map(g, phi);
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) = P(i, k) * P(j, l) - P(i, l) * P(j, k);
  return T;
}

CurvatureModel rank_one_phi(const Metric& g, const Endo& phi, double C) {
  Rank4Tensor T = phi_tensor_raw(g, phi);
  T *= -C;
  return CurvatureModel(g, std::move(T), "rank-one");
}

CurvatureModel constant_curvature(const Metric& g, double C) {
  CurvatureModel model = rank_one_phi(g, Endo::identity(g.dimension()), C);
  model.label = "constant-curvature";
  return model;
}

CurvatureModel skew_psi_tensor(const Metric& g, const Endo& psi) {
  if (!psi.skew_adjoint(g)) throw validation_error("psi must be skew-adjoint");
  const int m = g.dimension();
  Eigen::MatrixXd Q = lowered_map(g, psi);
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) =
              Q(j, k) * Q(i, l) - Q(i, k) * Q(j, l) - 2.0 * Q(i, j) * Q(k, l);
  return CurvatureModel(g, std::move(T), "skew-psi");
}

double sectional_curvature(const CurvatureModel& model, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  const auto& g = model.metric;
  const double area2 = g.inner(x, x) * g.inner(y, y) - g.inner(x, y) * g.inner(x, y);
  if (std::abs(area2) < 1e-12) throw validation_error("degenerate plane");
  const int m = model.metric.dimension();
  double a = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          a += model.tensor(i, j, k, l) * x(i) * y(j) * y(k) * x(l);
  return a / area2;
}

ModelFingerprint model_fingerprint(const CurvatureModel& model) {
  const int m = model.metric.dimension();
  const auto& g = model.metric;
  ModelFingerprint fp;

  SingerThorpeDecomposition st = singer_thorpe(model);
  fp.scalar = st.scalar;
  fp.ricci_traceless_norm = st.ricci_traceless.norm();
  fp.weyl_norm = st.weyl_norm;

  Eigen::MatrixXd rho_op = g.inverse() * st.ricci.components();
  if (g.euclidean()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (rho_op + rho_op.transpose()));
    fp.ricci_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(rho_op);
    for (int i = 0; i < m; ++i) fp.ricci_eigenvalues.push_back(es.eigenvalues()(i).real());
    std::sort(fp.ricci_eigenvalues.begin(), fp.ricci_eigenvalues.end());
  }

  // A as an operator on two-forms: M[(ij),(ab)] = sum_{kl} A_{ijkl} eps^{ka} eps^{lb}
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  const int n2 = static_cast<int>(pairs.size());
  Eigen::MatrixXd M(n2, n2);
  for (int r = 0; r < n2; ++r)
    for (int c = 0; c < n2; ++c) {
      auto [i, j] = pairs[r];
      auto [a, b] = pairs[c];
      double s = 0.0;
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          s += model.tensor(i, j, k, l) * g.inv(k, a) * g.inv(l, b);
      // in (a<b) coordinates the 1/2 of the two-form contraction cancels
      // against the double count, so M is exactly the operator matrix
      M(r, c) = s;
    }
  if (g.euclidean()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    fp.two_form_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n2);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    for (int i = 0; i < n2; ++i) fp.two_form_eigenvalues.push_back(es.eigenvalues()(i).real());
    std::sort(fp.two_form_eigenvalues.begin(), fp.two_form_eigenvalues.end());
    Eigen::MatrixXcd V = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const double cond = svd.singularValues()(0) /
                        std::max(1e-300, svd.singularValues()(svd.singularValues().size() - 1));
    fp.two_form_diagonalizable = cond < 1e8;
  }
  return fp;
}

}  // namespace curv
