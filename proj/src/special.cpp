#include "curv/special.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace curv {

namespace {

void require_euclidean(const CurvatureModel& model, const char* what) {
  if (!model.metric.euclidean()) {
    std::ostringstream os;
    os << what << " is restricted to the Riemannian setting (signature (0,m))";
    throw unsupported_error(os.str());
  }
}

Eigen::VectorXd random_unit_vector(Rng& rng, int m) {
  Eigen::VectorXd v(m);
  double norm = 0.0;
  do {
    for (int i = 0; i < m; ++i) v(i) = rng.next_normal();
    norm = v.norm();
  } while (norm < 1e-8);
  return v / norm;
}

std::vector<std::pair<double, int>> multiplicities(const std::vector<double>& sorted,
                                                   double tol) {
  std::vector<std::pair<double, int>> out;
  for (double v : sorted) {
    if (!out.empty() && std::abs(v - out.back().first) <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

SpectralSamplingReport run_sampling(const CurvatureModel& model, SpectralProperty prop,
                                    int samples, std::uint64_t seed, double tol) {
  if (samples < 2) throw unsupported_error("sampling needs at least 2 samples");
  const int m = model.metric.dimension();

  SpectralSamplingReport rep;
  rep.property = prop;
  rep.samples = samples;
  rep.seed = seed;

  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(s));
    std::vector<double> spec;
    if (prop == SpectralProperty::ivanov_petrova) {
      Eigen::VectorXd x = random_unit_vector(rng, m);
      Eigen::VectorXd y;
      do {
        y = random_unit_vector(rng, m);
        y -= y.dot(x) * x;
      } while (y.norm() < 1e-6);
      y.normalize();
      spec = skew_spectrum(skew_curvature_operator(model, x, y));
    } else {
      spec = jacobi_spectrum(model, random_unit_vector(rng, m));
    }

    if (s == 0) {
      rep.reference_spectrum = spec;
      double scale = 0.0;
      for (double v : spec) scale = std::max(scale, std::abs(v));
      rep.tolerance = tol * std::max(scale, 1e-12);
      rep.multiplicity_pattern = multiplicities(spec, 16 * rep.tolerance);
    } else {
      double dev = 0.0;
      for (std::size_t i = 0; i < spec.size(); ++i)
        dev = std::max(dev, std::abs(spec[i] - rep.reference_spectrum[i]));
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > rep.tolerance && rep.deviating.size() < 4) rep.deviating.push_back(spec);
    }
    rep.spectra.push_back(std::move(spec));
  }
  rep.verdict = rep.max_deviation <= rep.tolerance;
  return rep;
}

}  // namespace

Endo skew_curvature_operator(const CurvatureModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y) {
  require_euclidean(model, "the skew curvature operator");
  const int m = model.metric.dimension();
  if (x.size() != m || y.size() != m)
    throw dimension_mismatch("skew_curvature_operator: vector dimension mismatch");

  const auto& g = model.metric;
  const double area2 = g.inner(x, x) * g.inner(y, y) - g.inner(x, y) * g.inner(x, y);
  if (area2 <= 1e-12 * std::max(1.0, x.squaredNorm() * y.squaredNorm()))
    throw validation_error("degenerate plane: x and y are (numerically) dependent");

  // M^a_b = eps^{ac} A(x, y, e_b, e_c) / sqrt(area)
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double axy = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (x(i) != 0.0 && y(j) != 0.0) axy += x(i) * y(j) * model.tensor(i, j, b, c);
      for (int a = 0; a < m; ++a)
        if (g.inv(a, c) != 0.0) M(a, b) += g.inv(a, c) * axy;
    }
  return Endo(M / std::sqrt(area2));
}

std::vector<double> skew_spectrum(const Endo& op) {
  Eigen::MatrixXd sq = op.matrix().transpose() * op.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sq);
  std::vector<double> out;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  std::sort(out.begin(), out.end());
  return out;
}

SpectralSamplingReport check_ip(const CurvatureModel& model, int samples, std::uint64_t seed,
                                double tol) {
  require_euclidean(model, "the Ivanov-Petrova check");
  return run_sampling(model, SpectralProperty::ivanov_petrova, samples, seed, tol);
}

CurvatureModel ip_exceptional_4d(double a1) {
  const double a2 = -2.0 * a1;
  // 1-based positions as usually tabulated; stored 0-based
  const GeneratorEntry gens[] = {
      {0, 1, 0, 1, a1}, {0, 1, 2, 3, a2}, {0, 2, 0, 2, a2}, {0, 2, 1, 3, -a1},
      {0, 3, 0, 3, a2}, {0, 3, 1, 2, a1}, {1, 2, 1, 2, a2}, {1, 2, 0, 3, a1},
      {1, 3, 1, 3, a2}, {1, 3, 0, 2, -a1}, {2, 3, 2, 3, a1}, {2, 3, 0, 1, a2},
  };
  Metric g = make_metric(0, 4);
  Rank4Tensor T = complete_by_symmetry(gens, TensorKind::riemann, 4);
  return CurvatureModel(g, std::move(T), "ip-exceptional-4d");
}

namespace {

/// Recover the rows p_a = phi e_a of the witness when trace(phi) = 0, from
/// the rank-2 slice matrices N^{(ab)}[k,l] = A(e_a, e_b, k, l) = C (p_b p_a^T - p_a p_b^T).
Eigen::MatrixXd recover_phi_traceless(const CurvatureModel& model, double C) {
  const int m = model.metric.dimension();
  auto slice = [&](int a, int b) {
    Eigen::MatrixXd N(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) N(k, l) = model.tensor(a, b, k, l);
    return N;
  };
  auto colspace2 = [](const Eigen::MatrixXd& N) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N, Eigen::ComputeThinU);
    return Eigen::MatrixXd(svd.matrixU().leftCols(2));
  };
  // p1 spans the intersection of the column spaces of N^{(01)} and N^{(02)}
  Eigen::MatrixXd U = colspace2(slice(0, 1)), V = colspace2(slice(0, 2));
  Eigen::MatrixXd G = U.transpose() * V;  // 2x2, singular value 1 <-> common direction
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd p1 = U * svd.matrixU().col(0);
  p1.normalize();

  Eigen::MatrixXd phi(m, m);
  phi.col(0) = p1;
  for (int a = 1; a < m; ++a) phi.col(a) = slice(0, a) * p1 / C;
  return phi;
}

/// Round a symmetric matrix to the nearest involution via its eigenvectors.
Eigen::MatrixXd spectral_round_pm1(const Eigen::MatrixXd& phi, int* neg, int* pos) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (phi + phi.transpose()));
  const int m = static_cast<int>(phi.rows());
  Eigen::VectorXd rounded(m);
  *neg = *pos = 0;
  for (int i = 0; i < m; ++i) {
    rounded(i) = es.eigenvalues()(i) >= 0 ? 1.0 : -1.0;
    (rounded(i) > 0 ? *pos : *neg) += 1;
  }
  return es.eigenvectors() * rounded.asDiagonal() * es.eigenvectors().transpose();
}

bool verify_phi_form(const CurvatureModel& model, double C, const Eigen::MatrixXd& phi,
                     double* residual) {
  CurvatureModel candidate = rank_one_phi(model.metric, Endo(phi), C);
  Rank4Tensor diff = candidate.tensor - model.tensor;
  *residual = diff.frobenius_norm() / std::max(1e-300, model.tensor.frobenius_norm());
  return *residual <= 1e-8;
}

}  // namespace

IpClassification classify_ip(const CurvatureModel& model, int samples, std::uint64_t seed) {
  require_euclidean(model, "Ivanov-Petrova classification");
  SpectralSamplingReport ip = check_ip(model, samples, seed);
  if (!ip.verdict)
    throw validation_error("classify_ip: model is not Ivanov-Petrova on the sampled planes");

  const int m = model.metric.dimension();
  IpClassification out;

  const double scale = model.tensor.frobenius_norm();
  if (scale <= 1e-14) {  // zero tensor: C = 0, phi = id
    out.form = IpClassification::Form::constant_like_phi;
    out.C = 0.0;
    out.phi = Eigen::MatrixXd::Identity(m, m);
    out.phi_neg = 0;
    out.phi_pos = m;
    out.realizable = true;
    out.detail = "zero model";
    return out;
  }

  // rho = C [ trace(phi) <phi .,.> - <.,.> ]: recover phi from the Ricci spectrum
  RicciInvariants ri = ricci_scalar(model);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ri.ricci.symmetric_part());
  Eigen::VectorXd ev = es.eigenvalues();

  // cluster the eigenvalues
  std::vector<std::pair<double, int>> clusters =
      multiplicities(std::vector<double>(ev.data(), ev.data() + m),
                     1e-7 * std::max(1.0, ev.cwiseAbs().maxCoeff()));

  auto try_candidate = [&](double C, const Eigen::MatrixXd& phi_guess) -> bool {
    if (std::abs(C) < 1e-14) return false;
    int neg = 0, pos = 0;
    Eigen::MatrixXd phi = spectral_round_pm1(phi_guess, &neg, &pos);
    if (neg > pos) {  // A_phi = A_{-phi}: canonicalize to trace(phi) >= 0
      phi = -phi;
      std::swap(neg, pos);
    }
    double residual = 0.0;
    if (!verify_phi_form(model, C, phi, &residual)) return false;
    out.form = IpClassification::Form::constant_like_phi;
    out.C = C;
    out.phi = phi;
    out.phi_neg = neg;
    out.phi_pos = pos;
    out.residual = residual;
    out.realizable = std::min(neg, pos) <= 1;
    return true;
  };

  bool matched = false;
  if (clusters.size() == 1) {
    // phi = +/- id (rho = C(m-1) eps) or trace-free phi (rho = -C eps)
    const double a = clusters[0].first;
    matched = try_candidate(a / (m - 1), Eigen::MatrixXd::Identity(m, m));
    if (!matched && std::abs(a) > 1e-14) {
      const double C = -a;
      Eigen::MatrixXd phi = recover_phi_traceless(model, C);
      matched = try_candidate(C, phi);
    }
  } else if (clusters.size() == 2) {
    // eigenvalue a on the +1 eigenspace (mult r), b on the -1 eigenspace:
    // a = C(t-1), b = -C(t+1), t = r - s; try both assignments
    for (int swap = 0; swap < 2 && !matched; ++swap) {
      const double a = clusters[swap].first, b = clusters[1 - swap].first;
      const int r = clusters[swap].second, sct = clusters[1 - swap].second;
      const int t = r - sct;
      if (t == 0) continue;
      double C = (t != 1) ? a / (t - 1.0) : -b / (t + 1.0);
      if (std::abs(C) < 1e-14) continue;
      // phi = (rho_op / C + id) / t
      Eigen::MatrixXd phi =
          (ri.ricci.symmetric_part() / C + Eigen::MatrixXd::Identity(m, m)) / t;
      matched = try_candidate(C, phi);
    }
  }

  if (!matched && m == 4) {
    // exceptional family fit in the given basis
    const double a1 = model.tensor(0, 1, 0, 1);
    CurvatureModel candidate = ip_exceptional_4d(a1);
    Rank4Tensor diff = candidate.tensor - model.tensor;
    const double residual = diff.frobenius_norm() / std::max(1e-300, scale);
    if (residual <= 1e-8 && std::abs(a1) > 1e-14) {
      out.form = IpClassification::Form::exceptional_4d;
      out.C = a1;
      out.residual = residual;
      out.realizable = false;
      out.detail = "exceptional dimension-4 family";
      return out;
    }
  }

  if (!matched && out.form != IpClassification::Form::exceptional_4d) {
    out.form = IpClassification::Form::unknown;
    out.realizable = false;
    out.detail = "no certified witness recovered";
  }
  return out;
}

Endo jacobi_operator(const CurvatureModel& model, const Eigen::VectorXd& x) {
  require_euclidean(model, "the Jacobi operator");
  const int m = model.metric.dimension();
  if (x.size() != m) throw dimension_mismatch("jacobi_operator: vector dimension mismatch");
  if (x.norm() < 1e-12) throw validation_error("jacobi_operator: x must be nonzero");

  const auto& g = model.metric;
  // J(x)^a_b = eps^{ac} A(e_b, x, x, e_c)
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double abc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (x(i) != 0.0 && x(j) != 0.0) abc += x(i) * x(j) * model.tensor(b, i, j, c);
      for (int a = 0; a < m; ++a)
        if (g.inv(a, c) != 0.0) M(a, b) += g.inv(a, c) * abc;
    }
  return Endo(M);
}

std::vector<double> jacobi_spectrum(const CurvatureModel& model, const Eigen::VectorXd& x) {
  Endo J = jacobi_operator(model, x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (J.matrix() + J.matrix().transpose()));
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

SpectralSamplingReport check_osserman(const CurvatureModel& model, int samples,
                                      std::uint64_t seed, double tol) {
  require_euclidean(model, "the Osserman check");
  return run_sampling(model, SpectralProperty::osserman, samples, seed, tol);
}

OssermanRealizability osserman_realizable(const CliffordModel& model, double tol) {
  const int m = model.model.metric.dimension();
  if (m == 16)
    throw unsupported_error(
        "dimension 16 is outside the classification (Cayley-plane exception)");

  const CliffordTag& tag = model.tag;
  auto eq = [&](double a, double b) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); };

  OssermanRealizability out;
  if (tag.ell == 0) {
    out.realizable = true;
    out.matched_case = "constant sectional curvature";
  } else if (tag.ell == 1 && eq(tag.lambda[0], tag.lambda0)) {
    out.realizable = true;
    out.matched_case = "complex projective space (or its negative-curvature dual)";
  } else if (tag.ell == 3 && eq(tag.lambda[0], tag.lambda0) && eq(tag.lambda[1], tag.lambda0) &&
             eq(tag.lambda[2], tag.lambda0)) {
    out.realizable = true;
    out.matched_case = "quaternionic projective space (or its negative-curvature dual)";
  } else {
    out.realizable = false;
    out.matched_case = (tag.ell != 1 && tag.ell != 3)
                           ? "ell outside {0, 1, 3}"
                           : "unequal Clifford coefficients";
  }
  return out;
}

}  // namespace curv
