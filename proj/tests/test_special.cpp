#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curv/special.hpp"
#include "testutil.hpp"

using namespace curv;
using namespace curvtest;

TEST_CASE("skew_curvature_operator") {
  Metric g = make_metric(0, 4);
  Rng rng(3);

  SUBCASE("constant curvature: spectrum {C, C, 0, 0} in absolute value") {
    CurvatureModel cm = constant_curvature(g, 2.0);
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 0), y = Eigen::VectorXd::Unit(4, 1);
    std::vector<double> s = skew_spectrum(skew_curvature_operator(cm, x, y));
    CHECK(s[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(s[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(s[2] == doctest::Approx(2.0));
    CHECK(s[3] == doctest::Approx(2.0));
  }

  SUBCASE("parallel vectors are a degenerate plane") {
    CurvatureModel cm = constant_curvature(g, 1.0);
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 0);
    CHECK_THROWS_AS(skew_curvature_operator(cm, x, 2.0 * x), validation_error);
  }

  SUBCASE("operator only depends on the oriented plane") {
    CurvatureModel cm(g, random_riemann(rng, 4));
    Eigen::VectorXd x(4), y(4);
    for (int i = 0; i < 4; ++i) {
      x(i) = rng.next_normal();
      y(i) = rng.next_normal();
    }
    Endo base = skew_curvature_operator(cm, x, y);
    // orientation-preserving rebasing of the same plane
    Eigen::VectorXd x2 = 2.0 * x + 0.5 * y;
    Eigen::VectorXd y2 = -0.3 * x + 1.7 * y;  // det = 3.55 > 0
    Endo rebased = skew_curvature_operator(cm, x2, y2);
    CHECK((base.matrix() - rebased.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("skew-adjoint with +/- i mu eigenvalue pairs") {
    CurvatureModel cm(g, random_riemann(rng, 4));
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 0), y = Eigen::VectorXd::Unit(4, 2);
    Endo op = skew_curvature_operator(cm, x, y);
    CHECK((op.matrix() + op.matrix().transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    std::vector<double> s = skew_spectrum(op);  // sorted singular values pair up
    CHECK(s[0] == doctest::Approx(s[1]).epsilon(1e-9).scale(1.0));
    CHECK(s[2] == doctest::Approx(s[3]).epsilon(1e-9).scale(1.0));
  }

  SUBCASE("indefinite metrics are rejected") {
    Metric l = make_metric(1, 3);
    Rng r2(5);
    CurvatureModel cm(l, random_riemann(r2, 4));
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 1), y = Eigen::VectorXd::Unit(4, 2);
    CHECK_THROWS_AS(skew_curvature_operator(cm, x, y), unsupported_error);
  }
}

TEST_CASE("check_ip") {
  Metric g = make_metric(0, 4);
  Rng rng(7);

  SUBCASE("constant curvature is Ivanov-Petrova") {
    SpectralSamplingReport r = check_ip(constant_curvature(g, 1.0), 64, kDefaultSeed);
    CHECK(r.verdict);
  }

  SUBCASE("the exceptional family is Ivanov-Petrova") {
    SpectralSamplingReport r = check_ip(ip_exceptional_4d(1.0), 64, kDefaultSeed);
    CHECK(r.verdict);
    // observed pattern: two eigenvalue magnitudes, each doubled
    REQUIRE(r.reference_spectrum.size() == 4);
    CHECK(r.reference_spectrum[0] == doctest::Approx(1.0));
    CHECK(r.reference_spectrum[3] == doctest::Approx(2.0));
  }

  SUBCASE("a generic tensor is not, and the report shows the witnesses") {
    CurvatureModel cm(g, random_riemann(rng, 4));
    SpectralSamplingReport r = check_ip(cm, 64, kDefaultSeed);
    CHECK_FALSE(r.verdict);
    CHECK(r.deviating.size() > 0);
  }

  SUBCASE("zero tensor passes") {
    CurvatureModel z(g, Rank4Tensor(4, TensorKind::riemann));
    CHECK(check_ip(z, 8, kDefaultSeed).verdict);
  }
}

TEST_CASE("ip_exceptional_4d") {
  SUBCASE("a1 = 0 is the zero model") { CHECK(ip_exceptional_4d(0.0).tensor.max_abs() == 0.0); }

  SUBCASE("generators land where the table says, with a2 = -2 a1") {
    CurvatureModel cm = ip_exceptional_4d(1.0);
    CHECK(cm.tensor(0, 1, 0, 1) == 1.0);    // R_1212 = a1
    CHECK(cm.tensor(0, 1, 2, 3) == -2.0);   // R_1234 = a2
    CHECK(cm.tensor(0, 2, 0, 2) == -2.0);   // R_1313 = a2
    CHECK(cm.tensor(0, 2, 1, 3) == -1.0);   // R_1324 = -a1
    CHECK(cm.tensor(2, 3, 2, 3) == 1.0);    // R_3434 = a1
    CHECK(validate_symmetries(cm.tensor, cm.metric).all_ok());
  }
}

TEST_CASE("classify_ip") {
  SUBCASE("constant curvature C = 2, m = 5: signature (0,5), realizable") {
    Metric g = make_metric(0, 5);
    IpClassification c = classify_ip(constant_curvature(g, 2.0));
    CHECK(c.form == IpClassification::Form::constant_like_phi);
    CHECK(c.C == doctest::Approx(2.0));
    CHECK(c.phi_neg == 0);
    CHECK(c.phi_pos == 5);
    CHECK(c.realizable);
  }

  SUBCASE("one flipped eigenvalue: signature (1,3), realizable") {
    Metric g = make_metric(0, 4);
    Eigen::VectorXd d(4);
    d << 1, 1, 1, -1;
    IpClassification c = classify_ip(rank_one_phi(g, Endo(Eigen::MatrixXd(d.asDiagonal())), 1.0));
    CHECK(c.form == IpClassification::Form::constant_like_phi);
    CHECK(c.phi_neg == 1);
    CHECK(c.phi_pos == 3);
    CHECK(c.realizable);
  }

  SUBCASE("signature (2,4) at m = 6 is not realizable") {
    Metric g = make_metric(0, 6);
    Eigen::VectorXd d(6);
    d << 1, 1, 1, 1, -1, -1;
    IpClassification c = classify_ip(rank_one_phi(g, Endo(Eigen::MatrixXd(d.asDiagonal())), 1.0));
    CHECK(c.form == IpClassification::Form::constant_like_phi);
    CHECK(c.phi_neg == 2);
    CHECK(c.phi_pos == 4);
    CHECK_FALSE(c.realizable);
  }

  SUBCASE("trace-free phi: the column-space fallback recovers a witness") {
    Metric g = make_metric(0, 4);
    Eigen::VectorXd d(4);
    d << 1, 1, -1, -1;
    IpClassification c = classify_ip(rank_one_phi(g, Endo(Eigen::MatrixXd(d.asDiagonal())), 1.5));
    CHECK(c.form == IpClassification::Form::constant_like_phi);
    CHECK(c.C == doctest::Approx(1.5));
    CHECK(c.phi_neg == 2);
    CHECK(c.phi_pos == 2);
    CHECK_FALSE(c.realizable);
    CHECK(c.residual <= 1e-8);
  }

  SUBCASE("the exceptional model classifies as exceptional, not realizable") {
    IpClassification c = classify_ip(ip_exceptional_4d(1.0));
    CHECK(c.form == IpClassification::Form::exceptional_4d);
    CHECK_FALSE(c.realizable);
  }

  SUBCASE("non-IP input is rejected") {
    Rng rng(11);
    Metric g = make_metric(0, 4);
    CurvatureModel cm(g, random_riemann(rng, 4));
    CHECK_THROWS_AS(classify_ip(cm), validation_error);
  }
}

TEST_CASE("jacobi_operator") {
  Metric g = make_metric(0, 4);
  Rng rng(13);

  SUBCASE("constant curvature: spectrum {0, C, C, C}") {
    CurvatureModel cm = constant_curvature(g, 2.0);
    std::vector<double> s = jacobi_spectrum(cm, Eigen::VectorXd::Unit(4, 0));
    CHECK(s[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK(s[3] == doctest::Approx(2.0));
  }

  SUBCASE("zero tensor gives the zero operator") {
    CurvatureModel z(g, Rank4Tensor(4, TensorKind::riemann));
    CHECK(jacobi_operator(z, Eigen::VectorXd::Unit(4, 1)).matrix().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("clifford model (ell = 1, equal lambdas): spectrum {0, 1, 1, 4}") {
    CliffordModel cm = clifford_model(g, 1.0, {1.0});
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 0);
    std::vector<double> s = jacobi_spectrum(cm.model, x);
    // independent oracle route
    std::vector<double> o = sorted_eigs(oracle_jacobi(cm.model.tensor, g, x));
    for (int i = 0; i < 4; ++i) CHECK(s[i] == doctest::Approx(o[i]).epsilon(1e-12).scale(1.0));
    CHECK(s[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(1.0));
    CHECK(s[3] == doctest::Approx(4.0));
  }

  SUBCASE("self-adjoint with J(x) x = 0") {
    for (int t = 0; t < 10; ++t) {
      CurvatureModel cm(g, random_riemann(rng, 4));
      Eigen::VectorXd x(4);
      for (int i = 0; i < 4; ++i) x(i) = rng.next_normal();
      Endo J = jacobi_operator(cm, x);
      const double scale = std::max(1.0, J.matrix().cwiseAbs().maxCoeff());
      CHECK((J.matrix() - J.matrix().transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
      CHECK((J.matrix() * x).norm() <= 1e-10 * scale * x.norm());
    }
  }

  SUBCASE("degree-2 homogeneity in x") {
    CurvatureModel cm(g, random_riemann(rng, 4));
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x(i) = rng.next_normal();
    const double t = 1.7;
    std::vector<double> s1 = jacobi_spectrum(cm, x);
    std::vector<double> s2 = jacobi_spectrum(cm, t * x);
    for (int i = 0; i < 4; ++i)
      CHECK(s2[i] == doctest::Approx(t * t * s1[i]).epsilon(1e-10).scale(1.0));
  }

  SUBCASE("zero vector is rejected") {
    CurvatureModel cm = constant_curvature(g, 1.0);
    CHECK_THROWS_AS(jacobi_operator(cm, Eigen::VectorXd::Zero(4)), validation_error);
  }
}

TEST_CASE("check_osserman") {
  Metric g = make_metric(0, 4);
  Rng rng(17);

  SUBCASE("clifford models are Osserman") {
    CHECK(check_osserman(clifford_model(g, 1.0, {}).model, 32).verdict);
    CHECK(check_osserman(clifford_model(g, 1.0, {2.0}).model, 32).verdict);
    CHECK(check_osserman(clifford_model(g, 1.0, {1.0, 2.0, 3.0}).model, 32).verdict);
  }

  SUBCASE("generic tensors are not") {
    CurvatureModel cm(g, random_riemann(rng, 4));
    SpectralSamplingReport r = check_osserman(cm, 32);
    CHECK_FALSE(r.verdict);
    CHECK(r.deviating.size() > 0);
  }

  SUBCASE("zero tensor passes") {
    CHECK(check_osserman(CurvatureModel(g, Rank4Tensor(4, TensorKind::riemann)), 8).verdict);
  }

  SUBCASE("m = 16 models check fine; only the realizability verdict is off limits") {
    Metric g16 = make_metric(0, 16);
    CliffordModel cm = clifford_model(g16, 1.0, {1.0, 2.0, 3.0});
    CHECK(check_osserman(cm.model, 16).verdict);
  }

  SUBCASE("scaling covariance of spectra and verdicts") {
    CliffordModel cm = clifford_model(g, 1.0, {1.0});
    for (double c : {2.0, -1.0}) {
      Rank4Tensor scaled = c * cm.model.tensor;
      SpectralSamplingReport r0 = check_osserman(cm.model, 16);
      SpectralSamplingReport rc = check_osserman(CurvatureModel(g, scaled), 16);
      CHECK(rc.verdict == r0.verdict);
      for (std::size_t i = 0; i < r0.reference_spectrum.size(); ++i) {
        double want = c * r0.reference_spectrum[i];
        double got = rc.reference_spectrum[c > 0 ? i : r0.reference_spectrum.size() - 1 - i];
        CHECK(got == doctest::Approx(want).epsilon(1e-10).scale(1.0));
      }
    }
  }

  SUBCASE("identical seeds reproduce reports exactly") {
    CliffordModel cm = clifford_model(g, 1.0, {1.0});
    SpectralSamplingReport a = check_osserman(cm.model, 16, 99);
    SpectralSamplingReport b = check_osserman(cm.model, 16, 99);
    CHECK(a.max_deviation == b.max_deviation);
    CHECK(a.reference_spectrum == b.reference_spectrum);
  }
}

TEST_CASE("osserman_realizable") {
  Metric g4 = make_metric(0, 4);
  Metric g8 = make_metric(0, 8);

  auto verdict = [&](const Metric& g, double l0, std::vector<double> lam) {
    return osserman_realizable(clifford_model(g, l0, lam));
  };

  SUBCASE("the nine parameter cases") {
    CHECK(verdict(g4, 5.0, {}).realizable);                            // constant curvature
    CHECK(verdict(g4, 1.0, {1.0}).realizable);                         // CP-type
    CHECK_FALSE(verdict(g4, 1.0, {2.0}).realizable);                   // ell = 1, unequal
    CHECK_FALSE(verdict(g4, 1.0, {1.0, 1.0}).realizable);              // ell = 2
    CHECK(verdict(g4, 1.0, {1.0, 1.0, 1.0}).realizable);               // HP-type
    CHECK_FALSE(verdict(g4, 1.0, {1.0, 2.0, 3.0}).realizable);         // ell = 3, unequal
    CHECK_FALSE(verdict(g8, 1.0, {1, 1, 1, 1, 1}).realizable);         // ell = 5
    CHECK_FALSE(verdict(g8, 1.0, {1, 1, 1, 1, 1, 1, 1}).realizable);   // ell = 7
    CHECK(verdict(g8, 2.0, {2.0}).realizable);                         // CP-type, m = 8
  }

  SUBCASE("matched case names") {
    CHECK(verdict(g4, 5.0, {}).matched_case == "constant sectional curvature");
    CHECK(verdict(g4, 1.0, {1.0}).matched_case.find("complex projective") == 0);
    CHECK(verdict(g4, 1.0, {1.0, 1.0, 1.0}).matched_case.find("quaternionic") == 0);
  }

  SUBCASE("dimension 16 is out of scope") {
    Metric g16 = make_metric(0, 16);
    CliffordModel cm = clifford_model(g16, 1.0, {1.0});
    CHECK_THROWS_AS(osserman_realizable(cm), unsupported_error);
  }
}
