#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curv/riemann.hpp"
#include "curv/special.hpp"
#include "curv/subspace.hpp"
#include "testutil.hpp"

using namespace curv;
using namespace curvtest;

TEST_CASE("ricci_scalar") {
  SUBCASE("zero model") {
    Metric g = make_metric(0, 4);
    CurvatureModel z(g, Rank4Tensor(4, TensorKind::riemann));
    RicciInvariants ri = ricci_scalar(z);
    CHECK(ri.ricci.norm() == 0.0);
    CHECK(ri.scalar == 0.0);
    CHECK(ri.ricci_traceless.norm() == 0.0);
  }

  SUBCASE("constant curvature C = 1, m = 4: rho = 3 eps, tau = 12, rho_0 = 0") {
    Metric g = make_metric(0, 4);
    CurvatureModel cm = constant_curvature(g, 1.0);
    RicciInvariants ri = ricci_scalar(cm);
    CHECK((ri.ricci.components() - 3.0 * g.components()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ri.scalar == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(ri.ricci_traceless.norm() < 1e-12);
    // independent contraction oracle
    CHECK((oracle_riemann_ricci(cm.tensor, g) - ri.ricci.components()).cwiseAbs().maxCoeff() ==
          0.0);
  }

  SUBCASE("exceptional generator family: tau against the oracle") {
    CurvatureModel cm = ip_exceptional_4d(1.0);
    RicciInvariants ri = ricci_scalar(cm);
    Eigen::MatrixXd rho = oracle_riemann_ricci(cm.tensor, cm.metric);
    double tau = rho.trace();
    CHECK(ri.scalar == doctest::Approx(tau).epsilon(1e-12));
  }

  SUBCASE("rho of valid tensors is symmetric to 1e-12") {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
      Rank4Tensor A = random_riemann(rng, 5);
      Metric g = make_metric(0, 5);
      RicciInvariants ri = ricci_scalar(CurvatureModel(g, A));
      double err = ri.ricci.antisymmetric_part().norm();
      CHECK(err <= 1e-12 * std::max(1.0, ri.ricci.norm()));
    }
  }
}

TEST_CASE("singer_thorpe") {
  Rng rng(7);

  SUBCASE("constant curvature models are pure scalar part, m = 4..8") {
    for (int m = 4; m <= 8; ++m) {
      Metric g = make_metric(0, m);
      CurvatureModel cm = constant_curvature(g, 2.5);
      SingerThorpeDecomposition st = singer_thorpe(cm);
      CHECK(st.weyl_norm < 1e-10 * cm.tensor.frobenius_norm());
      CHECK(st.ricci_traceless_part.frobenius_norm() < 1e-10 * cm.tensor.frobenius_norm());
      CHECK(st.conformally_flat);
      CHECK(st.reconstruction_residual < 1e-12);
    }
  }

  SUBCASE("zero model decomposes to zero") {
    Metric g = make_metric(0, 4);
    SingerThorpeDecomposition st = singer_thorpe(CurvatureModel(g, Rank4Tensor(4, TensorKind::riemann)));
    CHECK(st.weyl_norm == 0.0);
    CHECK(st.scalar == 0.0);
  }

  SUBCASE("reconstruction and orthogonality on random models") {
    for (int m = 4; m <= 6; ++m) {
      Metric g = make_metric(0, m);
      for (int t = 0; t < 5; ++t) {
        Rank4Tensor A = random_riemann(rng, m);
        CurvatureModel cm(g, A);
        SingerThorpeDecomposition st = singer_thorpe(cm);
        CHECK(st.reconstruction_residual <= 1e-9);
        double d1 = tensor_inner_product(st.weyl, st.ricci_traceless_part, g);
        double d2 = tensor_inner_product(st.weyl, st.scalar_part, g);
        double d3 = tensor_inner_product(st.ricci_traceless_part, st.scalar_part, g);
        const double scale = A.frobenius_norm() * A.frobenius_norm();
        CHECK(std::abs(d1) <= 1e-9 * std::max(1.0, scale));
        CHECK(std::abs(d2) <= 1e-9 * std::max(1.0, scale));
        CHECK(std::abs(d3) <= 1e-9 * std::max(1.0, scale));
      }
    }
  }

  SUBCASE("reconstruction holds for m = 4..8, Euclidean and Lorentzian") {
    for (int m = 4; m <= 8; ++m) {
      for (int p : {0, 1}) {
        Metric g = make_metric(p, m - p);
        for (int t = 0; t < 4; ++t) {
          Rank4Tensor A = random_riemann(rng, m);
          SingerThorpeDecomposition st = singer_thorpe(CurvatureModel(g, A));
          CHECK(st.reconstruction_residual <= 1e-9);
        }
      }
    }
  }

  SUBCASE("sigma is a right inverse of rho") {
    for (int m = 4; m <= 8; ++m) {
      Metric g = make_metric(0, m);
      for (int t = 0; t < 10; ++t) {
        Eigen::MatrixXd M = random_matrix(rng, m);
        Eigen::MatrixXd rho = 0.5 * (M + M.transpose());
        Rank4Tensor T = sigma_of_ricci(rho, g);
        CurvatureModel cm(g, T);
        Eigen::MatrixXd back = ricci_scalar(cm).ricci.components();
        CHECK((back - rho).cwiseAbs().maxCoeff() <=
              1e-9 * std::max(1.0, rho.cwiseAbs().maxCoeff()));
      }
    }
  }

  SUBCASE("equivariance under metric-preserving pullback") {
    Metric g = make_metric(0, 5);
    for (int t = 0; t < 5; ++t) {
      Rank4Tensor A = random_riemann(rng, 5);
      Endo T(random_orthogonal(rng, 5));
      SingerThorpeDecomposition s1 = singer_thorpe(CurvatureModel(g, A));
      SingerThorpeDecomposition s2 = singer_thorpe(CurvatureModel(g, pullback(A, T)));
      CHECK((pullback(s1.weyl, T) - s2.weyl).max_abs() <= 1e-8 * std::max(1.0, A.max_abs()));
      CHECK((pullback(s1.scalar_part, T) - s2.scalar_part).max_abs() <=
            1e-8 * std::max(1.0, A.max_abs()));
    }
  }

  SUBCASE("space dimension identity m = 4, 5") {
    CHECK(riemann_space(4).dim() == 20);
    CHECK(riemann_space(5).dim() == 50);
  }
}

TEST_CASE("constructors") {
  Metric g = make_metric(0, 4);
  Rng rng(11);

  SUBCASE("phi = id with C = 0 gives the zero tensor") {
    CurvatureModel cm = constant_curvature(g, 0.0);
    CHECK(cm.tensor.max_abs() == 0.0);
  }

  SUBCASE("constant curvature has K = C on random planes") {
    CurvatureModel cm = constant_curvature(g, 1.0);
    for (int t = 0; t < 64; ++t) {
      Eigen::VectorXd x(4), y(4);
      for (int i = 0; i < 4; ++i) {
        x(i) = rng.next_normal();
        y(i) = rng.next_normal();
      }
      CHECK(sectional_curvature(cm, x, y) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("raw phi tensor with phi = id has K = -1") {
    CurvatureModel raw(g, phi_tensor_raw(g, Endo::identity(4)));
    Eigen::VectorXd x = Eigen::VectorXd::Unit(4, 0), y = Eigen::VectorXd::Unit(4, 1);
    CHECK(sectional_curvature(raw, x, y) == doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("indefinite phi passes symmetries; modified product has signature (1,3)") {
    Eigen::VectorXd d(4);
    d << 1, 1, 1, -1;
    CurvatureModel cm = rank_one_phi(g, Endo(Eigen::MatrixXd(d.asDiagonal())), 1.0);
    CHECK(validate_symmetries(cm.tensor, g).all_ok());
    // <x,y>_phi = <phi x, y> on the Euclidean metric: one negative direction
    int neg = 0;
    for (int i = 0; i < 4; ++i) neg += d(i) < 0 ? 1 : 0;
    CHECK(neg == 1);
  }

  SUBCASE("non-self-adjoint phi is rejected") {
    Eigen::MatrixXd M = random_matrix(rng, 4);
    M(0, 1) += 2.0;  // definitely not symmetric
    CHECK_THROWS_AS(rank_one_phi(g, Endo(M), 1.0), validation_error);
  }

  SUBCASE("skew psi tensor: zero map, standard structure, Bianchi needs the third term") {
    CHECK(skew_psi_tensor(g, Endo(Eigen::MatrixXd::Zero(4, 4))).tensor.max_abs() == 0.0);

    Eigen::MatrixXd J(4, 4);
    J << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    CurvatureModel cm = skew_psi_tensor(g, Endo(J));
    CHECK(validate_symmetries(cm.tensor, g).all_ok());
    CHECK((pullback(cm.tensor, Endo(J)) - cm.tensor).max_abs() < 1e-12);

    // drop the -2 <psi x,y><psi z,w> term: first Bianchi must fail
    Rank4Tensor crippled(4, TensorKind::riemann);
    Eigen::MatrixXd Q = J.transpose();  // lowered psi on the Euclidean metric
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            crippled.at(i, j, k, l) = Q(j, k) * Q(i, l) - Q(i, k) * Q(j, l);
    auto rep = validate_symmetries(crippled, g);
    CHECK_FALSE(rep.first_bianchi_ok);

    CHECK_THROWS_AS(skew_psi_tensor(g, Endo(Eigen::MatrixXd::Identity(4, 4))),
                    validation_error);
  }
}

TEST_CASE("model_fingerprint") {
  Metric g = make_metric(0, 4);
  Rng rng(13);

  SUBCASE("pullback-related models share fingerprints") {
    for (int t = 0; t < 5; ++t) {
      Rank4Tensor A = random_riemann(rng, 4);
      Endo T(random_orthogonal(rng, 4));
      ModelFingerprint f1 = model_fingerprint(CurvatureModel(g, A));
      ModelFingerprint f2 = model_fingerprint(CurvatureModel(g, pullback(A, T)));
      CHECK(f1.scalar == doctest::Approx(f2.scalar).epsilon(1e-8));
      CHECK(f1.ricci_traceless_norm == doctest::Approx(f2.ricci_traceless_norm).epsilon(1e-8));
      CHECK(f1.weyl_norm == doctest::Approx(f2.weyl_norm).epsilon(1e-8));
      for (std::size_t i = 0; i < f1.ricci_eigenvalues.size(); ++i)
        CHECK(f1.ricci_eigenvalues[i] ==
              doctest::Approx(f2.ricci_eigenvalues[i]).epsilon(1e-7).scale(1.0));
      for (std::size_t i = 0; i < f1.two_form_eigenvalues.size(); ++i)
        CHECK(f1.two_form_eigenvalues[i] ==
              doctest::Approx(f2.two_form_eigenvalues[i]).epsilon(1e-7).scale(1.0));
    }
  }

  SUBCASE("constant curvature C = 1 vs C = 2 differ in tau") {
    ModelFingerprint f1 = model_fingerprint(constant_curvature(g, 1.0));
    ModelFingerprint f2 = model_fingerprint(constant_curvature(g, 2.0));
    CHECK(f1.scalar == doctest::Approx(12.0));
    CHECK(f2.scalar == doctest::Approx(24.0));
  }

  SUBCASE("zero model fingerprint is all zero") {
    ModelFingerprint f = model_fingerprint(CurvatureModel(g, Rank4Tensor(4, TensorKind::riemann)));
    CHECK(f.scalar == 0.0);
    CHECK(f.ricci_traceless_norm == 0.0);
    CHECK(f.weyl_norm == 0.0);
    for (double v : f.two_form_eigenvalues) CHECK(v == 0.0);
  }
}
