#include "curv/affine.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace curv {

namespace {

void require_affine(const Rank4Tensor& A) {
  if (A.kind() != TensorKind::affine)
    throw validation_error("operation requires an affine curvature operator");
  Metric g = make_metric(0, A.dimension());
  SymmetryReport rep = validate_symmetries(A, g);
  if (!rep.all_ok()) {
    std::ostringstream os;
    os << "affine operator fails its symmetries (max violation " << rep.max_violation << ")";
    throw validation_error(os.str());
  }
}

}  // namespace

BilinearForm affine_ricci(const Rank4Tensor& A) {
  require_affine(A);
  const int m = A.dimension();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) rho(i, j) += A(k, i, j, k);
  return BilinearForm(rho);
}

Rank4Tensor sigma_split(const Eigen::MatrixXd& ra, const Eigen::MatrixXd& rs, int m) {
  if (m == 1) throw unsupported_error("sigma_split is singular at m = 1");
  if (ra.rows() != m || rs.rows() != m)
    throw dimension_mismatch("sigma_split: form dimension mismatch");
  if ((ra + ra.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, ra.cwiseAbs().maxCoeff()))
    throw validation_error("sigma_split: rho_a must be antisymmetric");
  if ((rs - rs.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, rs.cwiseAbs().maxCoeff()))
    throw validation_error("sigma_split: rho_s must be symmetric");

  const double ca = -1.0 / (1.0 + m);
  const double cs = 1.0 / (1.0 - m);
  Rank4Tensor T(m, TensorKind::affine);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        // delta^l_k term
        T.at(i, j, k, k) += ca * 2.0 * ra(i, j);
        // delta^l_j and delta^l_i terms
        T.at(i, j, k, j) += ca * ra(i, k) + cs * rs(i, k);
        T.at(i, j, k, i) += -ca * ra(j, k) - cs * rs(j, k);
      }
  return T;
}

AffineDecompositionGL decompose_gl(const Rank4Tensor& A) {
  require_affine(A);
  const int m = A.dimension();
  BilinearForm rho = affine_ricci(A);
  Eigen::MatrixXd ra = rho.antisymmetric_part();
  Eigen::MatrixXd rs = rho.symmetric_part();

  Rank4Tensor sym_part = sigma_split(Eigen::MatrixXd::Zero(m, m), rs, m);
  Rank4Tensor antisym_part = sigma_split(ra, Eigen::MatrixXd::Zero(m, m), m);
  Rank4Tensor weyl = A - sym_part - antisym_part;

  AffineDecompositionGL out{std::move(weyl), std::move(sym_part), std::move(antisym_part),
                            rho, rs, ra};
  Rank4Tensor recon = out.projective_weyl + out.sym_part + out.antisym_part;
  recon -= A;
  out.reconstruction_residual = recon.frobenius_norm() / std::max(1e-300, A.frobenius_norm());
  out.weyl_norm = out.projective_weyl.frobenius_norm();
  out.sym_norm = out.sym_part.frobenius_norm();
  out.antisym_norm = out.antisym_part.frobenius_norm();
  return out;
}

AffineFlags classify_affine(const Rank4Tensor& A, double rel_tol) {
  AffineDecompositionGL d = decompose_gl(A);
  const double scale = std::max(1.0, A.frobenius_norm());

  AffineFlags f;
  f.ricci_symmetric = d.ricci_antisym.norm() <= rel_tol * scale;
  f.ricci_antisymmetric = d.ricci_sym.norm() <= rel_tol * scale;
  f.ricci_flat = f.ricci_symmetric && f.ricci_antisymmetric;
  f.projectively_flat = d.weyl_norm <= rel_tol * scale;
  f.flat = f.projectively_flat && f.ricci_flat;

  // realizability by a manifold with matching flags; non-zero components of
  // (ker rho, S^2, Lambda^2) decide the row
  const bool has_weyl = !f.projectively_flat;
  const bool has_sym = d.sym_norm > rel_tol * scale;
  const bool has_antisym = d.antisym_norm > rel_tol * scale;
  if (!has_weyl && !has_sym && has_antisym) {
    f.realizable = false;
    f.realizability_case = "projectively flat, Ricci anti-symmetric, not flat";
  } else {
    f.realizable = true;
    std::ostringstream os;
    os << (has_weyl ? "*" : "0") << "," << (has_sym ? "*" : "0") << ","
       << (has_antisym ? "*" : "0");
    f.realizability_case = os.str();
  }
  return f;
}

namespace {

using Mat = Eigen::MatrixXd;


// two-form and trace-free symmetric-form bases
std::vector<Mat> antisym_basis(int m) {
  std::vector<Mat> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Mat p = Mat::Zero(m, m);
      p(i, j) = 1.0;
      p(j, i) = -1.0;
      out.push_back(p);
    }
  return out;
}

std::vector<Mat> tracefree_sym_basis(const Metric& g) {
  const int m = g.dimension();
  std::vector<Mat> out;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Mat t = Mat::Zero(m, m);
      t(i, j) = t(j, i) = 1.0;
      double tr = (g.inverse().array() * t.array()).sum();
      t -= (tr / m) * g.components();
      if (t.cwiseAbs().maxCoeff() > 1e-12) out.push_back(t);
    }
  return out;
}

// lowered embeddings of forms into the affine space
Rank4Tensor embed_a(const Mat& th, const Metric& g) {  // th_ik e_jl - th_jk e_il
  const int m = g.dimension();
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) = th(i, k) * g(j, l) - th(j, k) * g(i, l);
  return T;
}

Rank4Tensor embed_b(const Mat& th, const Metric& g) {  // th_il e_jk - th_jl e_ik
  const int m = g.dimension();
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) = th(i, l) * g(j, k) - th(j, l) * g(i, k);
  return T;
}

Rank4Tensor embed_siga(const Mat& ps, const Metric& g) {  // 2 ps_ij e_kl + ps_ik e_jl - ps_jk e_il
  const int m = g.dimension();
  Rank4Tensor T(m, TensorKind::riemann);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          T.at(i, j, k, l) =
              2.0 * ps(i, j) * g(k, l) + ps(i, k) * g(j, l) - ps(j, k) * g(i, l);
  return T;
}

Eigen::VectorXd trace14(const Rank4Tensor& T, const Metric& g) {
  const int m = T.dimension();
  Mat r = Mat::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) r(j, k) += g.inv(a, b) * T(a, j, k, b);
  return Eigen::Map<Eigen::VectorXd>(r.data(), m * m);
}

Subspace span_of_tensors(const std::vector<Rank4Tensor>& ts) {
  if (ts.empty()) return Subspace();
  Eigen::MatrixXd cols(ts.front().as_vector().size(), static_cast<Eigen::Index>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = ts[i].as_vector();
  return span_of(cols);
}

std::shared_ptr<const BokanSpaces> build_bokan(const Metric& g) {
  const int m = g.dimension();
  auto out = std::make_shared<BokanSpaces>();
  out->space = affine_space(m);
  out->gram = induced_gram_diagonal(g);

  auto lam = antisym_basis(m);
  auto s0 = tracefree_sym_basis(g);

  // A1..A3: sigma images; B25/B34: full isotypic blocks
  out->modules[0] = span_of_tensors({embed_a(g.components(), g)});
  std::vector<Rank4Tensor> a2ts, b25ts, a3ts, b34ts;
  for (const auto& th : s0) {
    a2ts.push_back(embed_a(th, g));
    b25ts.push_back(embed_a(th, g));
    b25ts.push_back(embed_b(th, g));
  }
  for (const auto& ps : lam) {
    a3ts.push_back(embed_siga(ps, g));
    b34ts.push_back(embed_siga(ps, g));
    b34ts.push_back(embed_b(ps, g));
  }
  out->modules[1] = span_of_tensors(a2ts);
  out->modules[2] = span_of_tensors(a3ts);
  Subspace B25 = span_of_tensors(b25ts);
  Subspace B34 = span_of_tensors(b34ts);
  out->modules[3] = orthocomplement_within(B34, out->modules[2], out->gram);
  out->modules[4] = orthocomplement_within(B25, out->modules[1], out->gram);

  const TensorKind lk = TensorKind::riemann;  // lowered storage
  // A6: pair symmetric, trace free
  out->modules[5] = null_space_within(
      out->space,
      [&](const Rank4Tensor& T) {
        const int n = T.dimension();
        Eigen::VectorXd r(static_cast<Eigen::Index>(n) * n * n * n + n * n);
        Eigen::Index at = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) r(at++) = T(i, j, k, l) - T(k, l, i, j);
        r.segment(at, n * n) = trace14(T, g);
        return r;
      },
      m, lk);
  // A7: symmetric in (3,4), the four-term relation, trace free
  out->modules[6] = null_space_within(
      out->space,
      [&](const Rank4Tensor& T) {
        const int n = T.dimension();
        Eigen::VectorXd r(2 * static_cast<Eigen::Index>(n) * n * n * n + n * n);
        Eigen::Index at = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                r(at++) = T(i, j, k, l) - T(i, j, l, k);
                r(at++) = T(k, j, i, l) + T(i, k, j, l) - T(l, j, i, k) - T(i, l, j, k);
              }
        r.segment(at, n * n) = trace14(T, g);
        return r;
      },
      m, lk);
  // A8: the residual module. Its printed relations (antisym(3,4), anti pair
  // swap, trace free) have no solutions satisfying the first Bianchi
  // identity, so the module is realized as the invariant complement of
  // A1..A7 inside the space; this span equals the metric projection of the
  // printed constraint space onto the space.
  {
    Eigen::Index total = 0;
    for (int i = 0; i < 7; ++i) total += out->modules[i].dim();
    Eigen::MatrixXd all(out->space.ambient(), total);
    Eigen::Index at = 0;
    for (int i = 0; i < 7; ++i) {
      if (out->modules[i].dim() == 0) continue;
      all.middleCols(at, out->modules[i].dim()) = out->modules[i].basis();
      at += out->modules[i].dim();
    }
    out->modules[7] = orthocomplement_within(out->space, Subspace(all), out->gram);
  }

  for (int i = 0; i < 8; ++i) out->dims[i] = out->modules[i].dim();
  return out;
}

std::mutex bokan_cache_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const BokanSpaces>> bokan_cache;

}  // namespace

std::shared_ptr<const BokanSpaces> bokan_spaces(const Metric& g) {
  if (!g.canonical())
    throw unsupported_error("bokan_spaces expects a canonical metric; orthonormalize first");
  const std::pair<int, int> key{g.dimension(), g.p()};
  {
    std::lock_guard<std::mutex> lock(bokan_cache_mutex);
    auto it = bokan_cache.find(key);
    if (it != bokan_cache.end()) return it->second;
  }
  auto built = build_bokan(g);
  std::lock_guard<std::mutex> lock(bokan_cache_mutex);
  auto [it, inserted] = bokan_cache.emplace(key, built);
  return it->second;
}

BokanDecomposition decompose_bokan(const Rank4Tensor& A, const Metric& g) {
  require_affine(A);
  if (A.dimension() != g.dimension())
    throw dimension_mismatch("decompose_bokan: dimension mismatch");
  if (A.dimension() < 4)
    throw unsupported_error("decompose_bokan requires dimension >= 4");

  auto spaces = bokan_spaces(g);
  Rank4Tensor theta = A.lowered(g);
  Eigen::VectorXd x = theta.as_vector();
  const int m = A.dimension();

  BokanDecomposition out{{Rank4Tensor(m, TensorKind::affine), Rank4Tensor(m, TensorKind::affine),
                          Rank4Tensor(m, TensorKind::affine), Rank4Tensor(m, TensorKind::affine),
                          Rank4Tensor(m, TensorKind::affine), Rank4Tensor(m, TensorKind::affine),
                          Rank4Tensor(m, TensorKind::affine), Rank4Tensor(m, TensorKind::affine)}};
  out.dims = spaces->dims;
  out.direct_sum_mode = !g.euclidean();

  std::vector<Eigen::VectorXd> comps;
  if (out.direct_sum_mode) {
    std::vector<Subspace> blocks(spaces->modules.begin(), spaces->modules.end());
    comps = split_over_blocks(blocks, x);
  } else {
    for (int i = 0; i < 8; ++i) comps.push_back(spaces->modules[i].project(x));
  }

  Eigen::VectorXd recon = Eigen::VectorXd::Zero(x.size());
  for (int i = 0; i < 8; ++i) {
    recon += comps[i];
    Rank4Tensor part = Rank4Tensor::from_vector(comps[i], m, TensorKind::riemann);
    out.parts[i] = part.raised(g);
    out.part_norms[i] = out.parts[i].frobenius_norm();
  }
  out.reconstruction_residual = (recon - x).norm() / std::max(1e-300, x.norm());
  return out;
}

}  // namespace curv
