#include "curv/subspace.hpp"

#include <Eigen/QR>

namespace curv {

namespace {

/// Rank-revealing orthonormalization of the column span via column-pivoted
/// QR. (BDCSVD in Eigen 3.4 miscounts the rank on some of the large sparse
/// spanning matrices produced here, so SVD is avoided for rank decisions.)
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& M, double rel_tol) {
  if (M.cols() == 0 || M.norm() == 0.0) return Eigen::MatrixXd(M.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(rel_tol);
  const Eigen::Index rank = qr.rank();
  if (rank == 0) return Eigen::MatrixXd(M.rows(), 0);
  Eigen::MatrixXd thin = Eigen::MatrixXd::Identity(M.rows(), rank);
  return qr.householderQ() * thin;
}

/// Null space of C via rank-revealing LU, columns orthonormalized.
Eigen::MatrixXd kernel_of(const Eigen::MatrixXd& C, double rel_tol) {
  const Eigen::Index k = C.cols();
  if (k == 0) return Eigen::MatrixXd(0, 0);
  if (C.norm() == 0.0) return Eigen::MatrixXd::Identity(k, k);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
  lu.setThreshold(rel_tol);
  Eigen::MatrixXd kern = lu.kernel();
  if (kern.cols() == 1 && kern.norm() == 0.0) return Eigen::MatrixXd(k, 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(kern);
  Eigen::MatrixXd thin = Eigen::MatrixXd::Identity(k, kern.cols());
  return qr.householderQ() * thin;
}

}  // namespace

Subspace span_of(const Eigen::MatrixXd& columns, double rel_tol) {
  return Subspace(orthonormal_span(columns, rel_tol));
}

Subspace null_space_within(const Subspace& S, const TensorConstraint& constraint,
                           int m, TensorKind kind, double rel_tol) {
  if (S.dim() == 0) return S;
  Eigen::MatrixXd C;
  for (int c = 0; c < S.dim(); ++c) {
    Rank4Tensor T = Rank4Tensor::from_vector(S.basis().col(c), m, kind);
    Eigen::VectorXd r = constraint(T);
    if (c == 0) C.resize(r.size(), S.dim());
    C.col(c) = r;
  }
  Eigen::MatrixXd K = kernel_of(C, rel_tol);
  if (K.cols() == 0) return Subspace(Eigen::MatrixXd(S.ambient(), 0));
  return Subspace(orthonormal_span(S.basis() * K, rel_tol));
}

Subspace orthocomplement_within(const Subspace& S, const Subspace& E,
                                const Eigen::VectorXd& gram, double rel_tol) {
  if (E.dim() == 0 || S.dim() == 0) return S;
  // rows: (G e)^T b for each excluded basis vector e, each kept basis vector b
  Eigen::MatrixXd C = (gram.asDiagonal() * E.basis()).transpose() * S.basis();
  Eigen::MatrixXd K = kernel_of(C, rel_tol);
  if (K.cols() == 0) return Subspace(Eigen::MatrixXd(S.ambient(), 0));
  return Subspace(orthonormal_span(S.basis() * K, rel_tol));
}

Eigen::VectorXd induced_gram_diagonal(const Metric& g) {
  const int m = g.dimension();
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w(i) = g.inv(i, i);
  Eigen::VectorXd out(static_cast<Eigen::Index>(m) * m * m * m);
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) out(pos++) = w(i) * w(j) * w(k) * w(l);
  return out;
}

namespace {

Rank4Tensor bianchi_average(const Rank4Tensor& T) {
  const int m = T.dimension();
  Rank4Tensor out(m, T.kind());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          out.at(i, j, k, l) = (T(i, j, k, l) + T(j, k, i, l) + T(k, i, j, l)) / 3.0;
  return out;
}

}  // namespace

Subspace riemann_space(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

  const Eigen::Index n4 = static_cast<Eigen::Index>(m) * m * m * m;
  Eigen::MatrixXd cols(n4, static_cast<Eigen::Index>(pairs.size() * (pairs.size() + 1) / 2));
  Eigen::Index c = 0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b) {
      GeneratorEntry gen{pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second, 1.0};
      Rank4Tensor T = complete_by_symmetry({&gen, 1}, TensorKind::riemann, m);
      T -= bianchi_average(T);
      cols.col(c++) = T.as_vector();
    }
  return span_of(cols);
}

Subspace affine_space(int m) {
  const Eigen::Index n4 = static_cast<Eigen::Index>(m) * m * m * m;
  Eigen::MatrixXd cols(n4, static_cast<Eigen::Index>(m) * m * m * (m - 1) / 2);
  Eigen::Index c = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Rank4Tensor T(m, TensorKind::riemann);  // lowered affine storage
          T.at(i, j, k, l) = 1.0;
          T.at(j, i, k, l) = -1.0;
          T -= bianchi_average(T);
          cols.col(c++) = T.as_vector();
        }
  return span_of(cols);
}

std::vector<Eigen::VectorXd> split_over_blocks(const std::vector<Subspace>& blocks,
                                               const Eigen::VectorXd& x) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.dim();
  Eigen::MatrixXd B(x.size(), total);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    if (b.dim() > 0) B.middleCols(at, b.dim()) = b.basis();
    at += b.dim();
  }
  Eigen::VectorXd coef = B.completeOrthogonalDecomposition().solve(x);
  std::vector<Eigen::VectorXd> parts;
  at = 0;
  for (const auto& b : blocks) {
    if (b.dim() == 0) {
      parts.push_back(Eigen::VectorXd::Zero(x.size()));
    } else {
      parts.push_back(b.basis() * coef.segment(at, b.dim()));
    }
    at += b.dim();
  }
  return parts;
}

}  // namespace curv
