#ifndef CURV_SUBSPACE_HPP
#define CURV_SUBSPACE_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "curv/metric.hpp"
#include "curv/rank4.hpp"

namespace curv {

/// Linear subspace of the m^4 coordinate space, held as a column-orthonormal
/// basis (orthonormal in plain coordinates; metric weights enter through the
/// explicit Gram vector below).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Orthonormal projection in plain coordinates (valid as a metric
  /// projection when the Gram is the identity, i.e. Euclidean signature).
  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    if (dim() == 0) return Eigen::VectorXd::Zero(x.size());
    return basis_ * (basis_.transpose() * x);
  }

 private:
  Eigen::MatrixXd basis_;
};

/// Orthonormalized span of the given columns (rank-truncated SVD).
Subspace span_of(const Eigen::MatrixXd& columns, double rel_tol = 1e-9);

/// Linear map used as a constraint: tensor |-> residual vector.
using TensorConstraint = std::function<Eigen::VectorXd(const Rank4Tensor&)>;

/// {x in S : C(x) = 0} for the linear constraint C, computed through a full
/// SVD of C restricted to the basis of S.
Subspace null_space_within(const Subspace& S, const TensorConstraint& constraint,
                           int m, TensorKind kind, double rel_tol = 1e-9);

/// {x in S : <x, e>_G = 0 for all e in E}, G a diagonal Gram given by its
/// weight vector (signs of the induced tensor inner product).
Subspace orthocomplement_within(const Subspace& S, const Subspace& E,
                                const Eigen::VectorXd& gram, double rel_tol = 1e-9);

/// Diagonal of the induced inner product on rank-4 tensors in the canonical
/// basis of g: weight(i,j,k,l) = eps^ii eps^jj eps^kk eps^ll.
Eigen::VectorXd induced_gram_diagonal(const Metric& g);

/// Orthonormal basis of the algebraic curvature tensors R(V):
/// antisym(1,2) + pair symmetry + first Bianchi. dim = m^2(m^2-1)/12.
Subspace riemann_space(int m);

/// Orthonormal basis of the affine curvature operators A(V) in lowered form:
/// antisym(1,2) + first Bianchi on slots (1,2,3). dim = m^2(m^2-1)/3.
Subspace affine_space(int m);

/// Least-squares coordinates of x over the concatenated bases of blocks;
/// exact when the blocks form a direct sum containing x ("direct-sum mode"
/// for indefinite signatures). Returns one component per block.
std::vector<Eigen::VectorXd> split_over_blocks(const std::vector<Subspace>& blocks,
                                               const Eigen::VectorXd& x);

}  // namespace curv

#endif
