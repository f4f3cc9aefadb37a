#ifndef CURV_RANK4_HPP
#define CURV_RANK4_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "curv/endo.hpp"
#include "curv/metric.hpp"

namespace curv {

enum class TensorKind {
  affine,   // values A_{ijk}^l, last index raised, Eq-type: antisym(1,2) + first Bianchi
  riemann,  // all indices lowered: antisym(1,2), pair symmetry, first Bianchi
};

std::string to_string(TensorKind kind);

/// Dense rank-4 tensor, row-major in (i,j,k,l). Immutable in spirit: all
/// operations return new values. m <= 16 is the supported envelope; m^4
/// doubles are stored densely so component access is O(1).
class Rank4Tensor {
 public:
  Rank4Tensor(int m, TensorKind kind)
      : m_(m), kind_(kind), data_(static_cast<std::size_t>(m) * m * m * m, 0.0) {
    if (m < 1) throw dimension_mismatch("rank-4 tensor needs dimension >= 1");
  }

  int dimension() const { return m_; }
  TensorKind kind() const { return kind_; }

  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  double& at(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }

  static Rank4Tensor from_vector(const Eigen::VectorXd& v, int m, TensorKind kind);

  double max_abs() const;
  double frobenius_norm() const;
  bool finite() const;

  Rank4Tensor& operator+=(const Rank4Tensor& rhs);
  Rank4Tensor& operator-=(const Rank4Tensor& rhs);
  Rank4Tensor& operator*=(double c);
  friend Rank4Tensor operator+(Rank4Tensor a, const Rank4Tensor& b) { return a += b; }
  friend Rank4Tensor operator-(Rank4Tensor a, const Rank4Tensor& b) { return a -= b; }
  friend Rank4Tensor operator*(double c, Rank4Tensor a) { return a *= c; }

  /// Contract endomorphism into one slot: out(...x...) = T(...Lx...).
  Rank4Tensor contract_slot(const Endo& L, int slot) const;

  /// Lower the raised index of an affine tensor: Theta_{ijkl} = A_{ijk}^a eps_{al}.
  Rank4Tensor lowered(const Metric& g) const;
  /// Raise the last index of a riemann-type tensor into affine kind.
  Rank4Tensor raised(const Metric& g) const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * m_ + j) * m_ + k) * m_ + l;
  }

  int m_;
  TensorKind kind_;
  std::vector<double> data_;
};

/// Per-class verdicts of validate_symmetries. Violations are absolute; the
/// verdict compares them against tol * max(1, max-norm of T).
struct SymmetryReport {
  bool antisymmetry_ok = false;
  bool pair_symmetry_ok = false;   // riemann only; true for affine kind
  bool first_bianchi_ok = false;
  double antisymmetry_violation = 0.0;
  double pair_symmetry_violation = 0.0;
  double first_bianchi_violation = 0.0;
  double max_violation = 0.0;
  double scale = 0.0;  // max-norm the relative tolerance was applied to
  bool all_ok() const { return antisymmetry_ok && pair_symmetry_ok && first_bianchi_ok; }
};

SymmetryReport validate_symmetries(const Rank4Tensor& T, const Metric& g,
                                   double rel_tol = 1e-9);

/// One generator entry T_{ijkl} = value (0-based indices).
struct GeneratorEntry {
  int i, j, k, l;
  double value;
};

/// Fill the symmetry orbit of every generator (riemann: antisym(1,2),
/// antisym(3,4), pair swap; affine: antisym(1,2)); unset entries stay zero.
/// The first Bianchi identity is not imposed, only validated afterwards.
/// Conflicting values inside one orbit raise conflict_error naming the orbit.
Rank4Tensor complete_by_symmetry(std::span<const GeneratorEntry> generators,
                                 TensorKind kind, int m);

/// (L*A)_{ijkl} = A_{abcd} L^a_i L^b_j L^c_k L^d_l; for affine kind the
/// raised slot transforms with L^{-1}, so L must be invertible there.
Rank4Tensor pullback(const Rank4Tensor& T, const Endo& L);

/// Full contraction <A,B> = A_{ijkl} B_{abcd} eps^{ia} eps^{jb} eps^{kc} eps^{ld};
/// riemann kind only. Positive definite iff the metric is Euclidean.
double tensor_inner_product(const Rank4Tensor& A, const Rank4Tensor& B, const Metric& g);

}  // namespace curv

#endif
