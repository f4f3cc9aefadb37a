#include "curv/rank4.hpp"

#include <cmath>
#include <sstream>

namespace curv {

std::string to_string(TensorKind kind) {
  return kind == TensorKind::affine ? "affine" : "riemann";
}

Rank4Tensor Rank4Tensor::from_vector(const Eigen::VectorXd& v, int m, TensorKind kind) {
  Rank4Tensor T(m, kind);
  if (v.size() != static_cast<Eigen::Index>(T.data_.size()))
    throw dimension_mismatch("vector length does not match m^4");
  for (Eigen::Index i = 0; i < v.size(); ++i) T.data_[i] = v(i);
  return T;
}

double Rank4Tensor::max_abs() const {
  double r = 0.0;
  for (double x : data_) r = std::max(r, std::abs(x));
  return r;
}

double Rank4Tensor::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

bool Rank4Tensor::finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

Rank4Tensor& Rank4Tensor::operator+=(const Rank4Tensor& rhs) {
  if (rhs.m_ != m_ || rhs.kind_ != kind_) throw dimension_mismatch("tensor sum: shape/kind mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Rank4Tensor& Rank4Tensor::operator-=(const Rank4Tensor& rhs) {
  if (rhs.m_ != m_ || rhs.kind_ != kind_) throw dimension_mismatch("tensor difference: shape/kind mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Rank4Tensor& Rank4Tensor::operator*=(double c) {
  for (double& x : data_) x *= c;
  return *this;
}

Rank4Tensor Rank4Tensor::contract_slot(const Endo& L, int slot) const {
  if (L.dimension() != m_) throw dimension_mismatch("contract_slot: endomorphism dimension mismatch");
  Rank4Tensor out(m_, kind_);
  const auto& M = L.matrix();
  int idx[4];
  for (idx[0] = 0; idx[0] < m_; ++idx[0])
    for (idx[1] = 0; idx[1] < m_; ++idx[1])
      for (idx[2] = 0; idx[2] < m_; ++idx[2])
        for (idx[3] = 0; idx[3] < m_; ++idx[3]) {
          double s = 0.0;
          int src[4] = {idx[0], idx[1], idx[2], idx[3]};
          for (int a = 0; a < m_; ++a) {
            src[slot] = a;
            s += M(a, idx[slot]) * (*this)(src[0], src[1], src[2], src[3]);
          }
          out.at(idx[0], idx[1], idx[2], idx[3]) = s;
        }
  return out;
}

Rank4Tensor Rank4Tensor::lowered(const Metric& g) const {
  if (kind_ != TensorKind::affine) throw validation_error("lowered(): input must be affine kind");
  if (g.dimension() != m_) throw dimension_mismatch("lowered(): metric dimension mismatch");
  Rank4Tensor out(m_, TensorKind::riemann);  // storage only; symmetries are the affine ones
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) {
          double s = 0.0;
          for (int a = 0; a < m_; ++a) s += (*this)(i, j, k, a) * g(a, l);
          out.at(i, j, k, l) = s;
        }
  return out;
}

Rank4Tensor Rank4Tensor::raised(const Metric& g) const {
  if (g.dimension() != m_) throw dimension_mismatch("raised(): metric dimension mismatch");
  Rank4Tensor out(m_, TensorKind::affine);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) {
          double s = 0.0;
          for (int a = 0; a < m_; ++a) s += (*this)(i, j, k, a) * g.inv(a, l);
          out.at(i, j, k, l) = s;
        }
  return out;
}

SymmetryReport validate_symmetries(const Rank4Tensor& T, const Metric& g, double rel_tol) {
  if (T.dimension() != g.dimension())
    throw dimension_mismatch("validate_symmetries: tensor/metric dimension mismatch");
  if (!T.finite()) throw validation_error("tensor has non-finite entries");

  const int m = T.dimension();
  SymmetryReport rep;
  rep.scale = std::max(1.0, T.max_abs());

  double anti = 0.0, pair = 0.0, bianchi = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          anti = std::max(anti, std::abs(T(i, j, k, l) + T(j, i, k, l)));
          bianchi = std::max(bianchi, std::abs(T(i, j, k, l) + T(j, k, i, l) + T(k, i, j, l)));
          if (T.kind() == TensorKind::riemann)
            pair = std::max(pair, std::abs(T(i, j, k, l) - T(k, l, i, j)));
        }

  rep.antisymmetry_violation = anti;
  rep.pair_symmetry_violation = pair;
  rep.first_bianchi_violation = bianchi;
  rep.max_violation = std::max({anti, pair, bianchi});
  const double bound = rel_tol * rep.scale;
  rep.antisymmetry_ok = anti <= bound;
  rep.pair_symmetry_ok = pair <= bound;
  rep.first_bianchi_ok = bianchi <= bound;
  return rep;
}

Rank4Tensor complete_by_symmetry(std::span<const GeneratorEntry> generators,
                                 TensorKind kind, int m) {
  Rank4Tensor T(m, kind);
  std::vector<char> set(T.data().size(), 0);

  auto place = [&](int i, int j, int k, int l, double v, const GeneratorEntry& gen) {
    double& slot = T.at(i, j, k, l);
    std::size_t flat = ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
    if (set[flat]) {
      if (std::abs(slot - v) > 1e-12 * std::max({1.0, std::abs(slot), std::abs(v)})) {
        std::ostringstream os;
        os << "conflicting generator entries in the orbit of (" << gen.i << "," << gen.j << ","
           << gen.k << "," << gen.l << "): position (" << i << "," << j << "," << k << "," << l
           << ") receives both " << slot << " and " << v;
        throw conflict_error(os.str());
      }
    } else {
      slot = v;
      set[flat] = 1;
    }
  };

  for (const auto& gen : generators) {
    if (gen.i < 0 || gen.i >= m || gen.j < 0 || gen.j >= m || gen.k < 0 || gen.k >= m ||
        gen.l < 0 || gen.l >= m)
      throw validation_error("generator index out of range");
    if (kind == TensorKind::affine) {
      place(gen.i, gen.j, gen.k, gen.l, gen.value, gen);
      place(gen.j, gen.i, gen.k, gen.l, -gen.value, gen);
    } else {
      for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
          int a = s1 ? gen.j : gen.i, b = s1 ? gen.i : gen.j;
          int c = s2 ? gen.l : gen.k, d = s2 ? gen.k : gen.l;
          double v = (s1 ^ s2) ? -gen.value : gen.value;
          place(a, b, c, d, v, gen);
          place(c, d, a, b, v, gen);
        }
    }
  }
  return T;
}

Rank4Tensor pullback(const Rank4Tensor& T, const Endo& L) {
  if (L.dimension() != T.dimension()) throw dimension_mismatch("pullback: dimension mismatch");
  if (T.kind() == TensorKind::riemann) {
    return T.contract_slot(L, 0).contract_slot(L, 1).contract_slot(L, 2).contract_slot(L, 3);
  }
  // affine: covariant slots with L, the raised slot with L^{-1}
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L.matrix());
  if (!lu.isInvertible())
    throw validation_error("pullback of an affine operator needs invertible L");
  Endo Linv(lu.inverse());
  Rank4Tensor out = T.contract_slot(L, 0).contract_slot(L, 1).contract_slot(L, 2);
  // raised slot: (L*A)_{ijk}^l = A_{abc}^d L^a_i L^b_j L^c_k (L^{-1})^l_d
  Rank4Tensor res(T.dimension(), TensorKind::affine);
  const int m = T.dimension();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int d = 0; d < m; ++d) s += out(i, j, k, d) * Linv.matrix()(l, d);
          res.at(i, j, k, l) = s;
        }
  return res;
}

double tensor_inner_product(const Rank4Tensor& A, const Rank4Tensor& B, const Metric& g) {
  if (A.dimension() != B.dimension() || A.dimension() != g.dimension())
    throw dimension_mismatch("tensor_inner_product: dimension mismatch");
  if (A.kind() != TensorKind::riemann || B.kind() != TensorKind::riemann)
    throw validation_error("tensor_inner_product: riemann kind required");

  const int m = A.dimension();
  if (g.canonical()) {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            double w = g.inv(i, i) * g.inv(j, j) * g.inv(k, k) * g.inv(l, l);
            s += w * A(i, j, k, l) * B(i, j, k, l);
          }
    return s;
  }
  // general metric: raise all four indices of B, then contract
  Rank4Tensor Braised = B;
  Endo einv(g.inverse());
  Braised = Braised.contract_slot(einv, 0).contract_slot(einv, 1)
                .contract_slot(einv, 2).contract_slot(einv, 3);
  double s = 0.0;
  for (std::size_t i = 0; i < A.data().size(); ++i) s += A.data()[i] * Braised.data()[i];
  return s;
}

}  // namespace curv
