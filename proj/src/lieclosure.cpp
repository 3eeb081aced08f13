#include "iqc/lieclosure.hpp"

#include <array>

namespace iqc {

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

ComplexMatrix LieBasis::residual(const ComplexMatrix& m) const {
  ComplexMatrix r = m;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : elements_) r -= real_inner(e, r) * e;
  return r;
}

bool LieBasis::try_add(const ComplexMatrix& m, double threshold) {
  if (matrix_dim_ == 0) matrix_dim_ = m.rows();
  if (m.rows() != matrix_dim_ || m.cols() != matrix_dim_)
    throw PreconditionError("LieBasis: matrix dimension mismatch");
  ComplexMatrix r = residual(m);
  const double nrm = r.norm();
  if (!(nrm > threshold)) return false;
  r /= nrm;
  // re-symmetrize so accumulated rounding never breaks skew-Hermiticity
  r = (r - r.adjoint()) * 0.5;
  elements_.push_back(r / r.norm());
  return true;
}

LieBasis orthonormalize(std::span<const ComplexMatrix> mats, const Tolerances& tol) {
  LieBasis basis;
  for (const auto& m : mats) {
    if (!is_skew_hermitian(m, tol.rank)) throw PreconditionError("orthonormalize: input is not skew-Hermitian");
    if (std::abs(m.trace()) > tol.rank * std::max(1.0, m.norm()))
      throw PreconditionError("orthonormalize: input is not traceless");
    if (basis.matrix_dim() == 0) basis = LieBasis(m.rows());
    basis.try_add(m, tol.rank * m.norm());
  }
  return basis;
}

LieBasis closure(std::span<const ComplexMatrix> generators, const Tolerances& tol) {
  LieBasis basis = orthonormalize(generators, tol);
  if (basis.empty()) return basis;
  const std::size_t max_dim = static_cast<std::size_t>(basis.matrix_dim() * basis.matrix_dim() - 1);
  // Elements are unit norm, so the bracket threshold is tol.rank * ‖E_i‖‖E_j‖ = tol.rank.
  for (std::size_t i = 1; i < basis.size() && basis.size() < max_dim; ++i) {
    for (std::size_t j = 0; j < i && basis.size() < max_dim; ++j) {
      const ComplexMatrix& a = basis[i];
      const ComplexMatrix& b = basis[j];
      basis.try_add(commutator(a, b), tol.rank);
    }
  }
  return basis;
}

bool contains(const LieBasis& basis, const ComplexMatrix& m, const Tolerances& tol) {
  const double nrm = m.norm();
  if (nrm == 0.0) return true;
  if (basis.empty()) return false;
  return basis.residual(m).norm() < tol.rank * nrm;
}

LieBasis invariant_space(const LieBasis& algebra, const ComplexMatrix& seed, const Tolerances& tol) {
  if (!is_skew_hermitian(seed, tol.rank)) throw PreconditionError("invariant_space: seed is not skew-Hermitian");
  LieBasis space(seed.rows());
  space.try_add(seed, tol.rank * seed.norm());
  const std::size_t max_dim = static_cast<std::size_t>(seed.rows() * seed.rows());
  for (std::size_t p = 0; p < space.size() && space.size() < max_dim; ++p) {
    for (const auto& e : algebra.elements()) {
      const ComplexMatrix v = space[p];
      space.try_add(commutator(e, v), tol.rank);
      if (space.size() >= max_dim) break;
    }
  }
  return space;
}

LieBasis trace_a_image(const LieBasis& space, const Tolerances& tol) {
  LieBasis image(2);
  for (const auto& v : space.elements()) image.try_add(partial_trace(v, Subsystem::S), tol.rank);
  return image;
}

LieBasis su4_basis() {
  const std::array<ComplexMatrix, 4> local{identity(2), pauli(Axis::x), pauli(Axis::y), pauli(Axis::z)};
  const std::complex<double> i(0, 1);
  LieBasis basis(4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (j == 0 && k == 0) continue;
      ComplexMatrix m = tensor(local[j], local[k]);
      if (j != 0 && k != 0) m *= i;
      basis.try_add(m, 1e-12);
    }
  }
  return basis;
}

LieBasis u4_basis() {
  LieBasis basis = su4_basis();
  basis.try_add(std::complex<double>(0, 1) * identity(4), 1e-12);
  return basis;
}

}  // namespace iqc
