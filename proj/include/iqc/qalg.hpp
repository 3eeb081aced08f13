#pragma once

// Dense complex matrix algebra for one and two qubits: Pauli matrices,
// Kronecker products, brackets, partial traces, exponentials and Bloch
// coordinates. Everything here is header-only and templated on the real
// scalar; the rest of the library instantiates it with double.
//
// Conventions follow the qubit-pair literature this code is built around:
//   tilde Pauli  σ̃x = [[0,1],[1,0]], σ̃y = [[0,i],[-i,0]], σ̃z = diag(1,-1)
//   su(2) basis  σ_j = (i/2) σ̃_j, so that [σx, σy] = σz
//   composite    S ⊗ A, target factor first.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "iqc/errors.hpp"

namespace iqc {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector3 = Eigen::Matrix<Real, 3, 1>;

using ComplexMatrix = CMatrix<double>;
using Vec3 = Eigen::Vector3d;
using Eigen::Index;

/// Numerical thresholds. `eq` compares matrices, `rank` decides every
/// dimension and "is nonzero" question, `state` validates density matrices.
struct Tolerances {
  double eq = 1e-12;
  double rank = 1e-9;
  double state = 1e-10;
};

enum class Axis { x, y, z };
enum class Subsystem { S, A };

template <typename Real = double>
CMatrix<Real> pauli(Axis axis, bool tilde = false) {
  using C = std::complex<Real>;
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  switch (axis) {
    case Axis::x:
      m(0, 1) = C(1, 0);
      m(1, 0) = C(1, 0);
      break;
    case Axis::y:
      m(0, 1) = C(0, 1);
      m(1, 0) = C(0, -1);
      break;
    case Axis::z:
      m(0, 0) = C(1, 0);
      m(1, 1) = C(-1, 0);
      break;
  }
  if (!tilde) m *= C(0, Real(0.5));
  return m;
}

template <typename Real = double>
CMatrix<Real> identity(Index n) {
  return CMatrix<Real>::Identity(n, n);
}

/// σ_a = a_x σ_x + a_y σ_y + a_z σ_z.
template <typename Derived>
CMatrix<typename Derived::Scalar> sigma_from_vec(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::Scalar;
  if (a.size() != 3) throw PreconditionError("sigma_from_vec: expected a 3-vector");
  return pauli<Real>(Axis::x) * a(0) + pauli<Real>(Axis::y) * a(1) + pauli<Real>(Axis::z) * a(2);
}

/// Coefficients v with M = Σ v_j σ_j for a traceless 2x2 M. Real for M in
/// su(2), purely imaginary for traceless Hermitian M.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> su2_coefficients(const Eigen::MatrixBase<Derived>& m) {
  using C = typename Derived::Scalar;
  using Real = typename C::value_type;
  if (m.rows() != 2 || m.cols() != 2) throw PreconditionError("su2_coefficients: expected 2x2");
  Eigen::Matrix<C, 3, 1> v;
  v(0) = C(-2, 0) * (m * pauli<Real>(Axis::x)).trace();
  v(1) = C(-2, 0) * (m * pauli<Real>(Axis::y)).trace();
  v(2) = C(-2, 0) * (m * pauli<Real>(Axis::z)).trace();
  return v;
}

/// Kronecker product, first argument is the S factor.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(const Eigen::MatrixBase<DA>& a,
                                                                          const Eigen::MatrixBase<DB>& b) {
  Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> lhs = a;
  Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> rhs = b;
  return Eigen::kroneckerProduct(lhs, rhs).eval();
}

namespace detail {
template <typename DA, typename DB>
void require_same_square(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b, const char* op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw PreconditionError(std::string(op) + ": dimension mismatch");
}
}  // namespace detail

/// [A, B] = AB - BA.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> commutator(const Eigen::MatrixBase<DA>& a,
                                                                              const Eigen::MatrixBase<DB>& b) {
  detail::require_same_square(a, b, "commutator");
  return a * b - b * a;
}

/// {A, B} = AB + BA.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> anticommutator(const Eigen::MatrixBase<DA>& a,
                                                                                  const Eigen::MatrixBase<DB>& b) {
  detail::require_same_square(a, b, "anticommutator");
  return a * b + b * a;
}

/// Trace out one factor of an (dim_s*dim_a)-dimensional operator laid out as S ⊗ A.
/// `keep` names the factor that survives.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& m, Subsystem keep, Index dim_s = 2, Index dim_a = 2) {
  using Out = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != dim_s * dim_a || m.cols() != dim_s * dim_a)
    throw PreconditionError("partial_trace: operator dimension does not match dim_s * dim_a");
  if (keep == Subsystem::S) {
    Out out = Out::Zero(dim_s, dim_s);
    for (Index i = 0; i < dim_s; ++i)
      for (Index j = 0; j < dim_s; ++j)
        for (Index a = 0; a < dim_a; ++a) out(i, j) += m(i * dim_a + a, j * dim_a + a);
    return out;
  }
  Out out = Out::Zero(dim_a, dim_a);
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_a; ++b)
      for (Index i = 0; i < dim_s; ++i) out(a, b) += m(i * dim_a + a, i * dim_a + b);
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, static_cast<double>(m.cwiseAbs().maxCoeff()));
  return static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff()) <= tol * scale;
}

template <typename Derived>
bool is_skew_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, static_cast<double>(m.cwiseAbs().maxCoeff()));
  return static_cast<double>((m + m.adjoint()).cwiseAbs().maxCoeff()) <= tol * scale;
}

/// ‖U†U - 1‖_F.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& u) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return static_cast<double>((u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).norm());
}

/// Matrix exponential. With `skew_hermitian` set, A must be skew-Hermitian and
/// exp(A) is assembled from the Hermitian eigendecomposition of iA, which keeps
/// the result unitary to rounding. Otherwise scaling and squaring with a
/// 30-term Taylor series.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> mat_exp(const Eigen::MatrixBase<Derived>& a,
                                                                                bool skew_hermitian = true,
                                                                                const Tolerances& tol = {}) {
  using C = typename Derived::Scalar;
  using Real = typename C::value_type;
  using Plain = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw PreconditionError("mat_exp: matrix must be square");
  const Index n = a.rows();

  if (skew_hermitian) {
    if (!is_skew_hermitian(a, std::max(tol.eq, 1e-10)))
      throw PreconditionError("mat_exp: input flagged skew-Hermitian but is not");
    Plain h = C(0, 1) * a;
    h = (h + h.adjoint()) * Real(0.5);
    Eigen::SelfAdjointEigenSolver<Plain> es(h);
    Eigen::Matrix<C, Eigen::Dynamic, 1> phases(n);
    for (Index k = 0; k < n; ++k) phases(k) = std::exp(C(0, -es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }

  const Real norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(norm / Real(0.5))));
  const Plain scaled = a / std::pow(Real(2), squarings);
  Plain term = Plain::Identity(n, n);
  Plain sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (term * scaled) / Real(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

/// Real coordinates of a qubit state, ρ = ½(1 + x σ̃x + y σ̃y + z σ̃z).
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 vec() const { return {x, y, z}; }
};

/// Hermitian, positive semi-definite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho, const Tolerances& tol = {}) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
      throw PreconditionError("DensityMatrix: matrix must be square and nonempty");
    if (!is_hermitian(rho_, tol.state)) throw PreconditionError("DensityMatrix: matrix is not Hermitian");
    if (std::abs(rho_.trace() - std::complex<double>(1, 0)) > tol.state)
      throw PreconditionError("DensityMatrix: trace is not 1");
    if (eigenvalues().minCoeff() < -tol.state)
      throw PreconditionError("DensityMatrix: matrix has a negative eigenvalue");
  }

  static DensityMatrix maximally_mixed(Index n) {
    return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
  }

  /// |ψ⟩⟨ψ| for a (not necessarily normalized) nonzero vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi) {
    const double nrm = psi.norm();
    if (nrm == 0.0) throw PreconditionError("DensityMatrix::pure: zero vector");
    const Eigen::VectorXcd unit = psi / nrm;
    return DensityMatrix(unit * unit.adjoint());
  }

  const ComplexMatrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const {
    const ComplexMatrix h = (rho_ + rho_.adjoint()) * 0.5;
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  }

  double purity() const { return (rho_ * rho_).trace().real(); }
  bool is_pure(double tol = 1e-10) const { return std::abs(eigenvalues().maxCoeff() - 1.0) <= tol; }

 private:
  ComplexMatrix rho_;
};

inline BlochPoint bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw PreconditionError("bloch: expected a 2x2 density matrix");
  const ComplexMatrix& m = rho.matrix();
  return {(m * pauli(Axis::x, true)).trace().real(), (m * pauli(Axis::y, true)).trace().real(),
          (m * pauli(Axis::z, true)).trace().real()};
}

inline DensityMatrix bloch_inverse(const BlochPoint& p, const Tolerances& tol = {}) {
  if (p.norm() > 1.0 + tol.rank) throw PreconditionError("bloch_inverse: point lies outside the unit ball");
  ComplexMatrix m = identity(2) + pauli(Axis::x, true) * p.x + pauli(Axis::y, true) * p.y +
                    pauli(Axis::z, true) * p.z;
  return DensityMatrix(m * 0.5, tol);
}

inline DensityMatrix tensor(const DensityMatrix& s, const DensityMatrix& a) {
  return DensityMatrix(tensor(s.matrix(), a.matrix()));
}

/// U ρ U†.
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * u.adjoint();
}

}  // namespace iqc
