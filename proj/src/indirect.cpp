#include "iqc/indirect.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace iqc {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);
constexpr double kSu2Tol = 1e-10;

void require_su2(const ComplexMatrix& x, const char* op) {
  if (x.rows() != 2 || x.cols() != 2) throw PreconditionError(std::string(op) + ": expected a 2x2 matrix");
  if (unitarity_residual(x) > kSu2Tol) throw PreconditionError(std::string(op) + ": matrix is not unitary");
  if (std::abs(x.determinant() - 1.0) > kSu2Tol) throw PreconditionError(std::string(op) + ": determinant is not 1");
}

void require_pure(const DensityMatrix& psi, const Tolerances& tol, const char* op) {
  if (psi.dim() != 2) throw PreconditionError(std::string(op) + ": accessor must be a qubit");
  if (!psi.is_pure(tol.state)) throw PreconditionError(std::string(op) + ": accessor state is not pure");
}

Eigen::Vector2cd dominant_vector(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  return es.eigenvectors().col(1);
}

double largest_eigenvalue(const ComplexMatrix& rho) {
  const ComplexMatrix h = (rho + rho.adjoint()) * 0.5;
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

ComplexMatrix unitary_log(const ComplexMatrix& u) {
  // Unitaries are normal, so the Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& q = schur.matrixU();
  Eigen::VectorXcd phases(u.rows());
  for (Index k = 0; k < u.rows(); ++k) phases(k) = kI * std::arg(schur.matrixT()(k, k));
  ComplexMatrix l = q * phases.asDiagonal() * q.adjoint();
  return (l - l.adjoint()) * 0.5;
}

}  // namespace

GennegatVerdict gennegat_test(const LieBasis& algebra, const DensityMatrix& rho_s, const DensityMatrix& rho_a,
                              const Tolerances& tol) {
  if (rho_s.dim() != 2 || rho_a.dim() != 2) throw PreconditionError("gennegat_test: expected qubit states");
  if ((rho_s.matrix() - 0.5 * identity(2)).norm() <= tol.state)
    throw PreconditionError("gennegat_test: rho_S is maximally mixed");
  const ComplexMatrix seed = kI * tensor(rho_s.matrix(), rho_a.matrix());
  const LieBasis v = invariant_space(algebra, seed, tol);
  GennegatVerdict out;
  out.v_dim = static_cast<int>(v.size());
  out.trace_image_dim = static_cast<int>(trace_a_image(v, tol).size());
  out.uic_excluded = out.trace_image_dim < 4;
  return out;
}

EulerAngles euler_su2(const ComplexMatrix& x) {
  require_su2(x, "euler_su2");
  const std::complex<double> a = x(0, 0);
  const std::complex<double> b = x(0, 1);
  EulerAngles e;
  e.t = 2.0 * std::atan2(std::abs(b), std::abs(a));
  // Z2 X_t Z1 has (0,0) = e^{i(t1+t2)/2} cos(t/2) and (0,1) = i e^{i(t2-t1)/2} sin(t/2).
  const double sum = std::abs(a) > 1e-14 ? 2.0 * std::arg(a) : 0.0;
  const double diff = std::abs(b) > 1e-14 ? 2.0 * (std::arg(b) - M_PI / 2) : 0.0;
  e.t2 = 0.5 * (sum + diff);
  e.t1 = 0.5 * (sum - diff);
  return e;
}

ComplexMatrix euler_compose(const EulerAngles& e) {
  const ComplexMatrix sx = pauli(Axis::x);
  const ComplexMatrix sz = pauli(Axis::z);
  return mat_exp(ComplexMatrix(e.t2 * sz)) * mat_exp(ComplexMatrix(e.t * sx)) * mat_exp(ComplexMatrix(e.t1 * sz));
}

std::array<ComplexMatrix, 3> pure_uic_generators(const ComplexMatrix& x) {
  const EulerAngles e = euler_su2(x);
  const ComplexMatrix one = identity(2);
  const ComplexMatrix szs = tensor(pauli(Axis::z), one);
  const ComplexMatrix ixz = kI * tensor(pauli(Axis::x), pauli(Axis::z));
  return {e.t2 * szs, (-2.0 * e.t) * ixz, e.t1 * szs};
}

ComplexMatrix pure_uic_steer(const DensityMatrix& rho_s, const ComplexMatrix& x) {
  if (rho_s.dim() != 2) throw PreconditionError("pure_uic_steer: rho_S must be a qubit state");
  const auto gens = pure_uic_generators(x);
  return mat_exp(gens[0]) * mat_exp(gens[1]) * mat_exp(gens[2]);
}

ComplexMatrix pure_uic_steer(const DensityMatrix& rho_s, const DensityMatrix& rho_a, const ComplexMatrix& x) {
  require_pure(rho_a, {}, "pure_uic_steer");
  const Eigen::Vector2cd psi = dominant_vector(rho_a);
  // P maps ψ to |0⟩ and its complement to |1⟩.
  ComplexMatrix p(2, 2);
  p.row(0) = psi.adjoint();
  p.row(1) = Eigen::Vector2cd(-std::conj(psi(1)), std::conj(psi(0))).adjoint();
  return pure_uic_steer(rho_s, x) * tensor(identity(2), p);
}

ComplexMatrix swap_op() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  for (Index i = 0; i < 2; ++i)
    for (Index a = 0; a < 2; ++a) s(a * 2 + i, i * 2 + a) = 1.0;
  return s;
}

ComplexMatrix evolve_reduced(const ComplexMatrix& u, const DensityMatrix& rho_s, const DensityMatrix& rho_a) {
  return partial_trace(conjugate(u, tensor(rho_s.matrix(), rho_a.matrix())), Subsystem::S);
}

ComplexMatrix fic_mix(const DensityMatrix& rho_s, const DensityMatrix& psi_a, const Tolerances& tol) {
  if (rho_s.dim() != 2) throw PreconditionError("fic_mix: rho_S must be a qubit state");
  require_pure(psi_a, tol, "fic_mix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_s.matrix());
  const ComplexMatrix e = es.eigenvectors();
  const Eigen::Vector2cd psi = dominant_vector(psi_a);
  const Eigen::Vector2cd perp(-std::conj(psi(1)), std::conj(psi(0)));

  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd bell;
  bell.col(0) << r, 0, 0, r;   // Φ+
  bell.col(1) << 0, r, -r, 0;  // Ψ-
  bell.col(2) << r, 0, 0, -r;  // Φ-
  bell.col(3) << 0, r, r, 0;   // Ψ+

  Eigen::Matrix4cd in;
  in.col(0) = tensor(e.col(0), psi);
  in.col(1) = tensor(e.col(1), psi);
  in.col(2) = tensor(e.col(0), perp);
  in.col(3) = tensor(e.col(1), perp);
  return bell * in.adjoint();
}

FicReach fic_reach(const DensityMatrix& rho_s, const DensityMatrix& psi_a, const DensityMatrix& target,
                   const Tolerances& tol) {
  if (rho_s.dim() != 2 || target.dim() != 2) throw PreconditionError("fic_reach: expected qubit states");
  require_pure(psi_a, tol, "fic_reach");

  const ComplexMatrix swap = swap_op();
  const ComplexMatrix log_path = unitary_log(ComplexMatrix(fic_mix(rho_s, psi_a, tol) * swap.adjoint()));
  auto path = [&](double theta) -> ComplexMatrix { return mat_exp(ComplexMatrix(theta * log_path)) * swap; };
  auto lambda_at = [&](double theta) { return largest_eigenvalue(evolve_reduced(path(theta), rho_s, psi_a)); };

  const double want = target.eigenvalues().maxCoeff();
  double lo = 0.0;
  double hi = 1.0;
  double f_lo = lambda_at(lo) - want;
  double f_hi = lambda_at(hi) - want;
  double theta;
  if (std::abs(f_lo) <= 1e-14) {
    theta = lo;
  } else if (std::abs(f_hi) <= 1e-14) {
    theta = hi;
  } else {
    if (f_lo * f_hi > 0.0) throw PreconditionError("fic_reach: bisection does not bracket the target spectrum");
    theta = 0.5;
    for (int it = 0; it < 200; ++it) {
      theta = 0.5 * (lo + hi);
      const double f = lambda_at(theta) - want;
      if (std::abs(f) <= 1e-13 || hi - lo < 1e-16) break;
      if ((f > 0.0) == (f_lo > 0.0)) {
        lo = theta;
        f_lo = f;
      } else {
        hi = theta;
      }
    }
  }

  const ComplexMatrix u_theta = path(theta);
  const ComplexMatrix reached = evolve_reduced(u_theta, rho_s, psi_a);
  ComplexMatrix w = identity(2);
  if ((reached - target.matrix()).norm() > 1e-14) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_reached((reached + reached.adjoint()) * 0.5);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_target(target.matrix());
    w = es_target.eigenvectors() * es_reached.eigenvectors().adjoint();
  }
  return {tensor(w, identity(2)) * u_theta, theta};
}

}  // namespace iqc
