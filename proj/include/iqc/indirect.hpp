#pragma once

// Indirect-control verdicts and explicit steering constructions for a target
// qubit S driven only through an accessor qubit A.

#include <array>

#include "iqc/lieclosure.hpp"
#include "iqc/qalg.hpp"

namespace iqc {

struct GennegatVerdict {
  int v_dim = 0;
  int trace_image_dim = 0;
  /// trace_image_dim < 4. True rules out unitary steering of S from this
  /// pair of states; false proves nothing.
  bool uic_excluded = false;
};

/// V = smallest ad_L-invariant space through i·ρ_S⊗ρ_A, then Tr_A(V).
/// Throws PreconditionError when ρ_S is maximally mixed.
GennegatVerdict gennegat_test(const LieBasis& algebra, const DensityMatrix& rho_s, const DensityMatrix& rho_a,
                              const Tolerances& tol = {});

/// X = e^{t2 σ_z} e^{t σ_x} e^{t1 σ_z}.
struct EulerAngles {
  double t2 = 0;
  double t = 0;
  double t1 = 0;
};

/// Throws PreconditionError unless X is in SU(2) to 1e-10.
EulerAngles euler_su2(const ComplexMatrix& x);
ComplexMatrix euler_compose(const EulerAngles& e);

/// Generators (σ_z⊗1 scaled by t2, iσ_x⊗σ_z scaled by -2t, σ_z⊗1 scaled by
/// t1) of the three factors of the steering unitary, in application order
/// from the left.
std::array<ComplexMatrix, 3> pure_uic_generators(const ComplexMatrix& x);

/// T = (Z2⊗1)·e^{itσ_x⊗σ_z}·(Z1⊗1) with t = -2θ, so that with A in
/// E1 = diag(1, 0): Tr_A(T ρ_S⊗E1 T†) = X ρ_S X†.
ComplexMatrix pure_uic_steer(const DensityMatrix& rho_s, const ComplexMatrix& x);

/// Same, for an arbitrary pure accessor state: T·(1⊗P) with P ρ_A P† = E1.
ComplexMatrix pure_uic_steer(const DensityMatrix& rho_s, const DensityMatrix& rho_a, const ComplexMatrix& x);

/// Exchanges the two tensor factors.
ComplexMatrix swap_op();

/// Unitary sending |e_j⟩|ψ⟩ to maximally entangled vectors, where e_j is the
/// eigenbasis of ρ_S and ψ_A = |ψ⟩⟨ψ|. The reduced output is ½·1.
ComplexMatrix fic_mix(const DensityMatrix& rho_s, const DensityMatrix& psi_a, const Tolerances& tol = {});

struct FicReach {
  ComplexMatrix u;
  /// Position on the path from SWAP (0) to fic_mix (1).
  double theta = 0;
};

/// U with Tr_A(U ρ_S⊗ψ_A U†) = target. Walks the unitary path
/// exp(θ log(U_mix SWAP†)) SWAP, bisects θ on the largest output eigenvalue,
/// then aligns eigenbases with a unitary on S.
FicReach fic_reach(const DensityMatrix& rho_s, const DensityMatrix& psi_a, const DensityMatrix& target,
                   const Tolerances& tol = {});

/// Reduced state of S after U: Tr_A(U ρ_S⊗ρ_A U†).
ComplexMatrix evolve_reduced(const ComplexMatrix& u, const DensityMatrix& rho_s, const DensityMatrix& rho_a);

}  // namespace iqc
