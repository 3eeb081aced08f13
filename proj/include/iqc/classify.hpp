#pragma once

// Classification of the dynamical Lie algebra of the two-qubit model and the
// identity suites behind the single-control complete-controllability test.

#include <array>
#include <string>
#include <vector>

#include "iqc/lieclosure.hpp"
#include "iqc/model.hpp"

namespace iqc {

// ---------------------------------------------------------------------------
// Full control (dim B = 3)
// ---------------------------------------------------------------------------

enum class CaseTag { c1a, c1b, c1c, c2a, c2b, c2c };

std::string to_string(CaseTag tag);
/// 1a→15, 1b→10, 1c→7, 2a→6, 2b→10, 2c→15.
int predicted_dim(CaseTag tag);

struct CaseLabel {
  CaseTag tag;
  int predicted_dim;
  /// Some nonzero test (ω_S, D, F, singular values of K) landed within three
  /// decades of the rank tolerance.
  bool marginal = false;
};

/// Branch on ω_S ≠ 0, D ≠ 0, F ≠ 0 and rank K. Full control only.
CaseLabel predict_case(const TwoQubitModel& m, const Tolerances& tol = {});

struct CrossValidation {
  CaseLabel predicted;
  int computed_dim;
  bool agree;
};

/// Predicted case against the numeric closure of generator_set(m).
CrossValidation cross_validate(const TwoQubitModel& m, const Tolerances& tol = {});

/// Strong UIC holds iff the system is completely controllable (dim L = 15).
bool strong_uic(const TwoQubitModel& m, const Tolerances& tol = {});

/// Rank-one K: unit σ with every row of K a multiple of it. Sign chosen so the
/// largest-magnitude component is positive.
Vec3 case_2a_direction(const TwoQubitModel& m, const Tolerances& tol = {});

/// span{σ_z⊗1, 1⊗su(2), i(σ_x, σ_y)⊗su(2)}, 10-dimensional.
LieBasis case_1b_algebra();
/// span{iσ_z⊗su(2), σ_z⊗1, 1⊗su(2)}, 7-dimensional.
LieBasis case_1c_algebra();
/// span{iσ⊗su(2), 1⊗su(2)} for σ = σ_direction, 6-dimensional.
LieBasis case_2a_algebra(const Vec3& direction);

// ---------------------------------------------------------------------------
// Single control (dim B = 1), ω_S = 0
// ---------------------------------------------------------------------------

/// Coordinates of the model after the local change that puts the control on
/// 1⊗σ_z, the accessor drift (perpendicular part) on ω_A 1⊗σ_y, σ_b = β σ_y
/// and σ_a = α σ_x + γ σ_y. σ_c = x σ_x + y σ_y + z σ_z.
struct Oms0NormalForm {
  double alpha = 0, beta = 0, gamma = 0;
  double x = 0, y = 0, z = 0;
  double omega_a = 0;
  /// Accessor drift along the control axis (absorbed by the control).
  double c_parallel = 0;
  Eigen::Matrix3d rot_s = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rot_a = Eigen::Matrix3d::Identity();
};

Oms0NormalForm oms0_normal_form(const TwoQubitModel& m, const Tolerances& tol = {});

struct Oms0Report {
  bool c1 = false;  // det K ≠ 0
  bool c2 = false;  // perpendicular components not both zero
  bool cc = false;  // c1 && c2
  double det_k = 0;
  /// ‖P₁‖² + ‖P₂‖² of the su(2) coefficient vectors of Tr_A(iH_I H_C) and
  /// Tr_S(H_A) projected perpendicular to Tr_S(H_C).
  double c2_magnitude = 0;
  /// Same conditions read off the normal-form coordinates: αβz ≠ 0 and
  /// ω_A² + x² + y² ≠ 0.
  bool c1_prime = false;
  bool c2_prime = false;
  bool forms_agree = false;
  bool marginal = false;
  Oms0NormalForm normal_form;
};

/// Requires axis control and ω_S = 0.
Oms0Report oms0_check(const TwoQubitModel& m, const Tolerances& tol = {});

/// span{1⊗σ_z, σ_z⊗1, iσ_y⊗σ_x, iσ_x⊗σ_y, iσ_y⊗σ_y, iσ_x⊗σ_x, iσ_z⊗σ_z}:
/// the 7-dim algebra containing the normal-form generators when C2 fails.
LieBasis oms0_obstruction_algebra();

// ---------------------------------------------------------------------------
// Identity suites
// ---------------------------------------------------------------------------

struct IdentityResidual {
  std::string name;
  double residual;
};

struct IdentityReport {
  std::vector<IdentityResidual> entries;
  double max_residual() const;
  double residual(const std::string& name) const;
};

/// Γ^±_{x,y,z} for k = α² + 4ω_A². Index 0 is the + family, 1 the − family.
struct GammaMatrices {
  std::array<ComplexMatrix, 2> x, y, z;
};

GammaMatrices gamma_matrices(double alpha, double omega_a);

/// L₁ = 1⊗σ_z and L₂ = iα σ_x⊗σ_x + iγ σ_y⊗σ_x + iβ σ_y⊗σ_y + ω_A 1⊗σ_y.
std::array<ComplexMatrix, 2> oms0_generators(double alpha, double gamma, double beta, double omega_a);

/// su(2) tables of both Γ families (6), [Γ⁺, Γ⁻] = 0 (9), the expansions of
/// L₁ and L₂, and the double bracket [[L₁,L₂],L₂]. Requires α ≠ 0.
IdentityReport gamma_suite(double alpha, double gamma, double beta, double omega_a);

/// Bracket identities of the γ = 0, β = √k branch with P = iσ_c⊗σ_z, plus
/// the two main-text brackets that produce the missing local terms.
/// (x, y, z) must be a unit vector and (α, ω_A) not both zero.
///
/// Two coefficients differ from the commonly quoted forms: the bracket
/// [(Γz⁺ + Γz⁻), T] equals (y/2)·1⊗σ_x and the combined bracket with
/// 8ω_A[Γz⁺,T] equals 2(x²/4 + ω_A² z²/k)·1⊗σ_y. Only the direction is
/// needed by the controllability argument.
IdentityReport appendix_b_suite(double x, double y, double z, double alpha, double omega_a);

}  // namespace iqc
