#pragma once

// Two-qubit indirect-control model: target S with drift ω_S σ_z ⊗ 1, accessor
// A with drift 1 ⊗ σ_C, coupling Σ_j iσ_{row_j(K)} ⊗ σ_j and controls acting on
// A only.

#include <variant>
#include <vector>

#include <json.hpp>

#include "iqc/qalg.hpp"

namespace iqc {

/// Controls span all of 1 ⊗ su(2).
struct FullControl {};

/// One control direction 1 ⊗ σ_n (n stored unit length).
struct AxisControl {
  Vec3 n;
};

using Control = std::variant<FullControl, AxisControl>;

class TwoQubitModel {
 public:
  /// Throws PreconditionError when K vanishes (no interaction) or the control
  /// axis is zero.
  TwoQubitModel(double omega_s, const Eigen::Matrix3d& k, const Vec3& c, Control control,
                const Tolerances& tol = {});

  /// ω_S = 1, H_I = σ_y ⊗ σ_y, no accessor drift, full control.
  static TwoQubitModel ising();

  double omega_s() const { return omega_s_; }
  /// Rows a, b, c: the S-side vectors coupled to σ_x, σ_y, σ_z of A.
  const Eigen::Matrix3d& k() const { return k_; }
  const Vec3& c() const { return c_; }
  const Control& control() const { return control_; }
  bool full_control() const { return std::holds_alternative<FullControl>(control_); }
  /// Control axis; throws for full control.
  const Vec3& axis() const;

 private:
  double omega_s_;
  Eigen::Matrix3d k_;
  Vec3 c_;
  Control control_;
};

/// Hermitian Hamiltonians plus the skew-Hermitian control directions i·1⊗L_k.
struct Hamiltonians {
  ComplexMatrix h_s;
  ComplexMatrix h_i;
  ComplexMatrix h_a;
  std::vector<ComplexMatrix> control_generators;
};

Hamiltonians hamiltonians(const TwoQubitModel& m);

/// Drift i(H_S + H_I + H_A) first, then the control directions.
std::vector<ComplexMatrix> generator_set(const TwoQubitModel& m);

struct DFSplit {
  Eigen::Matrix<double, 3, 2> d;
  Vec3 f;
  int rank_k = 0;
};

/// K = (D F); rank counts singular values above tol.rank * σ_max.
DFSplit df_split(const TwoQubitModel& m, const Tolerances& tol = {});

/// SU(2) element U with U σ_v U† = σ_{R v}.
Eigen::Matrix2cd su2_from_rotation(const Eigen::Matrix3d& rotation);

/// Local change of coordinates: rotation `rot_s` on S and `rot_a` on A.
/// K → R_A K R_Sᵀ, C → R_A C, n → R_A n. The S drift is pinned to σ_z, so
/// `rot_s` must fix the z axis unless ω_S = 0.
TwoQubitModel rotated(const TwoQubitModel& m, const Eigen::Matrix3d& rot_s, const Eigen::Matrix3d& rot_a,
                      const Tolerances& tol = {});

/// The matching 4x4 unitary U_S ⊗ U_A.
ComplexMatrix local_unitary(const Eigen::Matrix3d& rot_s, const Eigen::Matrix3d& rot_a);

/// Model file schema:
///   {"omega_S": number, "K": [[3],[3],[3]], "C": [3],
///    "control": {"type": "full"} | {"type": "axis", "n": [3]}}
/// Unknown fields are rejected with ConfigError.
TwoQubitModel model_from_json(const nlohmann::json& j, const Tolerances& tol = {});
nlohmann::json model_to_json(const TwoQubitModel& m);

}  // namespace iqc
