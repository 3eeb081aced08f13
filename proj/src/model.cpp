#include "iqc/model.hpp"

#include <Eigen/Geometry>

#include <array>
#include <set>
#include <string>

namespace iqc {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

Vec3 vec3_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string("model: '") + field + "' must be a 3-array");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string("model: '") + field + "' entries must be numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
}

}  // namespace

TwoQubitModel::TwoQubitModel(double omega_s, const Eigen::Matrix3d& k, const Vec3& c, Control control,
                             const Tolerances& tol)
    : omega_s_(omega_s), k_(k), c_(c), control_(std::move(control)) {
  if (!(k_.cwiseAbs().maxCoeff() > tol.rank)) throw PreconditionError("model: interaction matrix K is zero");
  if (auto* ax = std::get_if<AxisControl>(&control_)) {
    const double nrm = ax->n.norm();
    if (!(nrm > tol.rank)) throw PreconditionError("model: control axis is zero");
    ax->n /= nrm;
  }
}

TwoQubitModel TwoQubitModel::ising() {
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  k(1, 1) = 1.0;
  return TwoQubitModel(1.0, k, Vec3::Zero(), FullControl{});
}

const Vec3& TwoQubitModel::axis() const {
  if (const auto* ax = std::get_if<AxisControl>(&control_)) return ax->n;
  throw PreconditionError("model: full control has no single axis");
}

Hamiltonians hamiltonians(const TwoQubitModel& m) {
  const ComplexMatrix one = identity(2);
  const ComplexMatrix sz = pauli(Axis::z);
  const std::array<ComplexMatrix, 3> s{pauli(Axis::x), pauli(Axis::y), pauli(Axis::z)};

  Hamiltonians h;
  // iH = skew generator, so H = -i · generator.
  h.h_s = -kI * m.omega_s() * tensor(sz, one);
  ComplexMatrix ih_i = ComplexMatrix::Zero(4, 4);
  for (int j = 0; j < 3; ++j) ih_i += kI * tensor(sigma_from_vec(Vec3(m.k().row(j).transpose())), s[j]);
  h.h_i = -kI * ih_i;
  h.h_a = -kI * tensor(one, sigma_from_vec(m.c()));

  if (m.full_control()) {
    for (const auto& sj : s) h.control_generators.push_back(tensor(one, sj));
  } else {
    h.control_generators.push_back(tensor(one, sigma_from_vec(m.axis())));
  }
  return h;
}

std::vector<ComplexMatrix> generator_set(const TwoQubitModel& m) {
  Hamiltonians h = hamiltonians(m);
  std::vector<ComplexMatrix> gens;
  gens.reserve(1 + h.control_generators.size());
  gens.push_back(kI * (h.h_s + h.h_i + h.h_a));
  for (auto& g : h.control_generators) gens.push_back(std::move(g));
  return gens;
}

DFSplit df_split(const TwoQubitModel& m, const Tolerances& tol) {
  DFSplit out;
  out.d = m.k().leftCols<2>();
  out.f = m.k().col(2);
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(m.k()).singularValues();
  for (int i = 0; i < 3; ++i)
    if (sv(i) > tol.rank * sv(0)) ++out.rank_k;
  return out;
}

Eigen::Matrix2cd su2_from_rotation(const Eigen::Matrix3d& rotation) {
  const Eigen::AngleAxisd aa(rotation);
  // ad_{σ_k} acts on R³ as k×, so exp(θ σ_k) conjugation is the rotation by θ about k.
  const ComplexMatrix gen = aa.angle() * sigma_from_vec(aa.axis());
  return mat_exp(gen);
}

TwoQubitModel rotated(const TwoQubitModel& m, const Eigen::Matrix3d& rot_s, const Eigen::Matrix3d& rot_a,
                      const Tolerances& tol) {
  if (std::abs(m.omega_s()) > tol.rank && (rot_s * Vec3::UnitZ() - Vec3::UnitZ()).norm() > 1e-12)
    throw PreconditionError("rotated: S rotation must fix the z axis when omega_S != 0");
  const Eigen::Matrix3d k = rot_a * m.k() * rot_s.transpose();
  const Vec3 c = rot_a * m.c();
  if (m.full_control()) return TwoQubitModel(m.omega_s(), k, c, FullControl{}, tol);
  return TwoQubitModel(m.omega_s(), k, c, AxisControl{rot_a * m.axis()}, tol);
}

ComplexMatrix local_unitary(const Eigen::Matrix3d& rot_s, const Eigen::Matrix3d& rot_a) {
  return tensor(su2_from_rotation(rot_s), su2_from_rotation(rot_a));
}

TwoQubitModel model_from_json(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ConfigError("model: expected a JSON object");
  reject_unknown(j, {"omega_S", "K", "C", "control"}, "model");
  for (const char* field : {"omega_S", "K", "C", "control"})
    if (!j.contains(field)) throw ConfigError(std::string("model: missing field '") + field + "'");

  if (!j["omega_S"].is_number()) throw ConfigError("model: 'omega_S' must be a number");
  const double omega_s = j["omega_S"].get<double>();

  const auto& jk = j["K"];
  if (!jk.is_array() || jk.size() != 3) throw ConfigError("model: 'K' must be a 3x3 array");
  Eigen::Matrix3d k;
  for (int r = 0; r < 3; ++r) k.row(r) = vec3_from_json(jk[r], "K").transpose();

  const Vec3 c = vec3_from_json(j["C"], "C");

  const auto& jc = j["control"];
  if (!jc.is_object() || !jc.contains("type") || !jc["type"].is_string())
    throw ConfigError("model: 'control' must be an object with a string 'type'");
  const std::string type = jc["type"].get<std::string>();
  Control control;
  if (type == "full") {
    reject_unknown(jc, {"type"}, "control");
    control = FullControl{};
  } else if (type == "axis") {
    reject_unknown(jc, {"type", "n"}, "control");
    if (!jc.contains("n")) throw ConfigError("control: axis control needs 'n'");
    control = AxisControl{vec3_from_json(jc["n"], "n")};
  } else {
    throw ConfigError("control: unknown type '" + type + "'");
  }
  try {
    return TwoQubitModel(omega_s, k, c, control, tol);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json model_to_json(const TwoQubitModel& m) {
  nlohmann::json j;
  j["omega_S"] = m.omega_s();
  j["K"] = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) j["K"].push_back({m.k()(r, 0), m.k()(r, 1), m.k()(r, 2)});
  j["C"] = {m.c()(0), m.c()(1), m.c()(2)};
  if (m.full_control()) {
    j["control"] = {{"type", "full"}};
  } else {
    j["control"] = {{"type", "axis"}, {"n", {m.axis()(0), m.axis()(1), m.axis()(2)}}};
  }
  return j;
}

}  // namespace iqc
