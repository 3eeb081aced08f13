#include "iqc/classify.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace iqc {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

ComplexMatrix one2() { return identity(2); }
ComplexMatrix sx() { return pauli(Axis::x); }
ComplexMatrix sy() { return pauli(Axis::y); }
ComplexMatrix sz() { return pauli(Axis::z); }
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return tensor(a, b); }

bool near_threshold(double q, double tol) { return q > tol * 1e-3 && q < tol * 1e3; }

LieBasis span_of(const std::vector<ComplexMatrix>& mats) {
  LieBasis basis(4);
  for (const auto& m : mats) basis.try_add(m, 1e-12 * std::max(1.0, m.norm()));
  return basis;
}

// Relative distance of `target` from span(mats).
double span_residual(const ComplexMatrix& target, const std::vector<ComplexMatrix>& mats) {
  LieBasis basis(target.rows());
  for (const auto& m : mats) basis.try_add(m, 1e-13 * std::max(1.0, m.norm()));
  return basis.residual(target).norm() / std::max(1.0, target.norm());
}

void require_full(const TwoQubitModel& m, const char* op) {
  if (!m.full_control()) throw PreconditionError(std::string(op) + ": requires full accessor control");
}

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::c1a: return "1a";
    case CaseTag::c1b: return "1b";
    case CaseTag::c1c: return "1c";
    case CaseTag::c2a: return "2a";
    case CaseTag::c2b: return "2b";
    case CaseTag::c2c: return "2c";
  }
  return "?";
}

int predicted_dim(CaseTag tag) {
  switch (tag) {
    case CaseTag::c1a:
    case CaseTag::c2c: return 15;
    case CaseTag::c1b:
    case CaseTag::c2b: return 10;
    case CaseTag::c1c: return 7;
    case CaseTag::c2a: return 6;
  }
  return 0;
}

CaseLabel predict_case(const TwoQubitModel& m, const Tolerances& tol) {
  require_full(m, "predict_case");
  const DFSplit split = df_split(m, tol);
  const double w = std::abs(m.omega_s());
  CaseTag tag;
  bool marginal = near_threshold(w, tol.rank);
  if (w > tol.rank) {
    const double dn = split.d.norm();
    const double fn = split.f.norm();
    marginal = marginal || near_threshold(dn, tol.rank) || near_threshold(fn, tol.rank);
    const bool d = dn > tol.rank;
    const bool f = fn > tol.rank;
    tag = d && f ? CaseTag::c1a : (d ? CaseTag::c1b : CaseTag::c1c);
  } else {
    const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(m.k()).singularValues();
    for (int i = 1; i < 3; ++i) marginal = marginal || near_threshold(sv(i) / sv(0), tol.rank);
    tag = split.rank_k == 1 ? CaseTag::c2a : (split.rank_k == 2 ? CaseTag::c2b : CaseTag::c2c);
  }
  return {tag, predicted_dim(tag), marginal};
}

CrossValidation cross_validate(const TwoQubitModel& m, const Tolerances& tol) {
  const CaseLabel label = predict_case(m, tol);
  const auto gens = generator_set(m);
  const int dim = static_cast<int>(closure(gens, tol).size());
  return {label, dim, dim == label.predicted_dim};
}

bool strong_uic(const TwoQubitModel& m, const Tolerances& tol) {
  require_full(m, "strong_uic");
  const auto gens = generator_set(m);
  return closure(gens, tol).size() == 15;
}

Vec3 case_2a_direction(const TwoQubitModel& m, const Tolerances& tol) {
  if (df_split(m, tol).rank_k != 1) throw PreconditionError("case_2a_direction: K must have rank one");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.k(), Eigen::ComputeFullV);
  Vec3 v = svd.matrixV().col(0);
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  return v;
}

LieBasis case_1b_algebra() {
  std::vector<ComplexMatrix> mats{kron(sz(), one2())};
  for (const auto& s : {sx(), sy(), sz()}) {
    mats.push_back(kron(one2(), s));
    mats.push_back(kI * kron(sx(), s));
    mats.push_back(kI * kron(sy(), s));
  }
  return span_of(mats);
}

LieBasis case_1c_algebra() {
  std::vector<ComplexMatrix> mats{kron(sz(), one2())};
  for (const auto& s : {sx(), sy(), sz()}) {
    mats.push_back(kI * kron(sz(), s));
    mats.push_back(kron(one2(), s));
  }
  return span_of(mats);
}

LieBasis case_2a_algebra(const Vec3& direction) {
  const ComplexMatrix sigma = sigma_from_vec(direction);
  std::vector<ComplexMatrix> mats;
  for (const auto& s : {sx(), sy(), sz()}) {
    mats.push_back(kI * kron(sigma, s));
    mats.push_back(kron(one2(), s));
  }
  return span_of(mats);
}

Oms0NormalForm oms0_normal_form(const TwoQubitModel& m, const Tolerances& tol) {
  if (m.full_control()) throw PreconditionError("oms0_normal_form: requires a single control axis");
  Oms0NormalForm nf;

  // A side: control axis to z, then the perpendicular part of C to +y.
  const Eigen::Matrix3d to_z = Eigen::Quaterniond::FromTwoVectors(m.axis(), Vec3::UnitZ()).toRotationMatrix();
  const Vec3 c1 = to_z * m.c();
  const double phi = std::hypot(c1(0), c1(1)) > 0.0 ? M_PI / 2 - std::atan2(c1(1), c1(0)) : 0.0;
  const Eigen::Matrix3d about_z = Eigen::AngleAxisd(phi, Vec3::UnitZ()).toRotationMatrix();
  nf.rot_a = about_z * to_z;

  // S side: row b along +y, row a inside the x-y plane.
  const Eigen::Matrix3d ka = nf.rot_a * m.k();
  const Vec3 a = ka.row(0).transpose();
  const Vec3 b = ka.row(1).transpose();
  Vec3 ey;
  if (b.norm() > 0.0) {
    ey = b.normalized();
  } else if (a.norm() > 0.0) {
    ey = a.unitOrthogonal();
  } else {
    ey = Vec3::UnitY();
  }
  const Vec3 a_perp = a - a.dot(ey) * ey;
  const Vec3 ex = a_perp.norm() > 0.0 ? Vec3(a_perp.normalized()) : Vec3(ey.unitOrthogonal());
  const Vec3 ez = ex.cross(ey);
  nf.rot_s.row(0) = ex.transpose();
  nf.rot_s.row(1) = ey.transpose();
  nf.rot_s.row(2) = ez.transpose();

  const Eigen::Matrix3d kn = ka * nf.rot_s.transpose();
  const Vec3 cn = nf.rot_a * m.c();
  nf.alpha = kn(0, 0);
  nf.gamma = kn(0, 1);
  nf.beta = kn(1, 1);
  nf.x = kn(2, 0);
  nf.y = kn(2, 1);
  nf.z = kn(2, 2);
  nf.omega_a = cn(1);
  nf.c_parallel = cn(2);
  (void)tol;
  return nf;
}

Oms0Report oms0_check(const TwoQubitModel& m, const Tolerances& tol) {
  if (m.full_control()) throw PreconditionError("oms0_check: requires a single control axis");
  if (std::abs(m.omega_s()) > tol.rank) throw PreconditionError("oms0_check: requires omega_S = 0");

  Oms0Report r;
  r.normal_form = oms0_normal_form(m, tol);
  const Oms0NormalForm& nf = r.normal_form;

  r.det_k = m.k().determinant();
  r.c1 = std::abs(r.det_k) > tol.rank;

  // The perpendicularity test compares an S-side vector with an A-side one,
  // so it is evaluated in the normal-form frame.
  const TwoQubitModel normal = rotated(m, nf.rot_s, nf.rot_a, tol);
  const Hamiltonians h = hamiltonians(normal);
  const ComplexMatrix h_c = -kI * h.control_generators.front();
  const ComplexMatrix m1 = partial_trace(ComplexMatrix(kI * h.h_i * h_c), Subsystem::S);
  const ComplexMatrix m2 = partial_trace(h.h_a, Subsystem::A);
  const ComplexMatrix m3 = partial_trace(h_c, Subsystem::A);
  const Eigen::Vector3cd v1 = su2_coefficients(m1);
  const Eigen::Vector3cd v2 = su2_coefficients(m2);
  const Eigen::Vector3cd v3 = su2_coefficients(m3);
  auto perp = [&](const Eigen::Vector3cd& v) -> Eigen::Vector3cd {
    const double n3 = v3.squaredNorm();
    if (n3 == 0.0) return v;
    return v - (v3.dot(v) / n3) * v3;
  };
  r.c2_magnitude = perp(v1).squaredNorm() + perp(v2).squaredNorm();
  r.c2 = r.c2_magnitude > tol.eq;
  r.cc = r.c1 && r.c2;

  const double det_prime = nf.alpha * nf.beta * nf.z;
  const double c2_prime = nf.omega_a * nf.omega_a + nf.x * nf.x + nf.y * nf.y;
  r.c1_prime = std::abs(det_prime) > tol.rank;
  r.c2_prime = c2_prime > tol.eq;
  r.forms_agree = r.c1 == r.c1_prime && r.c2 == r.c2_prime;
  r.marginal = near_threshold(std::abs(r.det_k), tol.rank) || near_threshold(r.c2_magnitude, tol.eq);
  return r;
}

LieBasis oms0_obstruction_algebra() {
  return span_of({kron(one2(), sz()), kron(sz(), one2()), kI * kron(sy(), sx()), kI * kron(sx(), sy()),
                  kI * kron(sy(), sy()), kI * kron(sx(), sx()), kI * kron(sz(), sz())});
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.residual);
  return m;
}

double IdentityReport::residual(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e.residual;
  throw PreconditionError("IdentityReport: no identity named '" + name + "'");
}

GammaMatrices gamma_matrices(double alpha, double omega_a) {
  const double k = alpha * alpha + 4.0 * omega_a * omega_a;
  if (!(k > 0.0)) throw PreconditionError("gamma_matrices: alpha and omega_A both zero");
  const double r = std::sqrt(k);
  GammaMatrices g;
  for (int idx = 0; idx < 2; ++idx) {
    const double sgn = idx == 0 ? 1.0 : -1.0;
    g.x[idx] = kI * kron(sy(), sx()) + (sgn / r) * (alpha * kI * kron(sx(), sy()) - omega_a * kron(one2(), sx()));
    g.y[idx] = -0.5 * (kron(one2(), sz()) +
                       (sgn / r) * (alpha * kron(sz(), one2()) - 4.0 * omega_a * kI * kron(sy(), sz())));
    g.z[idx] = kI * kron(sy(), sy()) - (sgn / r) * (alpha * kI * kron(sx(), sx()) + omega_a * kron(one2(), sy()));
  }
  return g;
}

std::array<ComplexMatrix, 2> oms0_generators(double alpha, double gamma, double beta, double omega_a) {
  return {kron(one2(), sz()), alpha * kI * kron(sx(), sx()) + gamma * kI * kron(sy(), sx()) +
                                  beta * kI * kron(sy(), sy()) + omega_a * kron(one2(), sy())};
}

IdentityReport gamma_suite(double alpha, double gamma, double beta, double omega_a) {
  if (alpha == 0.0) throw PreconditionError("gamma_suite: alpha must be nonzero");
  const GammaMatrices g = gamma_matrices(alpha, omega_a);
  const double rk = std::sqrt(alpha * alpha + 4.0 * omega_a * omega_a);
  IdentityReport rep;
  auto add = [&](std::string name, const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    rep.entries.push_back({std::move(name), (lhs - rhs).norm()});
  };

  const char* fam[2] = {"+", "-"};
  for (int f = 0; f < 2; ++f) {
    add(std::string("[Gx,Gy]=Gz") + fam[f], commutator(g.x[f], g.y[f]), g.z[f]);
    add(std::string("[Gy,Gz]=Gx") + fam[f], commutator(g.y[f], g.z[f]), g.x[f]);
    add(std::string("[Gz,Gx]=Gy") + fam[f], commutator(g.z[f], g.x[f]), g.y[f]);
  }
  const std::array<const std::array<ComplexMatrix, 2>*, 3> fams{&g.x, &g.y, &g.z};
  const char* axis[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      add(std::string("[G") + axis[i] + "+,G" + axis[j] + "-]=0", commutator((*fams[i])[0], (*fams[j])[1]),
          ComplexMatrix::Zero(4, 4));

  const auto [l1, l2] = oms0_generators(alpha, gamma, beta, omega_a);
  add("L1=-(Gy+ + Gy-)", l1, -(g.y[0] + g.y[1]));
  add("L2 expansion", l2,
      0.5 * (gamma * (g.x[0] + g.x[1]) + rk * (g.z[1] - g.z[0]) + beta * (g.z[0] + g.z[1])));
  const ComplexMatrix dbl = commutator(commutator(l1, l2), l2);
  add("[[L1,L2],L2]", dbl,
      0.25 * ((gamma * gamma + (beta - rk) * (beta - rk)) * g.y[0] +
              (gamma * gamma + (beta + rk) * (beta + rk)) * g.y[1]));
  return rep;
}

IdentityReport appendix_b_suite(double x, double y, double z, double alpha, double omega_a) {
  if (std::abs(std::sqrt(x * x + y * y + z * z) - 1.0) > 1e-9)
    throw PreconditionError("appendix_b_suite: (x, y, z) must be a unit vector");
  const double k = alpha * alpha + 4.0 * omega_a * omega_a;
  if (!(k > 0.0)) throw PreconditionError("appendix_b_suite: alpha and omega_A both zero");
  const double rk = std::sqrt(k);
  const double c = alpha / rk;
  const double s = 2.0 * omega_a / rk;
  const ComplexMatrix sc = sigma_from_vec(Vec3(x, y, z));

  const ComplexMatrix gxm = kI * kron(sy(), sx()) - c * kI * kron(sx(), sy()) + (s / 2) * kron(one2(), sx());
  const ComplexMatrix gzm = kI * kron(sy(), sy()) + c * kI * kron(sx(), sx()) + (s / 2) * kron(one2(), sy());
  const ComplexMatrix zz = kron(one2(), sz());
  const ComplexMatrix aa = c * kron(sz(), one2()) - 2.0 * s * kI * kron(sy(), sz());
  const ComplexMatrix p = kI * kron(sc, sz());

  IdentityReport rep;
  auto add = [&](std::string name, const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    rep.entries.push_back({std::move(name), (lhs - rhs).norm()});
  };

  const ComplexMatrix q1 = kI * c * (y * kron(sx(), sz()) - x * kron(sy(), sz())) +
                           (s / 2) * (z * kron(sx(), one2()) - x * kron(sz(), one2()));
  const ComplexMatrix q2 = -y * kron(one2(), sx()) + c * x * kron(one2(), sy()) - 2.0 * kI * s * kron(sc, sx());
  add("Q1", commutator(p, aa), q1);
  add("Q2", 4.0 * commutator(p, gzm), q2);

  const ComplexMatrix r1 = c * kron(sc, one2());
  const ComplexMatrix r2 = kI * c * c * z * kron(sz(), sz()) + kI * s * s * y * kron(sy(), sz()) -
                           (s * c / 2) * (y * kron(sz(), one2()) + z * kron(sy(), one2()));
  const ComplexMatrix r3 = (c * c * y / 4) * kron(one2(), sy()) - kI * (s * c / 2) * y * kron(sx(), sx()) +
                           (c * x / 4) * kron(one2(), sx()) +
                           kI * (s / 2) * (z * kron(sz(), sy()) + x * kron(sx(), sy()));
  const ComplexMatrix r4 = kI * y * kron(sc, sy()) + kI * c * x * kron(sc, sx()) + (s / 2) * kron(one2(), sy());
  const ComplexMatrix r5 = y * kron(one2(), sy()) + c * x * kron(one2(), sx()) + 2.0 * kI * s * kron(sc, sy());
  const ComplexMatrix r6 = -kI * c * c * x * kron(sx(), sz()) - kI * y * kron(sy(), sz()) +
                           (s * c / 2) * (y * kron(sz(), one2()) - z * kron(sy(), one2()));

  // R1, R2, R6 are stated after rescaling and discarding directions already
  // generated; check the stated matrix lies in span{bracket, known}.
  const std::vector<ComplexMatrix> known{gxm, gzm, zz, aa, p, q1, q2};
  auto obtained = [&](std::string name, const ComplexMatrix& bracket, const ComplexMatrix& stated) {
    std::vector<ComplexMatrix> span{bracket};
    span.insert(span.end(), known.begin(), known.end());
    rep.entries.push_back({std::move(name), span_residual(stated, span)});
  };
  obtained("R1", commutator(q1, p), r1);
  obtained("R2", commutator(q1, aa), r2);
  add("R3", commutator(q1, gzm), r3);
  add("R4", commutator(q2, p), r4);
  add("R5", commutator(q2, zz), r5);
  obtained("R6", commutator(q2, gzm), r6);

  const ComplexMatrix s1 = kI * y * kron(sc, sx()) - kI * c * x * kron(sc, sy()) + (s / 2) * kron(one2(), sx());
  add("S1", commutator(r4, zz), s1);
  add("S1 R4 R5 elimination", 2 * s * c * x * y * s1 - 2 * s * y * y * r4 + (c * c * x * x * y + y * y * y) * r5,
      y * y * (y * y + c * c * x * x - s * s) * kron(one2(), sy()) +
          c * x * y * (c * c * x * x + y * y + s * s) * kron(one2(), sx()));

  // σ_c = σ_z: the extra local term comes straight from [P, Q₂].
  {
    const ComplexMatrix pz = kI * kron(sz(), sz());
    const ComplexMatrix q2z = 4.0 * commutator(pz, gzm);
    add("[P,Q2] axis", commutator(pz, q2z), -(s / 2) * kron(one2(), sy()));
  }

  // Main-text brackets for the γ ≠ 0 branch (Γ^± from the full family).
  const GammaMatrices g = gamma_matrices(alpha, omega_a);
  add("Gz sum with P", commutator(ComplexMatrix(g.z[0] + g.z[1]), p), (y / 2) * kron(one2(), sx()));
  {
    // The y = 0 branch: σ_c projected to the x-z plane and renormalized.
    const double n = std::hypot(x, z);
    const double xp = n > 0.0 ? x / n : 0.0;
    const double zp = n > 0.0 ? z / n : 0.0;
    const ComplexMatrix t = kI * kron(sigma_from_vec(Vec3(xp, 0.0, zp)), sz());
    const ComplexMatrix inner = 8.0 * omega_a * commutator(g.z[0], t) + alpha * xp * (g.z[0] - g.z[1]);
    add("x-z double bracket", commutator(inner, t) / rk,
        2.0 * (xp * xp / 4 + omega_a * omega_a * zp * zp / k) * kron(one2(), sy()));
  }
  return rep;
}

}  // namespace iqc
