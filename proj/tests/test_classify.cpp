#include <doctest.h>

#include <random>

#include "iqc/classify.hpp"
#include "support/random_models.hpp"

using namespace iqc;
using iqc::testing::Oms0Draw;

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return tensor(a, b); }

bool same_span(const LieBasis& a, const LieBasis& b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a.elements())
    if (!contains(b, e)) return false;
  return true;
}

LieBasis closure_of(const TwoQubitModel& m) {
  const auto gens = generator_set(m);
  return closure(gens);
}

TwoQubitModel normal_form_model(double alpha, double gamma, double beta, Vec3 c, double omega_a) {
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  k(0, 0) = alpha;
  k(0, 1) = gamma;
  k(1, 1) = beta;
  k.row(2) = c.transpose();
  return TwoQubitModel(0.0, k, Vec3(0, omega_a, 0), AxisControl{Vec3::UnitZ()});
}

}  // namespace

TEST_CASE("predict_case examples") {
  Eigen::Matrix3d k;
  k << 0.3, -0.2, 0.5, 1.0, 0.1, 0.0, 0.0, 0.4, -0.7;
  const CaseLabel a = predict_case(TwoQubitModel(1.0, k, Vec3::Zero(), FullControl{}));
  CHECK(a.tag == CaseTag::c1a);
  CHECK(a.predicted_dim == 15);
  CHECK_FALSE(a.marginal);

  const CaseLabel ising = predict_case(TwoQubitModel::ising());
  CHECK(ising.tag == CaseTag::c1b);
  CHECK(ising.predicted_dim == 10);

  const Eigen::Matrix3d rank1 = Vec3(1, 2, -1) * Vec3(0.5, 0.1, 0.3).transpose();
  const CaseLabel two_a = predict_case(TwoQubitModel(0.0, rank1, Vec3::Zero(), FullControl{}));
  CHECK(two_a.tag == CaseTag::c2a);
  CHECK(two_a.predicted_dim == 6);

  CHECK_THROWS_AS(predict_case(TwoQubitModel(0.0, k, Vec3::Zero(), AxisControl{Vec3::UnitZ()})), PreconditionError);
  CHECK(to_string(CaseTag::c2b) == "2b");
}

TEST_CASE("marginal flag near the rank tolerance") {
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  k(0, 0) = 1.0;
  k(0, 2) = 1e-10;
  const CaseLabel l = predict_case(TwoQubitModel(1.0, k, Vec3::Zero(), FullControl{}));
  CHECK(l.tag == CaseTag::c1b);
  CHECK(l.marginal);
}

TEST_CASE("cross_validate on random draws of every case") {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 6; ++c) {
    const CaseTag tag = static_cast<CaseTag>(c);
    for (int i = 0; i < 40; ++i) {
      const CrossValidation cv = cross_validate(iqc::testing::random_model(tag, rng));
      CHECK(cv.predicted.tag == tag);
      CHECK(cv.agree);
      CHECK(cv.computed_dim == predicted_dim(tag));
    }
  }
}

TEST_CASE("closures match the listed case algebras") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 10; ++i) {
    CHECK(same_span(closure_of(iqc::testing::random_model(CaseTag::c1b, rng)), case_1b_algebra()));
    CHECK(same_span(closure_of(iqc::testing::random_model(CaseTag::c1c, rng)), case_1c_algebra()));
    const TwoQubitModel m = iqc::testing::random_model(CaseTag::c2a, rng);
    const Vec3 dir = case_2a_direction(m);
    CHECK(dir.norm() == doctest::Approx(1.0));
    for (int r = 0; r < 3; ++r) CHECK(m.k().row(r).transpose().cross(dir).norm() < 1e-12);
    CHECK(same_span(closure_of(m), case_2a_algebra(dir)));
  }
  CHECK(case_1b_algebra().size() == 10);
  CHECK(case_1c_algebra().size() == 7);
  CHECK(case_2a_algebra(Vec3::UnitX()).size() == 6);
  CHECK_THROWS_AS(case_2a_direction(TwoQubitModel(0.0, Eigen::Matrix3d::Identity(), Vec3::Zero(), FullControl{})),
                  PreconditionError);
}

TEST_CASE("strong UIC") {
  std::mt19937_64 rng(33);
  CHECK(strong_uic(iqc::testing::random_model(CaseTag::c1a, rng)));
  CHECK_FALSE(strong_uic(iqc::testing::random_model(CaseTag::c1b, rng)));
  CHECK_FALSE(strong_uic(iqc::testing::random_model(CaseTag::c1c, rng)));
  CHECK_THROWS_AS(strong_uic(iqc::testing::random_oms0_model(Oms0Draw::generic, rng)), PreconditionError);
}

TEST_CASE("single-control examples in normal-form coordinates") {
  const Oms0Report full = oms0_check(normal_form_model(1, 0, 1, Vec3(0, 0, 1), 1));
  CHECK(full.c1);
  CHECK(full.c2);
  CHECK(full.cc);
  CHECK(full.forms_agree);
  CHECK(closure_of(normal_form_model(1, 0, 1, Vec3(0, 0, 1), 1)).size() == 15);

  const TwoQubitModel blocked = normal_form_model(1, 0, 1, Vec3(0, 0, 1), 0);
  const Oms0Report r = oms0_check(blocked);
  CHECK(r.c1);
  CHECK_FALSE(r.c2);
  CHECK_FALSE(r.cc);
  const LieBasis l = closure_of(blocked);
  CHECK(l.size() < 15);
  const LieBasis l_prime = oms0_obstruction_algebra();
  CHECK(l_prime.size() == 7);
  for (const auto& e : l.elements()) CHECK(contains(l_prime, e));

  const Oms0Report flat = oms0_check(normal_form_model(1, 0, 1, Vec3(1, 0, 0), 1));
  CHECK_FALSE(flat.c1);
  CHECK_FALSE(flat.cc);
  CHECK(closure_of(normal_form_model(1, 0, 1, Vec3(1, 0, 0), 1)).size() < 15);
}

TEST_CASE("oms0_check preconditions") {
  CHECK_THROWS_AS(oms0_check(TwoQubitModel::ising()), PreconditionError);
  CHECK_THROWS_AS(oms0_check(TwoQubitModel(1.0, Eigen::Matrix3d::Identity(), Vec3::Zero(), AxisControl{Vec3::UnitZ()})),
                  PreconditionError);
}

TEST_CASE("normal form coordinates") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 100; ++i) {
    const TwoQubitModel m = iqc::testing::random_oms0_model(Oms0Draw::generic, rng);
    const Oms0NormalForm nf = oms0_normal_form(m);
    CHECK((nf.rot_s * nf.rot_s.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(nf.rot_s.determinant() == doctest::Approx(1.0));
    const TwoQubitModel n = rotated(m, nf.rot_s, nf.rot_a);
    CHECK((n.axis() - Vec3::UnitZ()).norm() < 1e-12);
    CHECK(std::abs(n.c()(0)) < 1e-12);
    CHECK(n.c()(1) >= -1e-12);
    CHECK(std::abs(n.k()(0, 2)) < 1e-12);
    CHECK(std::abs(n.k()(1, 0)) < 1e-12);
    CHECK(std::abs(n.k()(1, 2)) < 1e-12);
    CHECK(std::abs(n.k()(0, 0) - nf.alpha) < 1e-12);
    CHECK(std::abs(n.k()(2, 2) - nf.z) < 1e-12);

    const Oms0Report r = oms0_check(m);
    CHECK(r.forms_agree);
    CHECK(r.cc == (r.c1 && r.c2));
    // In these coordinates the projected vectors reduce to (x, y)/2 and 2ω_A.
    CHECK(r.c2_magnitude ==
          doctest::Approx((nf.x * nf.x + nf.y * nf.y) / 4 + 4 * nf.omega_a * nf.omega_a).epsilon(1e-10));
    CHECK(std::abs(r.det_k - m.k().determinant()) < 1e-12);
    CHECK(std::abs(nf.alpha * nf.beta * nf.z - r.det_k) < 1e-10);
  }
}

TEST_CASE("single-control equivalence on random draws") {
  std::mt19937_64 rng(35);
  const LieBasis l_prime = oms0_obstruction_algebra();
  for (int i = 0; i < 90; ++i) {
    const TwoQubitModel m = iqc::testing::random_oms0_model(static_cast<Oms0Draw>(i % 3), rng);
    const Oms0Report r = oms0_check(m);
    const LieBasis l = closure_of(m);
    CHECK(r.cc == (l.size() == 15));
    if (!r.c2) {
      const ComplexMatrix u = local_unitary(r.normal_form.rot_s, r.normal_form.rot_a);
      for (const auto& e : l.elements()) CHECK(contains(l_prime, conjugate(u, e)));
    }
  }
}

TEST_CASE("gamma suite") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 100; ++i) {
    const double alpha = iqc::testing::signed_mag(rng, 0.1, 1.0);
    const IdentityReport rep = gamma_suite(alpha, iqc::testing::uniform(rng, -1, 1), iqc::testing::uniform(rng, -1, 1),
                                           iqc::testing::uniform(rng, -1, 1));
    CHECK(rep.entries.size() == 18);
    CHECK(rep.max_residual() < 1e-12);
  }
  CHECK_THROWS_AS(gamma_suite(0.0, 1.0, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(gamma_suite(1.0, 1.0, 1.0, 1.0).residual("no such identity"), PreconditionError);
}

TEST_CASE("subalgebras generated by L1 and L2") {
  const double alpha = 0.6, omega_a = -0.35;
  const double rk = std::sqrt(alpha * alpha + 4 * omega_a * omega_a);
  const GammaMatrices g = gamma_matrices(alpha, omega_a);

  const auto plus_branch = oms0_generators(alpha, 0.0, rk, omega_a);
  const LieBasis lp = closure(plus_branch);
  CHECK(lp.size() == 4);
  for (const auto& m : {g.x[1], g.y[1], g.z[1], g.y[0]}) CHECK(contains(lp, m));

  // β → -β swaps the roles of the two families.
  const auto minus_branch = oms0_generators(alpha, 0.0, -rk, omega_a);
  const LieBasis lm = closure(minus_branch);
  CHECK(lm.size() == 4);
  for (const auto& m : {g.x[0], g.y[0], g.z[0], g.y[1]}) CHECK(contains(lm, m));

  const auto generic = oms0_generators(alpha, 0.3, 0.8, omega_a);
  CHECK(closure(generic).size() == 6);
}

TEST_CASE("appendix bracket suite") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const Vec3 c = iqc::testing::unit_vec(rng);
    const IdentityReport rep = appendix_b_suite(c(0), c(1), c(2), iqc::testing::signed_mag(rng, 0.1, 1.0),
                                                iqc::testing::uniform(rng, -1, 1));
    CHECK(rep.max_residual() < 1e-12);
  }
  // ω_A alone also defines c and s.
  CHECK(appendix_b_suite(0, 0, 1, 0.0, 0.7).max_residual() < 1e-12);
  CHECK_THROWS_AS(appendix_b_suite(1, 1, 0, 1, 1), PreconditionError);
  CHECK_THROWS_AS(appendix_b_suite(0, 0, 1, 0, 0), PreconditionError);
}

TEST_CASE("local terms: corrected coefficients are exact factors of two") {
  const double x = 0.48, y = 0.6, z = 0.64;
  const double alpha = 0.7, omega_a = 0.25;
  const double k = alpha * alpha + 4 * omega_a * omega_a;
  const GammaMatrices g = gamma_matrices(alpha, omega_a);
  const ComplexMatrix t = kI * kron(sigma_from_vec(Vec3(x, y, z)), pauli(Axis::z));
  const ComplexMatrix br = commutator(ComplexMatrix(g.z[0] + g.z[1]), t);
  const ComplexMatrix unit = kron(identity(2), pauli(Axis::x));
  // Coefficient of 1⊗σ_x read off by projection.
  const double coeff = real_inner(unit, br) / real_inner(unit, unit);
  CHECK(coeff == doctest::Approx(y / 2));
  CHECK((br - coeff * unit).norm() < 1e-14);

  const double xp = 0.6, zp = 0.8;
  const ComplexMatrix t0 = kI * kron(sigma_from_vec(Vec3(xp, 0, zp)), pauli(Axis::z));
  const ComplexMatrix inner = 8 * omega_a * commutator(g.z[0], t0) + alpha * xp * (g.z[0] - g.z[1]);
  const ComplexMatrix lhs = commutator(inner, t0) / std::sqrt(k);
  const ComplexMatrix uy = kron(identity(2), pauli(Axis::y));
  const double cy = real_inner(uy, lhs) / real_inner(uy, uy);
  CHECK(cy == doctest::Approx(2 * (xp * xp / 4 + omega_a * omega_a * zp * zp / k)));
  CHECK((lhs - cy * uy).norm() < 1e-14);
}

TEST_CASE("extra local term for a pure z coupling") {
  const double alpha = 0.3, omega_a = 0.9;
  const double s = 2 * omega_a / std::sqrt(alpha * alpha + 4 * omega_a * omega_a);
  const IdentityReport rep = appendix_b_suite(0, 0, 1, alpha, omega_a);
  CHECK(rep.residual("[P,Q2] axis") < 1e-14);
  const double c = alpha / std::sqrt(alpha * alpha + 4 * omega_a * omega_a);
  const ComplexMatrix p = kI * kron(pauli(Axis::z), pauli(Axis::z));
  const ComplexMatrix gzm = kI * kron(pauli(Axis::y), pauli(Axis::y)) + c * kI * kron(pauli(Axis::x), pauli(Axis::x)) +
                            (s / 2) * kron(identity(2), pauli(Axis::y));
  const ComplexMatrix q2 = 4.0 * commutator(p, gzm);
  CHECK((commutator(p, q2) + (s / 2) * kron(identity(2), pauli(Axis::y))).norm() < 1e-14);
}
