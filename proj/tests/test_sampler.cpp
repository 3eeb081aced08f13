#include <doctest.h>

#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "iqc/sampler.hpp"
#include "support/random_models.hpp"

using namespace iqc;

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

SampleConfig cfg_of(double sx, double sz, double az, std::size_t n = 729, std::uint64_t seed = 5) {
  SampleConfig c;
  c.s_x = sx;
  c.s_z = sz;
  c.a_z = az;
  c.n = n;
  c.seed = seed;
  return c;
}

// Six-factor product built straight from the angles with the series exponential.
ComplexMatrix product_oracle(const KakAngles& k) {
  const ComplexMatrix one = identity(2);
  const ComplexMatrix sx = pauli(Axis::x), sz = pauli(Axis::z);
  auto e = [](const ComplexMatrix& a) { return mat_exp(a, false); };
  return e(kI * k.t3 * tensor(sx, sz)) * e(k.t4 * tensor(sz, one)) * e(k.a1 * tensor(one, sx)) *
         e(kI * k.a2 * tensor(sx, sx)) * e(k.s1 * tensor(sz, one)) * e(kI * k.s2 * tensor(sx, sz));
}

}  // namespace

TEST_CASE("closed form of Y") {
  CHECK((y_closed_form(Alphas{}) - identity(4)).norm() < 1e-15);

  const double a1 = 0.37;
  const ComplexMatrix single = y_closed_form(Alphas{a1, 0, 0, 0, 0, 0});
  const ComplexMatrix expected =
      std::cos(a1) * identity(4) + kI * std::sin(a1) * tensor(pauli(Axis::x, true), pauli(Axis::z, true));
  CHECK((single - expected).norm() < 1e-15);

  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    KakAngles k;
    for (double* v : {&k.t3, &k.t4, &k.a1, &k.a2, &k.s1, &k.s2}) *v = iqc::testing::uniform(rng, 0, 4 * M_PI);
    const Alphas a = alphas_from_angles(k);
    const ComplexMatrix y = y_closed_form(a);
    CHECK(unitarity_residual(y) < 1e-12);
    CHECK((y - product_oracle(k)).norm() < 1e-12);
    CHECK((y - y_product(a)).norm() < 1e-12);
  }
}

TEST_CASE("each Y factor alone") {
  for (int j = 0; j < 6; ++j) {
    Alphas a{};
    a[j] = 0.9;
    CHECK((y_closed_form(a) - y_product(a)).norm() < 1e-13);
  }
}

TEST_CASE("reachable points") {
  const SampleConfig c = cfg_of(0.3, 0.6, 0.5);
  const BlochPoint p = reachable_point(c, Alphas{}, 0, 0, 0);
  CHECK(p.x == doctest::Approx(0.3));
  CHECK(std::abs(p.y) < 1e-15);
  CHECK(p.z == doctest::Approx(0.6));

  // Varying t1 sweeps a circle of constant z.
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    Alphas a;
    for (double& v : a) v = iqc::testing::uniform(rng, -3, 3);
    const double s3 = iqc::testing::uniform(rng, 0, 6), s4 = iqc::testing::uniform(rng, 0, 6);
    const BlochPoint base = reachable_point(c, a, 0, s3, s4);
    for (double t1 : {0.4, 1.7, 3.9}) {
      const BlochPoint q = reachable_point(c, a, t1, s3, s4);
      CHECK(q.z == doctest::Approx(base.z).epsilon(1e-12));
      CHECK(std::hypot(q.x, q.y) == doctest::Approx(std::hypot(base.x, base.y)).epsilon(1e-12));
      // e^{tσ_z} rotates the Bloch vector by t about z.
      CHECK(q.x == doctest::Approx(std::cos(t1) * base.x - std::sin(t1) * base.y).epsilon(1e-10));
    }
  }
}

TEST_CASE("reachable-set geometry") {
  double z_plain = 0, x_plain = 0, z_biased = 0, x_biased = 0, all = 0;
  for (const auto& p : sample(cfg_of(0, 0.5, 0))) z_plain = std::max({z_plain, std::abs(p.x), std::abs(p.y)});
  for (const auto& p : sample(cfg_of(0.5, 0, 0))) x_plain = std::max(x_plain, std::abs(p.z));
  for (const auto& p : sample(cfg_of(0, 0.5, 1))) {
    z_biased = std::max(z_biased, p.norm());
    all = std::max(all, p.norm());
  }
  for (const auto& p : sample(cfg_of(0.5, 0, 1))) {
    x_biased = std::max(x_biased, p.norm());
    all = std::max(all, p.norm());
  }
  CHECK(z_plain < 1e-10);
  CHECK(x_plain < 1e-10);
  CHECK(z_biased > 0.5 + 1e-6);
  CHECK(x_biased > 0.5 + 1e-6);
  CHECK(all <= 1.0 + 1e-9);
}

TEST_CASE("sampling is deterministic in (seed, index)") {
  const auto a = sample(cfg_of(0.2, 0.3, 0.9, 50, 7));
  const auto b = sample(cfg_of(0.2, 0.3, 0.9, 50, 7));
  const auto c = sample(cfg_of(0.2, 0.3, 0.9, 50, 8));
  const auto prefix = sample(cfg_of(0.2, 0.3, 0.9, 10, 7));
  REQUIRE(a.size() == 50);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].z == b[i].z);
    differs = differs || a[i].x != c[i].x;
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(prefix[i].y == a[i].y);
  CHECK(differs);
}

TEST_CASE("angle ranges and grid mode") {
  SampleConfig c = cfg_of(0.1, 0.2, 0.3, 64);
  for (auto& r : c.ranges) r = {1.0, 1.5};
  for (std::size_t i = 0; i < 64; ++i) {
    const KakAngles k = draw_angles(c, i);
    for (double v : {k.t3, k.t4, k.a1, k.a2, k.s1, k.s2, k.t1, k.s3, k.s4}) {
      CHECK(v >= 1.0);
      CHECK(v < 1.5);
    }
  }
  c.mode = SampleMode::grid;
  CHECK(sample(c).size() == 64);
  const KakAngles first = draw_angles(c, 0), second = draw_angles(c, 1);
  CHECK(first.t3 == 1.0);
  CHECK(second.t3 == doctest::Approx(1.25));
  CHECK(second.t4 == 1.0);
  c.n = 100;
  CHECK_THROWS_AS(sample(c), PreconditionError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(sample(cfg_of(0.9, 0.9, 0)), PreconditionError);
  CHECK_THROWS_AS(sample(cfg_of(0, 0, 1.5)), PreconditionError);
  CHECK_THROWS_AS(sample(cfg_of(0, 0, 0, 0)), PreconditionError);
  SampleConfig c = cfg_of(0, 0.5, 0, 5);
  c.ranges[3] = {2.0, 1.0};
  CHECK_THROWS_AS(sample(c), PreconditionError);
  c.ranges[3] = {0.0, 1.0};
  c.verify = true;
  CHECK(sample(c).size() == 5);
}

TEST_CASE("csv output") {
  std::ostringstream empty;
  emit_csv({}, empty);
  CHECK(empty.str() == "x,y,z\n");

  std::ostringstream one;
  emit_csv({{0, 0, 0.5}}, one);
  CHECK(one.str() == "x,y,z\n0,0,0.5\n");

  std::ostringstream seeded;
  const std::uint64_t seed = 42;
  emit_csv({{0.1, 0.2, 0.3}}, seeded, &seed);
  CHECK(seeded.str().rfind("# seed=42\nx,y,z\n", 0) == 0);
  CHECK(seeded.str().find('\r') == std::string::npos);

  const auto points = sample(cfg_of(0.4, 0.1, -0.6, 100, 3));
  std::ostringstream out;
  emit_csv(points, out, &seed);
  std::istringstream in(out.str());
  const auto back = parse_csv(in);
  REQUIRE(back.size() == points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(std::memcmp(&back[i].x, &points[i].x, sizeof(double)) == 0);
    CHECK(std::memcmp(&back[i].y, &points[i].y, sizeof(double)) == 0);
    CHECK(std::memcmp(&back[i].z, &points[i].z, sizeof(double)) == 0);
  }

  CHECK_THROWS_AS(emit_csv(points, std::filesystem::path("/nonexistent-dir/out.csv")), ConfigError);
  std::istringstream bad_header("a,b,c\n1,2,3\n");
  CHECK_THROWS_AS(parse_csv(bad_header), ConfigError);
  std::istringstream bad_row("x,y,z\n1,2\n");
  CHECK_THROWS_AS(parse_csv(bad_row), ConfigError);
}

TEST_CASE("csv to a file") {
  const auto path = std::filesystem::temp_directory_path() / "iqc_sampler_test.csv";
  const auto points = sample(cfg_of(0, 0.5, 1, 20));
  emit_csv(points, path);
  std::ifstream f(path);
  const auto back = parse_csv(f);
  CHECK(back.size() == 20);
  std::filesystem::remove(path);
}
