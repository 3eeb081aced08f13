#include "iqc/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace iqc {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 point_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::size_t grid_side(std::size_t n) {
  const auto m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / 6.0)));
  for (std::size_t c = m > 0 ? m - 1 : 0; c <= m + 1; ++c) {
    std::size_t p = 1;
    for (int i = 0; i < 6; ++i) p *= c;
    if (p == n) return c;
  }
  return 0;
}

void write_double(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.write(buf, res.ptr - buf);
}

}  // namespace

Alphas alphas_from_angles(const KakAngles& k) {
  return {-k.t3 / 4, k.t4 / 2, k.a1 / 2, -k.a2 / 4, k.s1 / 2, -k.s2 / 4};
}

ComplexMatrix y_closed_form(const Alphas& a) {
  const double c3 = std::cos(a[2]), s3 = std::sin(a[2]);
  const double c4 = std::cos(a[3]), s4 = std::sin(a[3]);
  const double cp25 = std::cos(a[1] + a[4]), cm25 = std::cos(a[1] - a[4]);
  const double sp25 = std::sin(a[1] + a[4]), sm25 = std::sin(a[1] - a[4]);
  const double cp16 = std::cos(a[0] + a[5]), cm16 = std::cos(a[0] - a[5]);
  const double sp16 = std::sin(a[0] + a[5]), sm16 = std::sin(a[0] - a[5]);

  const ComplexMatrix one = identity(2);
  const ComplexMatrix tx = pauli(Axis::x, true);
  const ComplexMatrix ty = pauli(Axis::y, true);
  const ComplexMatrix tz = pauli(Axis::z, true);

  const ComplexMatrix c0 = c3 * c4 * cp25 * cp16 * one - s3 * s4 * cm25 * cp16 * tx -
                           s3 * s4 * sm25 * cm16 * ty + kI * (c3 * c4 * sp25 * cm16) * tz;
  const ComplexMatrix cx = kI * (s3 * c4 * cp25 * cm16) * one + kI * (c3 * s4 * cm25 * cm16) * tx +
                           kI * (c3 * s4 * sm25 * cp16) * ty - s3 * c4 * sp25 * cp16 * tz;
  const ComplexMatrix cy = kI * (c3 * s4 * cm25 * sm16) * one + kI * (s3 * c4 * cp25 * sm16) * tx -
                           kI * (s3 * c4 * sp25 * sp16) * ty + c3 * s4 * sm25 * sp16 * tz;
  const ComplexMatrix cz = -kI * (s3 * s4 * cm25 * sp16) * one + kI * (c3 * c4 * cp25 * sp16) * tx -
                           kI * (c3 * c4 * sp25 * sm16) * ty - s3 * s4 * sm25 * sm16 * tz;
  return tensor(c0, one) + tensor(cx, tx) + tensor(cy, ty) + tensor(cz, tz);
}

ComplexMatrix y_product(const Alphas& a) {
  const double t3 = -4 * a[0], t4 = 2 * a[1], a1 = 2 * a[2], a2 = -4 * a[3], s1 = 2 * a[4], s2 = -4 * a[5];
  const ComplexMatrix one = identity(2);
  const ComplexMatrix sx = pauli(Axis::x);
  const ComplexMatrix sz = pauli(Axis::z);
  const ComplexMatrix xz = kI * tensor(sx, sz);
  const ComplexMatrix xx = kI * tensor(sx, sx);
  const ComplexMatrix z1 = tensor(sz, one);
  const ComplexMatrix ax = tensor(one, sx);
  return mat_exp(ComplexMatrix(t3 * xz)) * mat_exp(ComplexMatrix(t4 * z1)) * mat_exp(ComplexMatrix(a1 * ax)) *
         mat_exp(ComplexMatrix(a2 * xx)) * mat_exp(ComplexMatrix(s1 * z1)) * mat_exp(ComplexMatrix(s2 * xz));
}

void SampleConfig::validate() const {
  if (s_x * s_x + s_z * s_z > 1.0 + 1e-12) throw PreconditionError("sample: s_x^2 + s_z^2 must not exceed 1");
  if (std::abs(a_z) > 1.0 + 1e-12) throw PreconditionError("sample: |a_z| must not exceed 1");
  if (n == 0) throw PreconditionError("sample: n must be at least 1");
  for (const auto& r : ranges)
    if (!(r.hi >= r.lo)) throw PreconditionError("sample: angle range with hi < lo");
  if (mode == SampleMode::grid && grid_side(n) == 0)
    throw PreconditionError("sample: grid mode needs n to be a sixth power");
}

DensityMatrix SampleConfig::rho_s() const {
  const double r = std::hypot(s_x, s_z);
  // Clamp rounding spill-over on the sphere surface.
  const double scale = r > 1.0 ? 1.0 / r : 1.0;
  return bloch_inverse({s_x * scale, 0.0, s_z * scale});
}

DensityMatrix SampleConfig::rho_a() const { return bloch_inverse({0.0, 0.0, std::clamp(a_z, -1.0, 1.0)}); }

BlochPoint reachable_point(const SampleConfig& cfg, const Alphas& a, double t1, double s3, double s4) {
  const ComplexMatrix sz = pauli(Axis::z);
  ComplexMatrix y = y_closed_form(a);
  if (cfg.verify) {
    const double diff = (y - y_product(a)).norm();
    if (diff > 1e-10) throw PreconditionError("sample: closed form and product disagree by " + std::to_string(diff));
  }
  const ComplexMatrix rs = conjugate(mat_exp(ComplexMatrix(s3 * sz)), cfg.rho_s().matrix());
  const ComplexMatrix ra = conjugate(mat_exp(ComplexMatrix(s4 * sz)), cfg.rho_a().matrix());
  const ComplexMatrix omega = conjugate(y, tensor(rs, ra));
  ComplexMatrix out = conjugate(mat_exp(ComplexMatrix(t1 * sz)), partial_trace(omega, Subsystem::S));
  out = (out + out.adjoint()) * 0.5;
  return {(out * pauli(Axis::x, true)).trace().real(), (out * pauli(Axis::y, true)).trace().real(),
          (out * pauli(Axis::z, true)).trace().real()};
}

BlochPoint reachable_point(const SampleConfig& cfg, const KakAngles& k) {
  return reachable_point(cfg, alphas_from_angles(k), k.t1, k.s3, k.s4);
}

KakAngles draw_angles(const SampleConfig& cfg, std::size_t i) {
  std::mt19937_64 rng = point_rng(cfg.seed, i);
  std::array<double, 9> v{};
  for (std::size_t j = 0; j < 9; ++j) {
    const double u = uniform01(rng);
    v[j] = cfg.ranges[j].lo + u * (cfg.ranges[j].hi - cfg.ranges[j].lo);
  }
  if (cfg.mode == SampleMode::grid) {
    const std::size_t m = grid_side(cfg.n);
    if (m == 0) throw PreconditionError("sample: grid mode needs n to be a sixth power");
    std::size_t rest = i;
    for (std::size_t j = 0; j < 6; ++j) {
      const std::size_t idx = rest % m;
      rest /= m;
      v[j] = cfg.ranges[j].lo + (cfg.ranges[j].hi - cfg.ranges[j].lo) * static_cast<double>(idx) /
                                    static_cast<double>(m);
    }
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
}

std::vector<BlochPoint> sample(const SampleConfig& cfg) {
  cfg.validate();
  std::vector<BlochPoint> points;
  points.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) points.push_back(reachable_point(cfg, draw_angles(cfg, i)));
  return points;
}

void emit_csv(const std::vector<BlochPoint>& points, std::ostream& out, const std::uint64_t* seed) {
  if (seed) out << "# seed=" << *seed << '\n';
  out << "x,y,z\n";
  for (const auto& p : points) {
    write_double(out, p.x);
    out << ',';
    write_double(out, p.y);
    out << ',';
    write_double(out, p.z);
    out << '\n';
  }
}

void emit_csv(const std::vector<BlochPoint>& points, const std::filesystem::path& path, const std::uint64_t* seed) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("emit_csv: cannot open '" + path.string() + "' for writing");
  emit_csv(points, f, seed);
  f.flush();
  if (!f) throw ConfigError("emit_csv: write to '" + path.string() + "' failed");
}

std::vector<BlochPoint> parse_csv(std::istream& in) {
  std::vector<BlochPoint> points;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "x,y,z") throw ConfigError("parse_csv: expected header 'x,y,z'");
      header = true;
      continue;
    }
    std::array<double, 3> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 3; ++k) {
      const auto res = std::from_chars(p, end, v[k]);
      if (res.ec != std::errc()) throw ConfigError("parse_csv: bad number in '" + line + "'");
      p = res.ptr;
      if (k < 2) {
        if (p == end || *p != ',') throw ConfigError("parse_csv: expected ',' in '" + line + "'");
        ++p;
      }
    }
    if (p != end) throw ConfigError("parse_csv: trailing characters in '" + line + "'");
    points.push_back({v[0], v[1], v[2]});
  }
  if (!header) throw ConfigError("parse_csv: missing header");
  return points;
}

}  // namespace iqc
