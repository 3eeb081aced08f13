#pragma once

// Monte Carlo sampling of the set of target states reachable in the Ising
// example (H_I = σ_y⊗σ_y, ω_S σ_z drift, full accessor control), using the
// closed-form parametrization of the middle unitary Y.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "iqc/qalg.hpp"

namespace iqc {

/// α₁..α₆ of the factorized Y.
using Alphas = std::array<double, 6>;

/// The nine free angles, in draw order.
struct KakAngles {
  double t3 = 0, t4 = 0, a1 = 0, a2 = 0, s1 = 0, s2 = 0;
  double t1 = 0, s3 = 0, s4 = 0;
};

/// α₁ = -t3/4, α₂ = t4/2, α₃ = a1/2, α₄ = -a2/4, α₅ = s1/2, α₆ = -s2/4.
Alphas alphas_from_angles(const KakAngles& k);

/// Y = C₀⊗1 + C_x⊗σ̃x + C_y⊗σ̃y + C_z⊗σ̃z with the trigonometric coefficient
/// matrices written out entry by entry.
ComplexMatrix y_closed_form(const Alphas& a);

/// Y as the product of the six exponential factors
/// e^{it3 σx⊗σz} e^{t4 σz⊗1} e^{a1 1⊗σx} e^{ia2 σx⊗σx} e^{s1 σz⊗1} e^{is2 σx⊗σz},
/// with the angles recovered from α.
ComplexMatrix y_product(const Alphas& a);

enum class SampleMode { random, grid };

struct AngleRange {
  double lo = 0.0;
  double hi = 4.0 * M_PI;
};

struct SampleConfig {
  double s_x = 0.0;
  double s_z = 0.5;
  double a_z = 0.0;
  std::size_t n = 729;
  std::uint64_t seed = 0;
  /// Ranges for (t3, t4, a1, a2, s1, s2, t1, s3, s4).
  std::array<AngleRange, 9> ranges{};
  SampleMode mode = SampleMode::random;
  /// Also evaluate the exponential product and throw if it disagrees with
  /// the closed form by more than 1e-10.
  bool verify = false;

  /// Throws PreconditionError when the states are not valid or n = 0.
  void validate() const;
  DensityMatrix rho_s() const;
  DensityMatrix rho_a() const;
};

/// Bloch point of e^{t1σz} Tr_A(Y (R_{s3} ρ_S ⊗ R_{s4} ρ_A) Y†) e^{-t1σz},
/// with R_s ρ = e^{sσz} ρ e^{-sσz}.
BlochPoint reachable_point(const SampleConfig& cfg, const Alphas& a, double t1, double s3, double s4);
BlochPoint reachable_point(const SampleConfig& cfg, const KakAngles& k);

/// Angles of the i-th draw. Random mode seeds a fresh mt19937_64 from
/// (seed, i), so each point depends only on (seed, i). Grid mode needs n to
/// be a sixth power m⁶: the six Y angles take m evenly spaced values each and
/// the outer angles are drawn as in random mode.
KakAngles draw_angles(const SampleConfig& cfg, std::size_t i);

std::vector<BlochPoint> sample(const SampleConfig& cfg);

/// "# seed=<n>" line when `seed` is given, header "x,y,z", then one row per
/// point with 17 significant digits and LF endings.
void emit_csv(const std::vector<BlochPoint>& points, std::ostream& out, const std::uint64_t* seed = nullptr);
/// Throws ConfigError when the file cannot be written.
void emit_csv(const std::vector<BlochPoint>& points, const std::filesystem::path& path,
              const std::uint64_t* seed = nullptr);

/// Reads the format written by emit_csv; '#' lines are skipped.
std::vector<BlochPoint> parse_csv(std::istream& in);

}  // namespace iqc
