#pragma once

// Jones-calculus model of the quantum-eraser measurement: waveplates,
// the path-splitting projection onto a symmetrized pair state, fringe
// synthesis against the relative path phase delta, and phase extraction.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tvgp/phase_core.hpp"

namespace tvgp {

using JonesVector = std::array<Complex, 2>;

struct JonesMatrix {
  // Row-major: {m00, m01, m10, m11}.
  std::array<Complex, 4> m{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};

  static JonesMatrix identity() { return {}; }
  /// Active rotation by angle (radians) in the H/V plane.
  static JonesMatrix rotation(double angle);

  Complex operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }
  JonesMatrix adjoint() const;
  /// max |(M^dagger M - I)_ij|.
  double unitarity_defect() const;
};

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b);
JonesVector operator*(const JonesMatrix& a, const JonesVector& v);
JonesVector to_jones(const QubitState& s);

enum class WaveplateKind { kQuarter, kHalf };

struct WaveplateSetting {
  WaveplateKind kind = WaveplateKind::kHalf;
  double fast_axis_deg = 0.0;  // from horizontal, [0, 180)
};

/// Retarder with its fast axis at the given angle:
/// R(a) diag(1, exp(-i*retardance)) R(-a), retardance pi/2 (quarter) or pi (half).
/// Quarter plate at 45 deg takes |H> to (|H> + i|V>)/sqrt2.
JonesMatrix waveplate_matrix(const WaveplateSetting& w);

/// Product of a chain of plates; element 0 is traversed first.
JonesMatrix chain_matrix(std::span<const WaveplateSetting> chain);

struct WaveplateSolution {
  std::vector<WaveplateSetting> settings;
  double infidelity = 1.0;
};

/// Angles for the given plate sequence taking start to target. Multi-start
/// Levenberg-Marquardt over the angles from a 15 deg grid. Throws
/// Unreachable when the best infidelity exceeds 1e-6.
WaveplateSolution solve_waveplates(const QubitState& target, std::span<const WaveplateKind> chain,
                                   const QubitState& start = QubitState::horizontal());

/// <projector|arm>.
Complex projection_amplitude(const SymmetricState& arm, const SymmetricState& projector);

// Optical realization of the projection onto symmetrize(psi3, psi3'):
// a beam splitter sends the photons into two paths, a half-wave plate per
// path rotates psi3 -> H (path A) and psi3' -> V (path B), a PBS recombines
// H from A and V from B, and type-II SFG converts only the HV pair.
class ProjectionChain {
 public:
  /// psi3 and psi3' must be linear polarizations.
  ProjectionChain(const QubitState& psi3, const QubitState& psi3_primed);

  const WaveplateSetting& plate_a() const { return plate_a_; }
  const WaveplateSetting& plate_b() const { return plate_b_; }

  /// SFG amplitude including splitter losses.
  Complex amplitude(const SymmetricState& arm) const;
  /// The two-photon vector the chain projects onto (unnormalized, product basis).
  std::array<Complex, 4> effective_projector() const;
  /// amplitude() divided by the norm of the effective projector.
  Complex normalized_amplitude(const SymmetricState& arm) const;

 private:
  WaveplateSetting plate_a_;
  WaveplateSetting plate_b_;
  JonesMatrix path_a_;
  JonesMatrix path_b_;
};

struct NoiseModel {
  enum class Kind { kNone, kPoisson };
  Kind kind = Kind::kNone;
  double mean_photons = 0.0;  // photons per sample at unit ideal intensity
  std::uint64_t seed = 0;

  static NoiseModel none() { return {}; }
  static NoiseModel poisson(double mean_photons, std::uint64_t seed) {
    return {Kind::kPoisson, mean_photons, seed};
  }
};

struct FringeTrace {
  std::vector<double> delta;      // rad, strictly increasing
  std::vector<double> intensity;  // >= 0; photon counts under Poisson noise
  NoiseModel noise;
};

struct FringeOptions {
  /// Arm amplitudes are sqrt(1 + imbalance) and sqrt(1 - imbalance); |imbalance| < 1.
  double arm_imbalance = 0.0;
};

/// P(delta) = |<third|first> e^{i delta} + <third|second>|^2 for balanced arms,
/// optionally replaced by independent Poisson draws with mean N * P(delta).
FringeTrace fringe_trace(const SymmetricState& first, const SymmetricState& second,
                         const SymmetricState& third, std::span<const double> delta_grid,
                         const NoiseModel& noise = NoiseModel::none(),
                         const FringeOptions& options = {});

/// mean * (1 + visibility * cos(delta - phase)); fringe maximum at delta = phase.
FringeTrace synthesize_fringe(std::span<const double> delta_grid, double mean, double visibility,
                              double phase);

/// n points evenly covering [0, 2pi).
std::vector<double> delta_grid(int n);

struct FringeFit {
  double phase = 0.0;       // fringe-maximum location, (-pi, pi]
  double visibility = 0.0;  // sqrt(B^2 + C^2) / A
  double mean = 0.0;        // A
  double cos_coeff = 0.0;   // B
  double sin_coeff = 0.0;   // C
  double phase_sigma = 0.0;       // from the linear-fit covariance
  double visibility_sigma = 0.0;  // from the linear-fit covariance
};

inline constexpr double kDefaultMinVisibility = 1e-3;
/// Mean intensity below which a trace counts as empty (ideal units, where a
/// unit-overlap arm gives intensity of order one).
inline constexpr double kMinSignal = 1e-20;

/// Linear least squares I = A + B cos(delta) + C sin(delta); phase = atan2(C, B).
/// Throws InsufficientData for fewer than 3 samples or less than one period,
/// ZeroVisibility when the fitted visibility is below min_visibility.
FringeFit extract_fringe_phase(const FringeTrace& trace,
                               double min_visibility = kDefaultMinVisibility);

/// Fringe-phase shift when the final state changes from third_a to third_b.
/// Noisy traces use noise.seed for third_a and noise.seed + 1 for third_b.
double phase_variation(const SymmetricState& first, const SymmetricState& second,
                       const SymmetricState& third_a, const SymmetricState& third_b,
                       std::span<const double> delta_grid,
                       const NoiseModel& noise = NoiseModel::none());

inline constexpr double kDefaultWavelength = 391e-9;  // m, sum-frequency line

double path_difference_to_delta(double x, double wavelength = kDefaultWavelength);
double delta_to_path_difference(double delta, double wavelength = kDefaultWavelength);

}  // namespace tvgp
