#pragma once

// The (theta, chi, phi) family of standard triplets, the closed-form phase
// of that family, phi sweeps with continuity unwrapping and jump analysis,
// and per-curve offset fitting.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tvgp/phase_core.hpp"

namespace tvgp {

/// Triplet parameters, stored in radians.
struct TripletParams {
  double theta = 0.0;  // half-angle between psi1 and psi2, [0, pi)
  double chi = 0.0;    // angle between psi3 and psi3', [0, 2pi)
  double phi = 0.0;    // rotation of the psi3 pair

  /// Validates theta in [0, 180) and chi in [0, 360); phi may be any finite value.
  static TripletParams from_degrees(double theta_deg, double chi_deg, double phi_deg);
};

struct ConstituentStates {
  QubitState psi1;
  QubitState psi2;
  QubitState psi3;
  QubitState psi3_primed;
};

struct Triplet {
  SymmetricState first;   // |psi1 psi1>
  SymmetricState second;  // |psi2 psi2>
  SymmetricState third;   // symmetrized |psi3 psi3'>
};

ConstituentStates make_states(const TripletParams& p);
Triplet make_triplet(const TripletParams& p);

enum class QubitBranch { kUnprimed, kPrimed };

/// Closed-form qubit phase gamma[psi1, psi2, psi3] (unprimed) or
/// gamma[psi1, psi2, psi3'] (primed) on the arctangent branch, in (-2pi, 2pi).
/// At a pole of the tangent the result is the one-sided limit +/-pi.
double analytic_qubit_phase(double theta, double chi, double phi, QubitBranch branch);

/// Sum of the two qubit branches; equals the qutrit three-vertex phase of
/// make_triplet(p) modulo 2pi.
double analytic_total_phase(const TripletParams& p);

struct PhaseSample {
  double phi = 0.0;    // rad
  double gamma = 0.0;  // rad, unwrapped
};

struct PhaseJump {
  double phi_center = 0.0;  // rad, location of the steepest slope
  double rise = 0.0;        // rad, signed change across the jump region
  double width = 0.0;       // rad, 10%-90% extent of the rise
};

struct PhaseCurve {
  double theta = 0.0;
  double chi = 0.0;
  std::vector<PhaseSample> samples;
  std::vector<PhaseJump> jumps;

  /// Linear interpolation of the unwrapped curve; phi must lie in range.
  double interpolate(double phi) const;
};

struct SweepOptions {
  int max_depth = 24;
  /// A run of samples counts as a jump when |slope| exceeds this multiple of
  /// the mean slope over the whole sweep.
  double jump_slope_factor = 2.0;
  /// Optional continuous (unwrapped) version of the phase function. When set,
  /// refinement also splits intervals where it changes by pi/2 or more, which
  /// catches jumps narrower than the grid spacing. sweep_phi supplies one.
  std::function<double(double)> continuous_reference;
};

/// Sweeps an arbitrary phase function of phi (wrapped or branch-valued) over
/// the grid: refines, unwraps, and detects jumps. Exposed for reuse with
/// alternative phase routes.
PhaseCurve sweep_phase_function(const std::function<double(double)>& phase,
                                std::span<const double> phi_grid,
                                const SweepOptions& options = {});

/// Sweep of analytic_total_phase over phi (radians). Rejects theta == 0.
PhaseCurve sweep_phi(double theta, double chi, std::span<const double> phi_grid,
                     const SweepOptions& options = {});

/// Evenly spaced grid from start to stop inclusive, n >= 2 points.
std::vector<double> linear_grid(double start, double stop, int n);

struct OffsetFit {
  double offset = 0.0;        // rad, in (-pi, pi]
  double residual_rms = 0.0;  // rad
};

/// Constant offset c minimizing sum wrap(measured - theory(phi) - c)^2.
OffsetFit fit_offset(std::span<const std::pair<double, double>> measured,
                     const std::function<double(double)>& theory);
/// Same, against the interpolated curve; points outside its phi range are ignored.
OffsetFit fit_offset(std::span<const std::pair<double, double>> measured,
                     const PhaseCurve& theory);

}  // namespace tvgp
