#include "tvgp/triplet_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"

namespace tvgp {

TripletParams TripletParams::from_degrees(double theta_deg, double chi_deg, double phi_deg) {
  if (!(theta_deg >= 0.0 && theta_deg < 180.0)) {
    throw InvalidArgument("theta must lie in [0, 180) degrees");
  }
  if (!(chi_deg >= 0.0 && chi_deg < 360.0)) {
    throw InvalidArgument("chi must lie in [0, 360) degrees");
  }
  if (!std::isfinite(phi_deg)) throw InvalidArgument("phi must be finite");
  return {deg_to_rad(theta_deg), deg_to_rad(chi_deg), deg_to_rad(phi_deg)};
}

ConstituentStates make_states(const TripletParams& p) {
  const double c = std::cos(0.5 * p.theta);
  const double s = std::sin(0.5 * p.theta);
  const double u = 0.25 * p.chi + 0.5 * p.phi;
  const double v = 0.25 * p.chi - 0.5 * p.phi;
  return {
      QubitState(Complex(c), Complex(0.0, s)),
      QubitState(Complex(c), Complex(0.0, -s)),
      QubitState(Complex(std::cos(u)), Complex(std::sin(u))),
      QubitState(Complex(std::cos(v)), Complex(-std::sin(v))),
  };
}

Triplet make_triplet(const TripletParams& p) {
  const ConstituentStates s = make_states(p);
  return {symmetrize(s.psi1, s.psi1), symmetrize(s.psi2, s.psi2),
          symmetrize(s.psi3, s.psi3_primed)};
}

double analytic_qubit_phase(double theta, double chi, double phi, QubitBranch branch) {
  const double t = std::tan(0.5 * theta);
  // tan() of a double never returns an exact pole; near one it saturates and
  // atan() lands on the one-sided limit pi/2.
  if (branch == QubitBranch::kUnprimed) {
    return -2.0 * std::atan(t * std::tan(0.25 * chi + 0.5 * phi));
  }
  return 2.0 * std::atan(t * std::tan(0.25 * chi - 0.5 * phi));
}

double analytic_total_phase(const TripletParams& p) {
  return analytic_qubit_phase(p.theta, p.chi, p.phi, QubitBranch::kUnprimed) +
         analytic_qubit_phase(p.theta, p.chi, p.phi, QubitBranch::kPrimed);
}

double PhaseCurve::interpolate(double phi) const {
  if (samples.empty() || phi < samples.front().phi || phi > samples.back().phi) {
    throw InvalidArgument("PhaseCurve::interpolate: phi outside curve range");
  }
  auto hi = std::lower_bound(samples.begin(), samples.end(), phi,
                             [](const PhaseSample& s, double x) { return s.phi < x; });
  if (hi == samples.begin()) return hi->gamma;
  auto lo = std::prev(hi);
  const double w = (phi - lo->phi) / (hi->phi - lo->phi);
  return lo->gamma + w * (hi->gamma - lo->gamma);
}

std::vector<double> linear_grid(double start, double stop, int n) {
  if (n < 2) throw InvalidArgument("linear_grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (stop - start) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

namespace {

constexpr double kMaxStep = 0.5 * kPi;
constexpr double kConsistencyTol = 1e-9;
constexpr double kGoldenRatio = 0.6180339887498949;

struct RawSample {
  double phi;
  double value;  // phase function value, any branch
  double lifted;  // continuous reference value, 0 when there is none
};

class Refiner {
 public:
  Refiner(const std::function<double(double)>& f, const std::function<double(double)>& lift,
          int max_depth)
      : f_(f), lift_(lift), max_depth_(max_depth) {}

  RawSample sample(double phi) const { return {phi, f_(phi), lift_ ? lift_(phi) : 0.0}; }

  // Appends the samples strictly inside (a, b) needed for a safe unwrap.
  void refine(const RawSample& a, const RawSample& b, int depth, std::vector<RawSample>& out) {
    const double step = wrap_angle(b.value - a.value);
    const RawSample m = sample(0.5 * (a.phi + b.phi));
    const double halves = wrap_angle(m.value - a.value) + wrap_angle(b.value - m.value);
    // A 2pi step narrower than the spacing is invisible in wrapped values;
    // the continuous reference exposes it.
    const bool hidden = std::abs(b.lifted - a.lifted) >= kMaxStep;
    if (!hidden && std::abs(step) < kMaxStep && std::abs(halves - step) < kConsistencyTol) return;
    if (depth >= max_depth_) {
      throw GridTooCoarse("phase sweep refinement exceeded depth limit near phi = " +
                          std::to_string(rad_to_deg(m.phi)) + " deg");
    }
    refine(a, m, depth + 1, out);
    out.push_back(m);
    refine(m, b, depth + 1, out);
  }

 private:
  const std::function<double(double)>& f_;
  const std::function<double(double)>& lift_;
  int max_depth_;
};

// Continuous evaluation between samples: unwrap f(phi) against the nearest sample.
class ContinuousCurve {
 public:
  ContinuousCurve(const std::function<double(double)>& f, const std::vector<PhaseSample>& samples)
      : f_(f), samples_(samples) {}

  double operator()(double phi) const {
    auto hi = std::lower_bound(samples_.begin(), samples_.end(), phi,
                               [](const PhaseSample& s, double x) { return s.phi < x; });
    const PhaseSample* nearest = nullptr;
    if (hi == samples_.end()) {
      nearest = &samples_.back();
    } else if (hi == samples_.begin()) {
      nearest = &*hi;
    } else {
      auto lo = std::prev(hi);
      nearest = (phi - lo->phi <= hi->phi - phi) ? &*lo : &*hi;
    }
    return nearest->gamma + wrap_angle(f_(phi) - nearest->gamma);
  }

  double slope(double phi) const {
    constexpr double h = 1e-5;
    return wrap_angle(f_(phi + h) - f_(phi - h)) / (2.0 * h);
  }

 private:
  const std::function<double(double)>& f_;
  const std::vector<PhaseSample>& samples_;
};

template <typename F>
double golden_section_minimize(F&& objective, double lo, double hi, double tol) {
  double x1 = hi - kGoldenRatio * (hi - lo);
  double x2 = lo + kGoldenRatio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGoldenRatio * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGoldenRatio * (hi - lo);
      f2 = objective(x2);
    }
  }
  return 0.5 * (lo + hi);
}

// First phi in [lo, hi] where curve(phi) - level changes sign, by scanning
// the stored samples and bisecting inside the bracketing interval.
template <typename Curve>
double first_crossing(const Curve& curve, const std::vector<PhaseSample>& samples,
                      double lo, double hi, double level) {
  std::vector<double> knots{lo};
  for (const auto& s : samples) {
    if (s.phi > lo && s.phi < hi) knots.push_back(s.phi);
  }
  knots.push_back(hi);
  double prev = curve(knots.front()) - level;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double cur = curve(knots[i]) - level;
    if (prev == 0.0) return knots[i - 1];
    if ((prev < 0.0) != (cur < 0.0)) {
      double a = knots[i - 1];
      double b = knots[i];
      double fa = prev;
      for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = curve(m) - level;
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    prev = cur;
  }
  return hi;
}

std::vector<PhaseJump> detect_jumps(const std::function<double(double)>& f,
                                    const std::vector<PhaseSample>& samples, double slope_factor) {
  std::vector<PhaseJump> jumps;
  const std::size_t n = samples.size();
  const double span = samples.back().phi - samples.front().phi;
  const double mean_slope = std::abs(samples.back().gamma - samples.front().gamma) / span;
  if (!(mean_slope > 0.0)) return jumps;
  const double threshold = slope_factor * mean_slope;

  // Runs of consecutive intervals steeper than the threshold, same sign.
  struct Run {
    double lo, hi;
  };
  std::vector<Run> runs;
  int run_sign = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double s =
        (samples[i + 1].gamma - samples[i].gamma) / (samples[i + 1].phi - samples[i].phi);
    const int sign = std::abs(s) > threshold ? (s > 0 ? 1 : -1) : 0;
    if (sign != 0 && sign == run_sign) {
      runs.back().hi = samples[i + 1].phi;
    } else if (sign != 0) {
      runs.push_back({samples[i].phi, samples[i + 1].phi});
    }
    run_sign = sign;
  }
  if (runs.empty()) return jumps;

  const ContinuousCurve curve(f, samples);
  std::vector<double> centers;
  for (const Run& r : runs) {
    centers.push_back(golden_section_minimize(
        [&](double x) { return -std::abs(curve.slope(x)); }, r.lo, r.hi, 1e-10));
  }

  const double first_phi = samples.front().phi;
  const double last_phi = samples.back().phi;
  // On a full period the outermost jumps share the wrap-around gap and the
  // curve is extended periodically past the grid ends.
  const bool periodic = std::abs(span - kTwoPi) < 1e-9;
  const double net = samples.back().gamma - samples.front().gamma;
  const auto extended = [&](double phi) {
    if (!periodic) return curve(std::clamp(phi, first_phi, last_phi));
    if (phi < first_phi) return curve(phi + kTwoPi) - net;
    if (phi > last_phi) return curve(phi - kTwoPi) + net;
    return curve(phi);
  };
  const double wrap_gap = centers.front() + kTwoPi - centers.back();
  for (std::size_t k = 0; k < centers.size(); ++k) {
    double lo = k == 0 ? (periodic ? centers[k] - 0.5 * wrap_gap : first_phi)
                       : 0.5 * (centers[k - 1] + centers[k]);
    double hi = k + 1 == centers.size() ? (periodic ? centers[k] + 0.5 * wrap_gap : last_phi)
                                        : 0.5 * (centers[k] + centers[k + 1]);
    const double base = extended(lo);
    const double rise = extended(hi) - base;
    const double p10 = first_crossing(extended, samples, lo, hi, base + 0.1 * rise);
    const double p90 = first_crossing(extended, samples, lo, hi, base + 0.9 * rise);
    jumps.push_back({centers[k], rise, std::abs(p90 - p10)});
  }
  return jumps;
}

}  // namespace

PhaseCurve sweep_phase_function(const std::function<double(double)>& phase,
                                std::span<const double> phi_grid, const SweepOptions& options) {
  if (phi_grid.size() < 3) throw InvalidArgument("phi grid needs at least 3 points");
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    if (!std::isfinite(phi_grid[i]) || (i > 0 && !(phi_grid[i] > phi_grid[i - 1]))) {
      throw InvalidArgument("phi grid must be finite and strictly increasing");
    }
  }

  std::vector<RawSample> raw;
  raw.reserve(phi_grid.size());
  Refiner refiner(phase, options.continuous_reference, options.max_depth);
  RawSample prev = refiner.sample(phi_grid[0]);
  raw.push_back(prev);
  for (std::size_t i = 1; i < phi_grid.size(); ++i) {
    const RawSample next = refiner.sample(phi_grid[i]);
    refiner.refine(prev, next, 0, raw);
    raw.push_back(next);
    prev = next;
  }

  PhaseCurve curve;
  curve.samples.reserve(raw.size());
  double gamma = raw.front().value;
  curve.samples.push_back({raw.front().phi, gamma});
  for (std::size_t i = 1; i < raw.size(); ++i) {
    gamma += wrap_angle(raw[i].value - gamma);
    curve.samples.push_back({raw[i].phi, gamma});
  }
  curve.jumps = detect_jumps(phase, curve.samples, options.jump_slope_factor);
  return curve;
}

PhaseCurve sweep_phi(double theta, double chi, std::span<const double> phi_grid,
                     const SweepOptions& options) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw InvalidArgument("sweep requires 0 < theta < 180 deg (theta = 0 collapses psi1 = psi2)");
  }
  const std::function<double(double)> f = [theta, chi](double phi) {
    return analytic_total_phase({theta, chi, phi});
  };
  SweepOptions opts = options;
  if (!opts.continuous_reference) {
    const double t = std::tan(0.5 * theta);
    // atan(t tan x) lifted across the poles of tan: x plus the angle of
    // (cos x - i sin x)(cos x + i t sin x), whose real part stays positive.
    const auto lifted_atan = [t](double x) {
      const double c = std::cos(x), s = std::sin(x);
      return x + std::atan2((t - 1.0) * s * c, c * c + t * s * s);
    };
    opts.continuous_reference = [chi, lifted_atan](double phi) {
      return -2.0 * lifted_atan(0.25 * chi + 0.5 * phi) + 2.0 * lifted_atan(0.25 * chi - 0.5 * phi);
    };
  }
  PhaseCurve curve = sweep_phase_function(f, phi_grid, opts);
  curve.theta = theta;
  curve.chi = chi;
  return curve;
}

OffsetFit fit_offset(std::span<const std::pair<double, double>> measured,
                     const std::function<double(double)>& theory) {
  if (measured.size() < 2) throw InsufficientData("offset fit needs at least 2 points");
  std::vector<double> residual;
  residual.reserve(measured.size());
  for (const auto& [phi, gamma] : measured) residual.push_back(gamma - theory(phi));

  auto cost = [&](double c) {
    double acc = 0.0;
    for (double r : residual) {
      const double d = wrap_angle(r - c);
      acc += d * d;
    }
    return acc;
  };

  // Coarse 1 deg scan, golden-section inside the best cell, then the exact
  // mean of wrapped residuals around that point.
  const double cell = deg_to_rad(1.0);
  double best_c = -kPi + cell;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 360; ++k) {
    const double c = -kPi + k * cell;
    const double j = cost(c);
    if (j < best_cost) {
      best_cost = j;
      best_c = c;
    }
  }
  double c = golden_section_minimize(cost, best_c - cell, best_c + cell, 1e-10);
  double shift = 0.0;
  for (double r : residual) shift += wrap_angle(r - c);
  c = wrap_angle(c + shift / static_cast<double>(residual.size()));

  return {c, std::sqrt(cost(c) / static_cast<double>(residual.size()))};
}

OffsetFit fit_offset(std::span<const std::pair<double, double>> measured,
                     const PhaseCurve& theory) {
  if (theory.samples.empty()) throw InsufficientData("empty theory curve");
  const double lo = theory.samples.front().phi;
  const double hi = theory.samples.back().phi;
  std::vector<std::pair<double, double>> inside;
  for (const auto& m : measured) {
    if (m.first >= lo && m.first <= hi) inside.push_back(m);
  }
  if (inside.size() < 2) {
    throw InsufficientData("offset fit needs at least 2 points inside the theory range");
  }
  return fit_offset(inside, [&theory](double phi) { return theory.interpolate(phi); });
}

}  // namespace tvgp
