#include "tvgp/eraser_sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"

namespace tvgp {

JonesMatrix JonesMatrix::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{Complex(c), Complex(-s), Complex(s), Complex(c)}};
}

JonesMatrix JonesMatrix::adjoint() const {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

double JonesMatrix::unitarity_defect() const {
  const JonesMatrix p = adjoint() * *this;
  return std::max({std::abs(p.m[0] - 1.0), std::abs(p.m[1]), std::abs(p.m[2]),
                   std::abs(p.m[3] - 1.0)});
}

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
  return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
           a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

JonesVector operator*(const JonesMatrix& a, const JonesVector& v) {
  return {a.m[0] * v[0] + a.m[1] * v[1], a.m[2] * v[0] + a.m[3] * v[1]};
}

JonesVector to_jones(const QubitState& s) { return {s.amp_h(), s.amp_v()}; }

JonesMatrix waveplate_matrix(const WaveplateSetting& w) {
  const double retardance = w.kind == WaveplateKind::kQuarter ? 0.5 * kPi : kPi;
  const double a = deg_to_rad(w.fast_axis_deg);
  const JonesMatrix retarder{{Complex(1.0), Complex(0.0), Complex(0.0),
                              std::polar(1.0, -retardance)}};
  return JonesMatrix::rotation(a) * retarder * JonesMatrix::rotation(-a);
}

JonesMatrix chain_matrix(std::span<const WaveplateSetting> chain) {
  JonesMatrix total;
  for (const auto& w : chain) total = waveplate_matrix(w) * total;
  return total;
}

namespace {

constexpr double kUnreachableInfidelity = 1e-6;
constexpr double kGridStepDeg = 15.0;
constexpr std::size_t kMaxStarts = 2000;

double normalize_plate_angle(double deg) {
  double a = std::fmod(deg, 180.0);
  if (a < 0.0) a += 180.0;
  if (a >= 180.0) a -= 180.0;
  return a;
}

class WaveplateProblem {
 public:
  WaveplateProblem(const QubitState& target, std::span<const WaveplateKind> kinds,
                   const QubitState& start)
      : target_(to_jones(target)), start_(to_jones(start)), kinds_(kinds.begin(), kinds.end()) {}

  std::size_t size() const { return kinds_.size(); }

  // Component of the output orthogonal to the target; |r|^2 is the infidelity.
  Eigen::Vector4d residual(const Eigen::VectorXd& angles_deg) const {
    JonesVector out = start_;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
      out = waveplate_matrix({kinds_[i], angles_deg[static_cast<Eigen::Index>(i)]}) * out;
    }
    const Complex overlap = std::conj(target_[0]) * out[0] + std::conj(target_[1]) * out[1];
    const Complex r0 = out[0] - overlap * target_[0];
    const Complex r1 = out[1] - overlap * target_[1];
    return {r0.real(), r0.imag(), r1.real(), r1.imag()};
  }

  // Levenberg-Marquardt from one start; returns the final infidelity.
  double minimize(Eigen::VectorXd& x) const {
    const auto n = static_cast<Eigen::Index>(size());
    double lambda = 1e-3;
    Eigen::Vector4d r = residual(x);
    double cost = r.squaredNorm();
    for (int iter = 0; iter < 100 && cost > 1e-30; ++iter) {
      Eigen::Matrix<double, 4, Eigen::Dynamic> jac(4, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        constexpr double h = 1e-6;
        Eigen::VectorXd xp = x;
        Eigen::VectorXd xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
      }
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd grad = jac.transpose() * r;
      bool improved = false;
      while (lambda < 1e12) {
        Eigen::MatrixXd damped = jtj;
        damped.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
        const Eigen::VectorXd step = damped.ldlt().solve(-grad);
        const Eigen::VectorXd trial = x + step;
        const Eigen::Vector4d rt = residual(trial);
        const double trial_cost = rt.squaredNorm();
        if (trial_cost < cost) {
          x = trial;
          r = rt;
          cost = trial_cost;
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    return cost;
  }

 private:
  JonesVector target_;
  JonesVector start_;
  std::vector<WaveplateKind> kinds_;
};

}  // namespace

WaveplateSolution solve_waveplates(const QubitState& target, std::span<const WaveplateKind> chain,
                                   const QubitState& start) {
  if (chain.empty()) throw InvalidArgument("solve_waveplates: empty plate chain");
  const WaveplateProblem problem(target, chain, start);
  const std::size_t n = chain.size();
  const auto per_axis = static_cast<std::size_t>(180.0 / kGridStepDeg);

  std::size_t total = 1;
  for (std::size_t i = 0; i < n && total <= kMaxStarts; ++i) total *= per_axis;

  std::vector<Eigen::VectorXd> starts;
  if (total <= kMaxStarts) {
    starts.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(n));
      std::size_t idx = k;
      for (std::size_t i = 0; i < n; ++i) {
        x[static_cast<Eigen::Index>(i)] = static_cast<double>(idx % per_axis) * kGridStepDeg;
        idx /= per_axis;
      }
      starts.push_back(std::move(x));
    }
  } else {
    // Long chains: a fixed pseudo-random subset of the grid.
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<std::size_t> pick(0, per_axis - 1);
    for (std::size_t k = 0; k < kMaxStarts; ++k) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        x[static_cast<Eigen::Index>(i)] = static_cast<double>(pick(rng)) * kGridStepDeg;
      }
      starts.push_back(std::move(x));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (Eigen::VectorXd& x : starts) {
    const double infidelity = problem.minimize(x);
    if (infidelity < best) {
      best = infidelity;
      best_x = x;
    }
    if (best < 1e-28) break;
  }

  if (best > kUnreachableInfidelity) {
    throw Unreachable("waveplate chain cannot reach the target state (best infidelity " +
                          std::to_string(best) + ")",
                      best);
  }
  WaveplateSolution sol;
  sol.infidelity = best;
  for (std::size_t i = 0; i < n; ++i) {
    sol.settings.push_back({chain[i], normalize_plate_angle(best_x[static_cast<Eigen::Index>(i)])});
  }
  return sol;
}

Complex projection_amplitude(const SymmetricState& arm, const SymmetricState& projector) {
  return inner(projector, arm);
}

ProjectionChain::ProjectionChain(const QubitState& psi3, const QubitState& psi3_primed) {
  const std::array<WaveplateKind, 1> half{WaveplateKind::kHalf};
  plate_a_ = solve_waveplates(QubitState::horizontal(), half, psi3).settings.front();
  plate_b_ = solve_waveplates(QubitState::vertical(), half, psi3_primed).settings.front();
  path_a_ = waveplate_matrix(plate_a_);
  path_b_ = waveplate_matrix(plate_b_);
}

std::array<Complex, 4> ProjectionChain::effective_projector() const {
  // Path A keeps <H| U_A (PBS transmission), path B keeps <V| U_B (reflection).
  const std::array<Complex, 2> a{path_a_(0, 0), path_a_(0, 1)};
  const std::array<Complex, 2> b{path_b_(1, 0), path_b_(1, 1)};
  // Each photon picks a path at a 50/50 splitter; both assignments feed the
  // same HV pair at the crystal, so their amplitudes add.
  std::array<Complex, 4> bra{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      bra[static_cast<std::size_t>(2 * i + j)] = 0.5 * (a[i] * b[j] + b[i] * a[j]);
    }
  }
  std::array<Complex, 4> ket{};
  for (std::size_t k = 0; k < 4; ++k) ket[k] = std::conj(bra[k]);
  return ket;
}

Complex ProjectionChain::amplitude(const SymmetricState& arm) const {
  const auto phi = effective_projector();
  const auto psi = arm.product_basis();
  Complex acc(0.0);
  for (std::size_t k = 0; k < 4; ++k) acc += std::conj(phi[k]) * psi[k];
  return acc;
}

Complex ProjectionChain::normalized_amplitude(const SymmetricState& arm) const {
  const auto phi = effective_projector();
  double norm2 = 0.0;
  for (const auto& c : phi) norm2 += std::norm(c);
  return amplitude(arm) / std::sqrt(norm2);
}

FringeTrace fringe_trace(const SymmetricState& first, const SymmetricState& second,
                         const SymmetricState& third, std::span<const double> delta_grid,
                         const NoiseModel& noise, const FringeOptions& options) {
  if (!(std::abs(options.arm_imbalance) < 1.0)) {
    throw InvalidArgument("arm imbalance must lie in (-1, 1)");
  }
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) {
      throw InvalidArgument("delta grid must be strictly increasing");
    }
  }
  const Complex a = std::sqrt(1.0 + options.arm_imbalance) * projection_amplitude(first, third);
  const Complex b = std::sqrt(1.0 - options.arm_imbalance) * projection_amplitude(second, third);

  FringeTrace trace;
  trace.delta.assign(delta_grid.begin(), delta_grid.end());
  trace.noise = noise;
  trace.intensity.reserve(delta_grid.size());
  for (double d : delta_grid) trace.intensity.push_back(std::norm(a * std::polar(1.0, d) + b));

  if (noise.kind == NoiseModel::Kind::kPoisson) {
    if (!(noise.mean_photons > 0.0)) throw InvalidArgument("mean photons must be positive");
    std::mt19937_64 rng(noise.seed);
    for (double& value : trace.intensity) {
      const double mean = noise.mean_photons * value;
      if (mean > 0.0) {
        std::poisson_distribution<long long> draw(mean);
        value = static_cast<double>(draw(rng));
      } else {
        value = 0.0;
      }
    }
  }
  return trace;
}

FringeTrace synthesize_fringe(std::span<const double> delta_grid, double mean, double visibility,
                              double phase) {
  FringeTrace trace;
  trace.delta.assign(delta_grid.begin(), delta_grid.end());
  for (double d : delta_grid) {
    trace.intensity.push_back(mean * (1.0 + visibility * std::cos(d - phase)));
  }
  return trace;
}

std::vector<double> delta_grid(int n) {
  if (n < 3) throw InvalidArgument("delta grid needs at least 3 points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = kTwoPi * i / n;
  return out;
}

FringeFit extract_fringe_phase(const FringeTrace& trace, double min_visibility) {
  const auto n = static_cast<Eigen::Index>(trace.delta.size());
  if (n < 3 || trace.intensity.size() != trace.delta.size()) {
    throw InsufficientData("fringe fit needs at least 3 samples");
  }
  const double span = trace.delta.back() - trace.delta.front();
  const double spacing = span / static_cast<double>(n - 1);
  if (span + spacing < kTwoPi - 1e-9) {
    throw InsufficientData("fringe trace must span at least one period");
  }

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = trace.delta[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(d);
    design(i, 2) = std::sin(d);
    y[i] = trace.intensity[static_cast<std::size_t>(i)];
  }
  const Eigen::Matrix3d normal = design.transpose() * design;
  const Eigen::Vector3d coeff = normal.ldlt().solve(design.transpose() * y);

  FringeFit fit;
  fit.mean = coeff[0];
  fit.cos_coeff = coeff[1];
  fit.sin_coeff = coeff[2];
  const double modulation = std::hypot(fit.cos_coeff, fit.sin_coeff);
  // Below kMinSignal the trace is rounding noise of an orthogonal projection
  // and its apparent visibility means nothing.
  fit.visibility = fit.mean > kMinSignal ? modulation / fit.mean : 0.0;
  if (!(fit.visibility >= min_visibility)) throw ZeroVisibility(fit.visibility);
  fit.phase = wrap_angle(std::atan2(fit.sin_coeff, fit.cos_coeff));

  if (n > 3) {
    const double rss = (y - design * coeff).squaredNorm();
    const Eigen::Matrix3d cov = (rss / static_cast<double>(n - 3)) * normal.inverse();
    const double r2 = modulation * modulation;
    const Eigen::Vector3d dphase(0.0, -fit.sin_coeff / r2, fit.cos_coeff / r2);
    const Eigen::Vector3d dvis(-modulation / (fit.mean * fit.mean),
                               fit.cos_coeff / (modulation * fit.mean),
                               fit.sin_coeff / (modulation * fit.mean));
    fit.phase_sigma = std::sqrt(std::max(0.0, dphase.dot(cov * dphase)));
    fit.visibility_sigma = std::sqrt(std::max(0.0, dvis.dot(cov * dvis)));
  }
  return fit;
}

double phase_variation(const SymmetricState& first, const SymmetricState& second,
                       const SymmetricState& third_a, const SymmetricState& third_b,
                       std::span<const double> delta_grid, const NoiseModel& noise) {
  NoiseModel noise_b = noise;
  noise_b.seed = noise.seed + 1;
  const FringeFit fa = extract_fringe_phase(fringe_trace(first, second, third_a, delta_grid, noise));
  const FringeFit fb =
      extract_fringe_phase(fringe_trace(first, second, third_b, delta_grid, noise_b));
  return wrap_angle(fb.phase - fa.phase);
}

double path_difference_to_delta(double x, double wavelength) { return kTwoPi * x / wavelength; }
double delta_to_path_difference(double delta, double wavelength) {
  return delta * wavelength / kTwoPi;
}

}  // namespace tvgp
