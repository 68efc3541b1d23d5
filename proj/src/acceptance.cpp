#include "tvgp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "tvgp/angles.hpp"
#include "tvgp/eraser_sim.hpp"
#include "tvgp/errors.hpp"
#include "tvgp/figures.hpp"
#include "tvgp/io.hpp"
#include "tvgp/sampling.hpp"

namespace tvgp::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

double circular_distance_deg(double a, double b) {
  return std::abs(rad_to_deg(wrap_angle(deg_to_rad(a - b))));
}

// 1 ---------------------------------------------------------------------------
CriterionResult oracle_equivalence(const Hooks& hooks) {
  CriterionResult r{1, "oracle equivalence", false, {}, 0.0};
  const auto t0 = Clock::now();
  double max_err = 0.0;
  long compared = 0;
  long failed = 0;
  std::map<double, long> undefined_by_theta;
  for (double theta : {2.0, 10.0, 20.0, 45.0, 90.0}) {
    for (double chi : {0.0, 60.0, 120.0, 180.0}) {
      const double pole_unprimed = 180.0 - 0.5 * chi;
      const double pole_primed = 180.0 + 0.5 * chi;
      for (int step = 0; step < 360; ++step) {
        const double phi = step;
        if (circular_distance_deg(phi, pole_unprimed) <= 0.5 ||
            circular_distance_deg(phi, pole_primed) <= 0.5) {
          continue;
        }
        const TripletParams p = TripletParams::from_degrees(theta, chi, phi);
        ++compared;
        try {
          const Triplet t = make_triplet(p);
          const double direct = three_vertex_phase(t.first, t.second, t.third);
          const double err = std::abs(wrap_angle(hooks.analytic_total(p) - direct));
          max_err = std::max(max_err, err);
          if (!(err < 1e-9)) ++failed;
        } catch (const UndefinedPhase&) {
          ++failed;
          ++undefined_by_theta[theta];
        }
      }
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = failed == 0 && r.seconds < 5.0;
  r.detail = std::to_string(compared) + " samples, max |wrap diff| = " + fmt(max_err) +
             " (tol 1e-9), failures = " + std::to_string(failed);
  for (const auto& [theta, count] : undefined_by_theta) {
    r.detail += "; theta=" + fmt(theta) + " deg: " + std::to_string(count) +
                " samples undefined (psi1 orthogonal to psi2)";
  }
  if (r.seconds >= 5.0) r.detail += "; runtime over 5 s";
  return r;
}

PhaseCurve hooked_sweep(const Hooks& hooks, double theta_deg, double chi_deg) {
  const double theta = deg_to_rad(theta_deg);
  const double chi = deg_to_rad(chi_deg);
  const std::vector<double> grid = linear_grid(0.0, kTwoPi, 721);
  PhaseCurve c = sweep_phase_function(
      [&](double phi) { return hooks.analytic_total(TripletParams{theta, chi, phi}); }, grid);
  c.theta = theta;
  c.chi = chi;
  return c;
}

// 2 ---------------------------------------------------------------------------
CriterionResult jump_law(const Hooks& hooks) {
  CriterionResult r{2, "jump law", true, {}, 0.0};
  const auto t0 = Clock::now();
  std::ostringstream detail;
  for (double chi : {0.0, 60.0, 120.0, 180.0}) {
    const PhaseCurve c = hooked_sweep(hooks, 10.0, chi);
    const double net = c.samples.back().gamma - c.samples.front().gamma;
    std::vector<double> expected =
        chi == 0.0 ? std::vector<double>{180.0} : std::vector<double>{180.0 - 0.5 * chi,
                                                                       180.0 + 0.5 * chi};
    const double expected_rise = chi == 0.0 ? 2.0 * kTwoPi : kTwoPi;
    bool ok = c.jumps.size() == expected.size();
    detail << "chi=" << fmt(chi) << ":";
    for (std::size_t k = 0; k < c.jumps.size(); ++k) {
      const PhaseJump& j = c.jumps[k];
      const double center = rad_to_deg(j.phi_center);
      detail << " [" << fmt(center, 8) << " deg, rise " << fmt(j.rise / kPi, 10) << " pi]";
      if (k < expected.size()) {
        ok = ok && std::abs(center - expected[k]) <= 0.1;
        // Magnitude 2pi (4pi merged); sign must follow the net change.
        ok = ok && std::abs(std::abs(j.rise) - expected_rise) <= 1e-6;
        ok = ok && (j.rise > 0.0) == (net > 0.0);
      }
    }
    detail << (ok ? "" : " FAIL") << "; ";
    r.passed = r.passed && ok;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.detail = detail.str();
  return r;
}

// 3 ---------------------------------------------------------------------------
CriterionResult steepening(const Hooks& hooks) {
  CriterionResult r{3, "steepening", true, {}, 0.0};
  const auto t0 = Clock::now();
  std::ostringstream detail;
  std::vector<std::vector<double>> widths;
  for (double theta : {20.0, 10.0, 5.0, 2.0}) {
    const PhaseCurve c = hooked_sweep(hooks, theta, 120.0);
    std::vector<double> w;
    for (const auto& j : c.jumps) w.push_back(rad_to_deg(j.width));
    detail << "theta=" << fmt(theta) << ": widths";
    for (double x : w) detail << ' ' << fmt(x, 5);
    detail << " deg; ";
    if (w.size() != 2) r.passed = false;
    widths.push_back(std::move(w));
  }
  for (std::size_t i = 1; r.passed && i < widths.size(); ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      if (!(widths[i][k] < widths[i - 1][k])) r.passed = false;
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.detail = detail.str();
  return r;
}

// 4 ---------------------------------------------------------------------------
CriterionResult area_phase_law() {
  CriterionResult r{4, "area-phase law", false, {}, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4004);
  double max_err = 0.0;
  int done = 0;
  while (done < 1000) {
    const QubitState a = random_qubit(rng);
    const QubitState b = random_qubit(rng);
    const QubitState c = random_qubit(rng);
    double gamma = 0.0;
    double area = 0.0;
    try {
      gamma = three_vertex_phase(a, b, c);
      area = spherical_triangle_signed_area(bloch_from_qubit(a), bloch_from_qubit(b),
                                            bloch_from_qubit(c));
    } catch (const Error&) {
      continue;  // degenerate draw; resample
    }
    max_err = std::max(max_err, std::abs(wrap_angle(gamma + 0.5 * area)));
    ++done;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = max_err < 1e-9;
  r.detail = "1000 triples, max |wrap(gamma + area/2)| = " + fmt(max_err) + " (tol 1e-9)";
  return r;
}

// 5 ---------------------------------------------------------------------------
CriterionResult majorana_roundtrip() {
  CriterionResult r{5, "majorana roundtrip", false, {}, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i) {
    SymmetricState s;
    if (i < 900) {
      s = random_symmetric(rng);
    } else {
      // Near-degenerate: two stars within 1e-3..1e-12 of each other, or a
      // star within the same distance of the |V> pole.
      const QubitState p = random_qubit(rng);
      const double eps = std::pow(10.0, -3.0 - 9.0 * unit(rng));
      const QubitState q(p.amp_h() + eps * Complex(unit(rng), unit(rng)), p.amp_v());
      s = (i % 2 == 0) ? symmetrize(p, q)
                       : symmetrize(QubitState(Complex(eps), Complex(1.0)), random_qubit(rng));
    }
    const auto [p, q] = majorana_decompose(s);
    worst = std::min(worst, fidelity(symmetrize(p, q), s));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = worst >= 1.0 - 1e-9;
  r.detail = "1000 states (100 near-degenerate), min fidelity = 1 - " + fmt(1.0 - worst);
  return r;
}

// 6 ---------------------------------------------------------------------------
CriterionResult eraser_equivalence() {
  CriterionResult r{6, "eraser equivalence", false, {}, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6006);
  const std::vector<double> deltas = delta_grid(100);
  double max_err = 0.0;
  int done = 0;
  while (done < 500) {
    const std::array<SymmetricState, 4> s{random_symmetric(rng), random_symmetric(rng),
                                          random_symmetric(rng), random_symmetric(rng)};
    bool separated = true;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        if (std::abs(inner(s[i], s[j])) < 0.05) separated = false;
      }
    }
    if (!separated) continue;
    const double measured = phase_variation(s[0], s[1], s[2], s[3], deltas);
    const double direct =
        three_vertex_phase(s[0], s[1], s[3]) - three_vertex_phase(s[0], s[1], s[2]);
    max_err = std::max(max_err, std::abs(wrap_angle(measured - direct)));
    ++done;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = max_err < 1e-9;
  r.detail = "500 triplets, max |wrap(fringe shift - phase difference)| = " + fmt(max_err) +
             " (tol 1e-9)";
  return r;
}

// 7 ---------------------------------------------------------------------------
CriterionResult projection_chain() {
  CriterionResult r{7, "projection-chain equivalence", false, {}, 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> chi_dist(0.0, 360.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 360.0);
  std::uniform_real_distribution<double> theta_dist(5.0, 85.0);
  double max_mag = 0.0;
  double max_ratio = 0.0;
  double max_proj = 0.0;
  for (int i = 0; i < 200; ++i) {
    const TripletParams p =
        TripletParams::from_degrees(theta_dist(rng), chi_dist(rng), phi_dist(rng));
    const ConstituentStates st = make_states(p);
    const Triplet t = make_triplet(p);
    const ProjectionChain chain(st.psi3, st.psi3_primed);
    const Complex n1 = chain.normalized_amplitude(t.first);
    const Complex n2 = chain.normalized_amplitude(t.second);
    const Complex d1 = projection_amplitude(t.first, t.third);
    const Complex d2 = projection_amplitude(t.second, t.third);
    max_mag = std::max({max_mag, std::abs(std::abs(n1) - std::abs(d1)),
                        std::abs(std::abs(n2) - std::abs(d2))});
    const Complex ratio_chain = n1 / n2;
    const Complex ratio_direct = d1 / d2;
    max_ratio = std::max(max_ratio,
                         std::abs(ratio_chain - ratio_direct) / std::max(1.0, std::abs(ratio_direct)));
    // The effective projector is the third state itself, up to phase.
    max_proj = std::max(max_proj, std::abs(1.0 - std::abs(chain.normalized_amplitude(t.third))));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = max_mag <= 1e-12 && max_ratio <= 1e-12 && max_proj <= 1e-12;
  r.detail = "200 (chi, phi) draws: max ||chain| - |direct|| = " + fmt(max_mag) +
             ", max arm-ratio mismatch = " + fmt(max_ratio) +
             ", max |1 - |<projector|third>|| = " + fmt(max_proj) + " (tol 1e-12)";
  return r;
}

// 8 ---------------------------------------------------------------------------
CriterionResult noise_robustness() {
  CriterionResult r{8, "noise robustness", false, {}, 0.0};
  const auto t0 = Clock::now();
  const Triplet t = make_triplet(TripletParams::from_degrees(10.0, 120.0, 60.0));
  const std::vector<double> deltas = delta_grid(100);
  const double truth = extract_fringe_phase(fringe_trace(t.first, t.second, t.third, deltas)).phase;

  constexpr double kTolerance = 5e-3;
  int within = 0;
  std::vector<double> sigmas;
  for (int trial = 0; trial < 1000; ++trial) {
    const FringeTrace trace =
        fringe_trace(t.first, t.second, t.third, deltas,
                     NoiseModel::poisson(1e5, 0x8000ULL + static_cast<std::uint64_t>(trial)));
    const FringeFit fit = extract_fringe_phase(trace);
    if (std::abs(wrap_angle(fit.phase - truth)) < kTolerance) ++within;
    sigmas.push_back(fit.phase_sigma);
  }
  std::nth_element(sigmas.begin(), sigmas.begin() + 500, sigmas.end());
  const double sigma = sigmas[500];
  // 99% two-sided normal quantile: the covariance says the tolerance is attainable.
  const bool covariance_ok = 2.576 * sigma < kTolerance;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = within >= 990 && covariance_ok && r.seconds < 30.0;
  r.detail = std::to_string(within) + "/1000 trials within 5 mrad (need 990); fit sigma = " +
             fmt(sigma * 1e3) + " mrad";
  if (!covariance_ok) r.detail += "; covariance predicts tolerance unattainable";
  if (r.seconds >= 30.0) r.detail += "; runtime over 30 s";
  return r;
}

// 9 ---------------------------------------------------------------------------
CriterionResult offset_fitting() {
  CriterionResult r{9, "offset fitting", false, {}, 0.0};
  const auto t0 = Clock::now();
  const TripletParams base = TripletParams::from_degrees(10.0, 120.0, 0.0);
  const auto theory = [&](double phi) {
    return analytic_total_phase({base.theta, base.chi, phi});
  };
  constexpr double kOffset = 0.3;
  constexpr double kSigma = 0.05;
  constexpr int kPoints = 50;
  const double tolerance = 3.0 * kSigma / std::sqrt(static_cast<double>(kPoints));
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> phi_dist(0.0, kTwoPi);
  std::normal_distribution<double> noise(0.0, kSigma);
  int within = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<double, double>> measured;
    for (int i = 0; i < kPoints; ++i) {
      const double phi = phi_dist(rng);
      measured.emplace_back(phi, theory(phi) + kOffset + noise(rng));
    }
    const OffsetFit fit = fit_offset(measured, theory);
    if (std::abs(wrap_angle(fit.offset - kOffset)) <= tolerance) ++within;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = within >= 495;
  r.detail = std::to_string(within) + "/500 trials within " + fmt(tolerance) +
             " rad of 0.3 (need 495)";
  return r;
}

// 10 --------------------------------------------------------------------------
CriterionResult figure_reproduction() {
  CriterionResult r{10, "figure reproduction", true, {}, 0.0};
  const auto t0 = Clock::now();
  const auto dir = std::filesystem::temp_directory_path() /
                   ("tvgp_figures_" + std::to_string(std::random_device{}()));
  const auto specs = reproduce_figures(dir);

  // Panels and caption parameter sets that must be present.
  const std::vector<std::tuple<std::string, double, double>> required = {
      {"2c", 2, 120},  {"2c", 10, 120}, {"2c", 20, 120}, {"2c", 45, 120},
      {"2d", 10, 0},   {"2d", 10, 60},  {"2d", 10, 120}, {"2d", 10, 180},
      {"4b", 10, 0},   {"4d", 10, 180}, {"5", 10, 0},    {"5", 10, 180}};
  for (const auto& [panel, theta, chi] : required) {
    const bool found = std::any_of(specs.begin(), specs.end(), [&](const FigureCurveSpec& s) {
      return s.panel == panel && s.theta_deg == theta && s.chi_deg == chi;
    });
    if (!found) {
      r.passed = false;
      r.detail += "missing " + panel + " theta=" + fmt(theta) + " chi=" + fmt(chi) + "; ";
    }
  }

  double worst_gain = 0.0;
  double worst_step = 0.0;
  for (const auto& spec : specs) {
    std::ifstream in(dir / spec.file_name());
    const auto samples = io::read_phase_curve_csv(in);
    const double gain = samples.back().gamma - samples.front().gamma;
    worst_gain = std::max(worst_gain, std::abs(std::abs(gain) - 2.0 * kTwoPi));
    for (std::size_t i = 1; i < samples.size(); ++i) {
      worst_step = std::max(worst_step, std::abs(samples[i].gamma - samples[i - 1].gamma));
    }
  }
  std::filesystem::remove_all(dir);
  r.passed = r.passed && worst_gain <= 1e-6 && worst_step < 0.5 * kPi;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.detail += std::to_string(specs.size()) + " curves, max ||gain| - 4pi| = " + fmt(worst_gain) +
              ", max adjacent step = " + fmt(worst_step) + " rad (< pi/2)";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const Hooks& hooks) {
  switch (id) {
    case 1: return oracle_equivalence(hooks);
    case 2: return jump_law(hooks);
    case 3: return steepening(hooks);
    case 4: return area_phase_law();
    case 5: return majorana_roundtrip();
    case 6: return eraser_equivalence();
    case 7: return projection_chain();
    case 8: return noise_robustness();
    case 9: return offset_fitting();
    case 10: return figure_reproduction();
    default: throw InvalidArgument("no acceptance criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_all(const Hooks& hooks) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, hooks));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name +
         ": " + r.detail;
}

}  // namespace tvgp::acceptance
