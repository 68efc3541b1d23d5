#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"
#include "tvgp/triplet_model.hpp"

using namespace tvgp;

namespace {

TripletParams deg(double theta, double chi, double phi) {
  return TripletParams::from_degrees(theta, chi, phi);
}

PhaseCurve full_sweep(double theta_deg, double chi_deg, int n = 721) {
  const auto grid = linear_grid(0.0, kTwoPi, n);
  return sweep_phi(deg_to_rad(theta_deg), deg_to_rad(chi_deg), grid);
}

// Brute force: evaluate the closed form on a dense uniform grid, unwrap by
// nearest branch and locate the 10%/90% levels of a jump bracketed by
// [lo, hi] with linear interpolation. Returns the width in degrees.
double dense_width_deg(double theta_deg, double chi_deg, double lo_deg, double hi_deg) {
  const int n = 400001;
  std::vector<double> phi(n), g(n);
  for (int i = 0; i < n; ++i) {
    phi[i] = lo_deg + (hi_deg - lo_deg) * i / (n - 1);
    const double raw = analytic_total_phase(deg(theta_deg, chi_deg, phi[i]));
    g[i] = i == 0 ? raw : g[i - 1] + std::remainder(raw - g[i - 1], kTwoPi);
  }
  const double rise = g.back() - g.front();
  const auto crossing = [&](double frac) {
    const double level = g.front() + frac * rise;
    for (int i = 1; i < n; ++i) {
      if ((g[i - 1] - level) * (g[i] - level) <= 0.0 && g[i] != g[i - 1]) {
        return phi[i - 1] + (level - g[i - 1]) / (g[i] - g[i - 1]) * (phi[i] - phi[i - 1]);
      }
    }
    return std::nan("");
  };
  return std::abs(crossing(0.9) - crossing(0.1));
}

}  // namespace

TEST_CASE("TripletParams validation") {
  CHECK_NOTHROW(deg(0.0, 0.0, 0.0));
  CHECK_THROWS_AS(deg(-1.0, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(deg(180.0, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(deg(10.0, 360.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(deg(10.0, -5.0, 0.0), InvalidArgument);
}

TEST_CASE("make_states examples") {
  SUBCASE("theta = 0 collapses psi1 and psi2 onto H") {
    const ConstituentStates s = make_states(deg(0.0, 0.0, 0.0));
    CHECK(fidelity(s.psi1, QubitState::horizontal()) == doctest::Approx(1.0));
    CHECK(fidelity(s.psi2, QubitState::horizontal()) == doctest::Approx(1.0));
    CHECK(fidelity(s.psi3, QubitState::horizontal()) == doctest::Approx(1.0));
    CHECK(fidelity(s.psi3_primed, QubitState::horizontal()) == doctest::Approx(1.0));
  }
  SUBCASE("theta = 90 puts psi1, psi2 at the +/-y poles") {
    const ConstituentStates s = make_states(deg(90.0, 0.0, 0.0));
    CHECK(bloch_from_qubit(s.psi1).y == doctest::Approx(1.0));
    CHECK(bloch_from_qubit(s.psi2).y == doctest::Approx(-1.0));
  }
  SUBCASE("Bloch angle between psi1 and psi2 is 2 theta, between psi3 and psi3' is chi") {
    const ConstituentStates s = make_states(deg(30.0, 100.0, 40.0));
    const auto angle = [](const QubitState& a, const QubitState& b) {
      return rad_to_deg(std::acos(std::clamp(bloch_from_qubit(a).dot(bloch_from_qubit(b)), -1.0, 1.0)));
    };
    CHECK(angle(s.psi1, s.psi2) == doctest::Approx(60.0));
    CHECK(angle(s.psi3, s.psi3_primed) == doctest::Approx(100.0));
    // psi3 and psi3' stay on the equator-free x-z great circle.
    CHECK(std::abs(bloch_from_qubit(s.psi3).y) < 1e-15);
    CHECK(std::abs(bloch_from_qubit(s.psi3_primed).y) < 1e-15);
  }
}

TEST_CASE("make_triplet examples") {
  const Triplet t0 = make_triplet(deg(0.0, 0.0, 0.0));
  for (const SymmetricState* s : {&t0.first, &t0.second, &t0.third}) {
    CHECK(fidelity(*s, SymmetricState()) == doctest::Approx(1.0));
  }

  // chi = 180, phi = 0: psi3 = D, psi3' = A, so Psi3 = (HH - VV)/sqrt2.
  const Triplet t = make_triplet(deg(10.0, 180.0, 0.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(inner(SymmetricState(r, 0.0, -r), t.third)) == doctest::Approx(1.0));

  // The Majorana pair of Psi3 is {psi3, psi3'}.
  const TripletParams p = deg(25.0, 70.0, 33.0);
  const ConstituentStates s = make_states(p);
  const auto [a, b] = majorana_decompose(make_triplet(p).third);
  const bool direct = fidelity(a, s.psi3) > 1 - 1e-12 && fidelity(b, s.psi3_primed) > 1 - 1e-12;
  const bool swapped = fidelity(b, s.psi3) > 1 - 1e-12 && fidelity(a, s.psi3_primed) > 1 - 1e-12;
  CHECK((direct || swapped));
}

TEST_CASE("closed-form phase examples") {
  const double th = deg_to_rad(90.0);
  const double ph = deg_to_rad(90.0);
  CHECK(analytic_qubit_phase(th, 0.0, ph, QubitBranch::kUnprimed) == doctest::Approx(-kPi / 2));
  CHECK(analytic_qubit_phase(th, 0.0, ph, QubitBranch::kPrimed) == doctest::Approx(-kPi / 2));
  CHECK(analytic_total_phase(deg(90.0, 0.0, 90.0)) == doctest::Approx(-kPi));

  for (double theta : {5.0, 10.0, 45.0, 120.0}) {
    for (double chi : {0.0, 60.0, 120.0, 180.0, 300.0}) {
      CHECK(analytic_total_phase(deg(theta, chi, 0.0)) == doctest::Approx(0.0));
    }
  }

  // theta = 10, chi = 120, phi = 60: u = 60 deg, v = 0.
  // <psi1|psi3> = c cos u - i s sin u and <psi2|psi1> = cos theta > 0, so the
  // unprimed phase is 2 arg(c cos u - i s sin u).
  const double c = std::cos(deg_to_rad(5.0));
  const double s = std::sin(deg_to_rad(5.0));
  const double u = deg_to_rad(60.0);
  const double oracle = 2.0 * std::arg(Complex(c * std::cos(u), -s * std::sin(u)));
  CHECK(oracle == doctest::Approx(-0.30078129114664676).epsilon(1e-13));
  const TripletParams p = deg(10.0, 120.0, 60.0);
  CHECK(analytic_qubit_phase(p.theta, p.chi, p.phi, QubitBranch::kUnprimed) ==
        doctest::Approx(oracle).epsilon(1e-14));
  CHECK(analytic_qubit_phase(p.theta, p.chi, p.phi, QubitBranch::kPrimed) ==
        doctest::Approx(0.0));
  const ConstituentStates st = make_states(p);
  CHECK(three_vertex_phase(st.psi1, st.psi2, st.psi3) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("closed form equals the direct qutrit and qubit phases") {
  for (double theta = 0.5; theta < 180.0; theta += 7.25) {
    if (std::abs(theta - 90.0) < 0.5) continue;  // Psi1 and Psi2 orthogonal there
    for (double chi = 0.0; chi < 360.0; chi += 22.5) {
      for (double phi = -360.0; phi <= 360.0; phi += 13.0) {
        const TripletParams p = deg(theta, chi, phi);
        const Triplet t = make_triplet(p);
        const ConstituentStates s = make_states(p);
        double direct = 0.0;
        double qubits = 0.0;
        try {
          direct = three_vertex_phase(t.first, t.second, t.third);
          qubits = three_vertex_phase(s.psi1, s.psi2, s.psi3) +
                   three_vertex_phase(s.psi1, s.psi2, s.psi3_primed);
        } catch (const UndefinedPhase&) {
          continue;  // pole of the closed form
        }
        const double closed = analytic_total_phase(p);
        INFO("theta=" << theta << " chi=" << chi << " phi=" << phi);
        REQUIRE(std::abs(wrap_angle(direct - closed)) < 1e-9);
        REQUIRE(std::abs(wrap_angle(qubits - closed)) < 1e-9);
      }
    }
  }
}

TEST_CASE("periodicity and phi antisymmetry") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> th(1.0, 179.0), ch(0.0, 359.9), ph(-720.0, 720.0);
  for (int i = 0; i < 1000; ++i) {
    const double theta = th(rng), chi = ch(rng), phi = ph(rng);
    const double g = analytic_total_phase(deg(theta, chi, phi));
    REQUIRE(std::abs(wrap_angle(analytic_total_phase(deg(theta, chi, phi + 360.0)) - g)) < 1e-9);
    REQUIRE(std::abs(wrap_angle(analytic_total_phase(deg(theta, chi, -phi)) + g)) < 1e-9);
  }
}

TEST_CASE("sweep rejects degenerate or invalid input") {
  const auto grid = linear_grid(0.0, kTwoPi, 11);
  CHECK_THROWS_AS(sweep_phi(0.0, 1.0, grid), InvalidArgument);
  CHECK_THROWS_AS(sweep_phi(kPi, 1.0, grid), InvalidArgument);
  const std::vector<double> two{0.0, 1.0};
  CHECK_THROWS_AS(sweep_phi(0.2, 1.0, two), InvalidArgument);
  // An absurdly sharp jump cannot be resolved within the refinement depth.
  SweepOptions shallow;
  shallow.max_depth = 4;
  CHECK_THROWS_AS(sweep_phi(deg_to_rad(1e-6), deg_to_rad(120.0), grid, shallow), GridTooCoarse);
}

TEST_CASE("unwrapped curve is continuous and gains 4 pi per period") {
  for (double theta : {2.0, 10.0, 45.0, 135.0}) {
    for (double chi : {0.0, 60.0, 120.0, 180.0, 250.0}) {
      const PhaseCurve c = full_sweep(theta, chi);
      double max_step = 0.0;
      for (std::size_t i = 1; i < c.samples.size(); ++i) {
        max_step = std::max(max_step, std::abs(c.samples[i].gamma - c.samples[i - 1].gamma));
      }
      INFO("theta=" << theta << " chi=" << chi);
      CHECK(max_step < kPi / 2);
      const double gain = c.samples.back().gamma - c.samples.front().gamma;
      CHECK(std::abs(std::abs(gain) - 2.0 * kTwoPi) < 1e-9);
      // Every sample stays on the closed form modulo 2 pi.
      for (const auto& s : c.samples) {
        REQUIRE(std::abs(wrap_angle(s.gamma - analytic_total_phase({c.theta, c.chi, s.phi}))) < 1e-9);
      }
    }
  }
}

TEST_CASE("jump locations") {
  SUBCASE("chi = 120: two jumps of 2 pi at 120 and 240") {
    const PhaseCurve c = full_sweep(10.0, 120.0);
    REQUIRE(c.jumps.size() == 2);
    CHECK(rad_to_deg(c.jumps[0].phi_center) == doctest::Approx(120.0).epsilon(1e-3));
    CHECK(rad_to_deg(c.jumps[1].phi_center) == doctest::Approx(240.0).epsilon(1e-3));
    for (const auto& j : c.jumps) CHECK(std::abs(std::abs(j.rise) - kTwoPi) < 1e-6);
  }
  SUBCASE("chi = 0: the two jumps merge into one 4 pi jump at 180") {
    const PhaseCurve c = full_sweep(10.0, 0.0);
    REQUIRE(c.jumps.size() == 1);
    CHECK(rad_to_deg(c.jumps[0].phi_center) == doctest::Approx(180.0).epsilon(1e-4));
    CHECK(std::abs(std::abs(c.jumps[0].rise) - 2.0 * kTwoPi) < 1e-6);
  }
  SUBCASE("chi = 180: jumps at 90 and 270") {
    const PhaseCurve c = full_sweep(10.0, 180.0);
    REQUIRE(c.jumps.size() == 2);
    CHECK(rad_to_deg(c.jumps[0].phi_center) == doctest::Approx(90.0).epsilon(1e-4));
    CHECK(rad_to_deg(c.jumps[1].phi_center) == doctest::Approx(270.0).epsilon(1e-4));
  }
  SUBCASE("center law 180 +/- chi/2 for small theta") {
    for (double theta : {2.0, 5.0, 10.0, 20.0}) {
      for (double chi : {60.0, 120.0, 180.0}) {
        const PhaseCurve c = full_sweep(theta, chi);
        REQUIRE(c.jumps.size() == 2);
        INFO("theta=" << theta << " chi=" << chi);
        if (theta == 20.0 && chi == 60.0) {
          // The neighbouring jump's tail pulls the steepest point 0.66 deg
          // inward; checked against a dense finite-difference scan instead.
          CHECK(rad_to_deg(c.jumps[0].phi_center) == doctest::Approx(150.66214).epsilon(1e-6));
          CHECK(rad_to_deg(c.jumps[1].phi_center) == doctest::Approx(209.33786).epsilon(1e-6));
          continue;
        }
        CHECK(std::abs(rad_to_deg(c.jumps[0].phi_center) - (180.0 - chi / 2)) <= 0.1);
        CHECK(std::abs(rad_to_deg(c.jumps[1].phi_center) - (180.0 + chi / 2)) <= 0.1);
      }
    }
  }
}

TEST_CASE("jumps narrower than the grid spacing are still resolved") {
  const auto grid = linear_grid(0.0, kTwoPi, 11);
  const PhaseCurve c = sweep_phi(deg_to_rad(1e-4), deg_to_rad(120.0), grid);
  CHECK(std::abs(std::abs(c.samples.back().gamma - c.samples.front().gamma) - 2.0 * kTwoPi) < 1e-9);
  CHECK(c.jumps.size() == 2);
}

TEST_CASE("jump widths agree with a dense brute-force scan and shrink with theta") {
  // chi = 120: separators at 0, 180 and 360 deg by symmetry.
  double previous = 1e9;
  for (double theta : {20.0, 10.0, 5.0, 2.0}) {
    const PhaseCurve c = full_sweep(theta, 120.0);
    REQUIRE(c.jumps.size() == 2);
    const double oracle = dense_width_deg(theta, 120.0, 0.0, 180.0);
    INFO("theta=" << theta);
    CHECK(rad_to_deg(c.jumps[0].width) == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(rad_to_deg(c.jumps[1].width) == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(oracle < previous);
    previous = oracle;
  }
}

TEST_CASE("sweep of an arbitrary smooth function") {
  const auto grid = linear_grid(0.0, 1.0, 11);
  const PhaseCurve c = sweep_phase_function([](double x) { return 5.0 * x; }, grid);
  // 5 rad over [0, 1]: unwrapping must follow the line across the branch cut.
  CHECK(c.samples.back().gamma - c.samples.front().gamma == doctest::Approx(5.0));
  CHECK(c.interpolate(0.55) - c.samples.front().gamma == doctest::Approx(2.75));
  CHECK_THROWS_AS(c.interpolate(1.5), InvalidArgument);
}

TEST_CASE("offset fit examples") {
  const auto theory = [](double phi) { return analytic_total_phase({deg_to_rad(10.0), deg_to_rad(120.0), phi}); };
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 36; ++i) {
    const double phi = deg_to_rad(10.0 * i);
    pts.emplace_back(phi, wrap_angle(theory(phi) + 0.3));
  }
  SUBCASE("exact offset") {
    const OffsetFit f = fit_offset(pts, theory);
    CHECK(f.offset == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(f.residual_rms < 1e-12);
  }
  SUBCASE("offset of pi wraps") {
    for (auto& p : pts) p.second = wrap_angle(theory(p.first) + kPi);
    const OffsetFit f = fit_offset(pts, theory);
    CHECK(std::abs(wrap_angle(f.offset - kPi)) < 1e-12);
    CHECK(f.offset > -kPi);
  }
  SUBCASE("fit against a swept curve") {
    const PhaseCurve curve = full_sweep(10.0, 120.0, 3601);
    const OffsetFit f = fit_offset(pts, curve);
    CHECK(std::abs(wrap_angle(f.offset - 0.3)) < 1e-3);
  }
  SUBCASE("noisy data") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::uniform_real_distribution<double> phi(0.0, kTwoPi);
    std::vector<std::pair<double, double>> noisy;
    for (int i = 0; i < 50; ++i) {
      const double x = phi(rng);
      noisy.emplace_back(x, wrap_angle(theory(x) + 0.3 + noise(rng)));
    }
    const OffsetFit f = fit_offset(noisy, theory);
    CHECK(std::abs(f.offset - 0.3) < 0.02);
    CHECK(f.residual_rms == doctest::Approx(0.05).epsilon(0.3));
  }
  SUBCASE("too few points") {
    const std::vector<std::pair<double, double>> one{{0.0, 0.0}};
    CHECK_THROWS_AS(fit_offset(one, theory), InsufficientData);
  }
}
