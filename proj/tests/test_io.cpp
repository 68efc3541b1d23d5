#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"
#include "tvgp/io.hpp"
#include "tvgp/sampling.hpp"

using namespace tvgp;

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(-3.0) == "-3");
  CHECK(std::stod(io::format_number(kPi)) == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("phase curve CSV roundtrip") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> theta(1.0, 170.0), chi(0.0, 359.0);
  for (int k = 0; k < 20; ++k) {
    const PhaseCurve c =
        sweep_phi(deg_to_rad(theta(rng)), deg_to_rad(chi(rng)), linear_grid(0.0, kTwoPi, 181));
    std::stringstream ss;
    io::write_phase_curve_csv(ss, c);
    CHECK(ss.str().rfind("phi_deg,gamma_rad_unwrapped,gamma_deg_unwrapped\n", 0) == 0);
    const auto back = io::read_phase_curve_csv(ss);
    REQUIRE(back.size() == c.samples.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      REQUIRE(std::abs(back[i].phi - c.samples[i].phi) < 1e-12);
      REQUIRE(std::abs(back[i].gamma - c.samples[i].gamma) < 1e-12);
    }
  }
}

TEST_CASE("fringe CSV roundtrip") {
  const FringeTrace t = synthesize_fringe(delta_grid(50), 1.3, 0.6, 0.2);
  std::stringstream ss;
  io::write_fringe_csv(ss, t);
  CHECK(ss.str().rfind("delta_rad,intensity\n", 0) == 0);
  const FringeTrace back = io::read_fringe_csv(ss);
  REQUIRE(back.delta.size() == t.delta.size());
  for (std::size_t i = 0; i < t.delta.size(); ++i) {
    CHECK(std::abs(back.delta[i] - t.delta[i]) < 1e-12);
    CHECK(std::abs(back.intensity[i] - t.intensity[i]) < 1e-12);
  }
}

TEST_CASE("CSV readers reject malformed input") {
  std::istringstream wrong_header("phi,gamma\n0,0\n");
  CHECK_THROWS_AS(io::read_phase_curve_csv(wrong_header), InvalidArgument);
  std::istringstream short_row("phi_deg,gamma_rad_unwrapped,gamma_deg_unwrapped\n1,2\n");
  CHECK_THROWS_AS(io::read_phase_curve_csv(short_row), InvalidArgument);
  std::istringstream empty("");
  CHECK_THROWS_AS(io::read_fringe_csv(empty), InvalidArgument);
}

TEST_CASE("phase curve JSON layout") {
  const PhaseCurve c = sweep_phi(deg_to_rad(10.0), deg_to_rad(120.0), linear_grid(0.0, kTwoPi, 721));
  const nlohmann::json j = io::phase_curve_json(c);
  CHECK(j.at("params").at("theta_deg").get<double>() == doctest::Approx(10.0));
  CHECK(j.at("params").at("chi_deg").get<double>() == doctest::Approx(120.0));
  CHECK(j.at("samples").size() == c.samples.size());
  CHECK(j.at("samples")[0].contains("phi_deg"));
  CHECK(j.at("samples")[0].contains("gamma_rad"));
  REQUIRE(j.at("jumps").size() == 2);
  CHECK(j.at("jumps")[0].at("phi_center_deg").get<double>() == doctest::Approx(120.0).epsilon(1e-3));
  CHECK(std::abs(j.at("jumps")[0].at("rise_over_2pi").get<double>()) == doctest::Approx(1.0));
  CHECK(j.at("jumps")[0].contains("width_deg"));
}

TEST_CASE("fringe JSON layout") {
  const FringeTrace t = synthesize_fringe(delta_grid(20), 1.0, 0.5, 0.1);
  const nlohmann::json plain = io::fringe_json(t, std::nullopt);
  CHECK(plain.at("noise").at("kind") == "none");
  CHECK(plain.at("samples").size() == 20);
  CHECK_FALSE(plain.contains("fit"));
  const nlohmann::json fitted = io::fringe_json(t, extract_fringe_phase(t));
  CHECK(fitted.at("fit").at("phase_rad").get<double>() == doctest::Approx(0.1));
  CHECK(fitted.at("fit").at("visibility").get<double>() == doctest::Approx(0.5));
}

TEST_CASE("state JSON roundtrip") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 200; ++k) {
    const QubitState q = random_qubit(rng);
    const QubitState q2 = io::qubit_from_json(nlohmann::json::parse(io::to_json(q).dump()));
    REQUIRE(std::abs(q2.amp_h() - q.amp_h()) < 1e-15);
    REQUIRE(std::abs(q2.amp_v() - q.amp_v()) < 1e-15);

    const SymmetricState s = random_symmetric(rng);
    const SymmetricState s2 = io::symmetric_from_json(nlohmann::json::parse(io::to_json(s).dump()));
    for (int i = 0; i < 3; ++i) REQUIRE(std::abs(s2.amplitudes()[i] - s.amplitudes()[i]) < 1e-15);
  }
  const nlohmann::json j = io::to_json(QubitState::vertical());
  CHECK(j.at("v")[0].get<double>() == 1.0);
  CHECK(j.at("v")[1].get<double>() == 0.0);
}
