#include "tvgp/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"

namespace tvgp::io {

namespace {

std::vector<std::vector<double>> read_csv_rows(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw InvalidArgument("CSV header mismatch, expected '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex complex_from(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_phase_curve_csv(std::ostream& os, const PhaseCurve& curve) {
  os << "phi_deg,gamma_rad_unwrapped,gamma_deg_unwrapped\n";
  for (const auto& s : curve.samples) {
    os << format_number(rad_to_deg(s.phi)) << ',' << format_number(s.gamma) << ','
       << format_number(rad_to_deg(s.gamma)) << '\n';
  }
}

std::vector<PhaseSample> read_phase_curve_csv(std::istream& is) {
  std::vector<PhaseSample> out;
  for (const auto& row : read_csv_rows(is, "phi_deg,gamma_rad_unwrapped,gamma_deg_unwrapped")) {
    if (row.size() != 3) throw InvalidArgument("phase curve CSV row must have 3 columns");
    out.push_back({deg_to_rad(row[0]), row[1]});
  }
  return out;
}

nlohmann::json phase_curve_json(const PhaseCurve& curve) {
  nlohmann::json j;
  j["params"] = {{"theta_deg", rad_to_deg(curve.theta)}, {"chi_deg", rad_to_deg(curve.chi)}};
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const auto& s : curve.samples) {
    samples.push_back({{"phi_deg", rad_to_deg(s.phi)},
                       {"gamma_rad", s.gamma},
                       {"gamma_deg", rad_to_deg(s.gamma)}});
  }
  auto& jumps = j["jumps"] = nlohmann::json::array();
  for (const auto& jump : curve.jumps) {
    jumps.push_back({{"phi_center_deg", rad_to_deg(jump.phi_center)},
                     {"rise_rad", jump.rise},
                     {"rise_over_2pi", jump.rise / kTwoPi},
                     {"width_deg", rad_to_deg(jump.width)}});
  }
  return j;
}

void write_fringe_csv(std::ostream& os, const FringeTrace& trace) {
  os << "delta_rad,intensity\n";
  for (std::size_t i = 0; i < trace.delta.size(); ++i) {
    os << format_number(trace.delta[i]) << ',' << format_number(trace.intensity[i]) << '\n';
  }
}

FringeTrace read_fringe_csv(std::istream& is) {
  FringeTrace trace;
  for (const auto& row : read_csv_rows(is, "delta_rad,intensity")) {
    if (row.size() != 2) throw InvalidArgument("fringe CSV row must have 2 columns");
    trace.delta.push_back(row[0]);
    trace.intensity.push_back(row[1]);
  }
  return trace;
}

nlohmann::json fringe_json(const FringeTrace& trace, const std::optional<FringeFit>& fit) {
  nlohmann::json j;
  if (trace.noise.kind == NoiseModel::Kind::kPoisson) {
    j["noise"] = {{"kind", "poisson"},
                  {"mean_photons", trace.noise.mean_photons},
                  {"seed", trace.noise.seed}};
  } else {
    j["noise"] = {{"kind", "none"}};
  }
  auto& samples = j["samples"] = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.delta.size(); ++i) {
    samples.push_back({{"delta_rad", trace.delta[i]}, {"intensity", trace.intensity[i]}});
  }
  if (fit) {
    j["fit"] = {{"phase_rad", fit->phase},
                {"phase_deg", rad_to_deg(fit->phase)},
                {"visibility", fit->visibility},
                {"mean", fit->mean},
                {"phase_sigma_rad", fit->phase_sigma},
                {"visibility_sigma", fit->visibility_sigma}};
  }
  return j;
}

nlohmann::json to_json(const QubitState& s) {
  return {{"h", complex_json(s.amp_h())}, {"v", complex_json(s.amp_v())}};
}

nlohmann::json to_json(const SymmetricState& s) {
  return {{"hh", complex_json(s.amp_hh())},
          {"sym", complex_json(s.amp_sym())},
          {"vv", complex_json(s.amp_vv())}};
}

QubitState qubit_from_json(const nlohmann::json& j) {
  return {complex_from(j.at("h")), complex_from(j.at("v"))};
}

SymmetricState symmetric_from_json(const nlohmann::json& j) {
  return {complex_from(j.at("hh")), complex_from(j.at("sym")), complex_from(j.at("vv"))};
}

}  // namespace tvgp::io
