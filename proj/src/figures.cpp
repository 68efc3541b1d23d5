#include "tvgp/figures.hpp"

#include <fstream>

#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"
#include "tvgp/io.hpp"
#include "tvgp/triplet_model.hpp"

namespace tvgp {

namespace {

std::string compact(double deg) {
  std::string s = io::format_number(deg);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

std::string FigureCurveSpec::file_name() const {
  return "fig" + panel + "_theta" + compact(theta_deg) + "_chi" + compact(chi_deg) + ".csv";
}

std::vector<FigureCurveSpec> figure_curve_specs() {
  std::vector<FigureCurveSpec> specs;
  for (double theta : {2.0, 10.0, 20.0, 45.0}) specs.push_back({"2c", theta, 120.0});
  for (double chi : {0.0, 60.0, 120.0, 180.0}) specs.push_back({"2d", 10.0, chi});
  for (double theta : {10.0, 20.0, 45.0}) specs.push_back({"4b", theta, 0.0});
  for (double theta : {10.0, 20.0, 45.0}) specs.push_back({"4d", theta, 180.0});
  for (double chi : {0.0, 45.0, 90.0, 135.0, 180.0}) specs.push_back({"5", 10.0, chi});
  return specs;
}

std::vector<FigureCurveSpec> reproduce_figures(const std::filesystem::path& dir,
                                               int phi_points) {
  std::filesystem::create_directories(dir);
  const std::vector<double> grid = linear_grid(0.0, kTwoPi, phi_points);
  const auto specs = figure_curve_specs();

  nlohmann::json manifest;
  manifest["phi_points"] = phi_points;
  auto& curves = manifest["curves"] = nlohmann::json::array();
  for (const auto& spec : specs) {
    const PhaseCurve curve = sweep_phi(deg_to_rad(spec.theta_deg), deg_to_rad(spec.chi_deg), grid);
    std::ofstream out(dir / spec.file_name());
    if (!out) throw Error("cannot write " + (dir / spec.file_name()).string());
    io::write_phase_curve_csv(out, curve);
    nlohmann::json entry = {{"panel", spec.panel},
                            {"theta_deg", spec.theta_deg},
                            {"chi_deg", spec.chi_deg},
                            {"file", spec.file_name()},
                            {"rows", curve.samples.size()}};
    entry["jumps"] = io::phase_curve_json(curve)["jumps"];
    curves.push_back(std::move(entry));
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error("cannot write manifest.json");
  out << manifest.dump(2) << '\n';
  return specs;
}

}  // namespace tvgp
