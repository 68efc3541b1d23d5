#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tvgp {

struct FigureCurveSpec {
  std::string panel;  // e.g. "2c"
  double theta_deg;
  double chi_deg;

  std::string file_name() const;
};

/// Every theoretical curve of the figure panels, in emission order.
std::vector<FigureCurveSpec> figure_curve_specs();

/// Writes one phase-curve CSV per spec plus manifest.json into dir
/// (created if needed). phi runs over [0, 360] deg with phi_points samples.
std::vector<FigureCurveSpec> reproduce_figures(const std::filesystem::path& dir,
                                               int phi_points = 721);

}  // namespace tvgp
