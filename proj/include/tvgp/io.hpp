#pragma once

// CSV and JSON encodings of curves, fringe traces and states.
//
// CSV numbers use 15 significant digits. JSON layout:
//   phase curve: {"params": {...}, "samples": [{"phi_deg", "gamma_rad", "gamma_deg"}],
//                 "jumps": [{"phi_center_deg", "rise_rad", "width_deg"}]}
//   fringe:      {"params": {...}, "noise": {...}, "samples": [{"delta_rad", "intensity"}],
//                 "fit": {"phase_rad", "visibility", ...}}
//   qubit:       {"h": [re, im], "v": [re, im]}
//   symmetric:   {"hh": [re, im], "sym": [re, im], "vv": [re, im]}

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvgp/eraser_sim.hpp"
#include "tvgp/phase_core.hpp"
#include "tvgp/triplet_model.hpp"

namespace tvgp::io {

std::string format_number(double x);

void write_phase_curve_csv(std::ostream& os, const PhaseCurve& curve);
/// Parses the CSV written above back into samples (radians).
std::vector<PhaseSample> read_phase_curve_csv(std::istream& is);
nlohmann::json phase_curve_json(const PhaseCurve& curve);

void write_fringe_csv(std::ostream& os, const FringeTrace& trace);
FringeTrace read_fringe_csv(std::istream& is);
nlohmann::json fringe_json(const FringeTrace& trace, const std::optional<FringeFit>& fit);

nlohmann::json to_json(const QubitState& s);
nlohmann::json to_json(const SymmetricState& s);
QubitState qubit_from_json(const nlohmann::json& j);
SymmetricState symmetric_from_json(const nlohmann::json& j);

}  // namespace tvgp::io
