#include "tvgp/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tvgp/acceptance.hpp"
#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"
#include "tvgp/eraser_sim.hpp"
#include "tvgp/figures.hpp"
#include "tvgp/io.hpp"
#include "tvgp/triplet_model.hpp"

namespace tvgp::cli {

namespace {

// Raised for a bad flag value; the message names the flag.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhiRange {
  double start = 0.0;
  double stop = 360.0;
  int points = 721;
};

PhiRange parse_phi_range(const std::string& text) {
  PhiRange r;
  std::stringstream ss(text);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) ||
      a.empty() || b.empty() || n.empty()) {
    throw ValidationError("--phi: expected start:stop:points, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    r.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    r.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    r.points = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw ValidationError("--phi: cannot parse '" + text + "'");
  }
  if (!(r.stop > r.start)) throw ValidationError("--phi: stop must exceed start");
  if (r.points < 3) throw ValidationError("--phi: need at least 3 points");
  return r;
}

void check_theta(double theta, bool allow_zero) {
  const bool ok = allow_zero ? (theta >= 0.0 && theta < 180.0) : (theta > 0.0 && theta < 180.0);
  if (!ok) {
    throw ValidationError(allow_zero ? "--theta: must lie in [0, 180) degrees"
                                     : "--theta: must lie in (0, 180) degrees (theta = 0 is "
                                       "degenerate: psi1 = psi2)");
  }
}

void check_chi(double chi) {
  if (!(chi >= 0.0 && chi < 360.0)) throw ValidationError("--chi: must lie in [0, 360) degrees");
}

// Writes via the callback to a file, or to `out` when path is "-".
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open output file '" + path + "'");
  write(file);
}

struct PhaseCurveArgs {
  double theta = 0.0;
  double chi = 0.0;
  std::string phi = "0:360:721";
  std::string format = "csv";
  std::string out = "-";
};

int phase_curve(const PhaseCurveArgs& a, std::ostream& out) {
  check_theta(a.theta, false);
  check_chi(a.chi);
  const PhiRange range = parse_phi_range(a.phi);
  const std::vector<double> grid =
      linear_grid(deg_to_rad(range.start), deg_to_rad(range.stop), range.points);
  const PhaseCurve curve = sweep_phi(deg_to_rad(a.theta), deg_to_rad(a.chi), grid);
  emit(a.out, out, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::json j = io::phase_curve_json(curve);
      j["params"]["phi_start_deg"] = range.start;
      j["params"]["phi_stop_deg"] = range.stop;
      j["params"]["phi_points"] = range.points;
      os << j.dump(2) << '\n';
    } else {
      io::write_phase_curve_csv(os, curve);
    }
  });
  return kOk;
}

struct FringeArgs {
  double theta = 0.0;
  double chi = 0.0;
  double phi = 0.0;
  int delta_steps = 100;
  double noise_photons = 0.0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
};

int fringe(const FringeArgs& a, std::ostream& out, std::ostream& err) {
  check_theta(a.theta, true);
  check_chi(a.chi);
  if (!std::isfinite(a.phi)) throw ValidationError("--phi: must be finite");
  if (a.delta_steps < 3) throw ValidationError("--delta-steps: need at least 3");
  if (!(a.noise_photons >= 0.0)) throw ValidationError("--noise-photons: must be >= 0");

  const Triplet t = make_triplet(TripletParams::from_degrees(a.theta, a.chi, a.phi));
  const NoiseModel noise =
      a.noise_photons > 0.0 ? NoiseModel::poisson(a.noise_photons, a.seed) : NoiseModel::none();
  const FringeTrace trace = fringe_trace(t.first, t.second, t.third, delta_grid(a.delta_steps), noise);

  std::optional<FringeFit> fit;
  int code = kOk;
  std::string summary;
  try {
    fit = extract_fringe_phase(trace);
    summary = "phase_rad=" + io::format_number(fit->phase) +
              " phase_deg=" + io::format_number(rad_to_deg(fit->phase)) +
              " visibility=" + io::format_number(fit->visibility);
  } catch (const ZeroVisibility& e) {
    summary = std::string("error: ") + e.what();
    code = kDegenerate;
  }
  emit(a.out, out, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::json j = io::fringe_json(trace, fit);
      j["params"] = {{"theta_deg", a.theta},
                     {"chi_deg", a.chi},
                     {"phi_deg", a.phi},
                     {"delta_steps", a.delta_steps}};
      os << j.dump(2) << '\n';
    } else {
      io::write_fringe_csv(os, trace);
    }
  });
  // The summary goes to stdout unless stdout already carries the trace.
  std::ostream& report = (a.out == "-" || code != kOk) ? err : out;
  report << summary << '\n';
  return code;
}

int verify(int only, std::ostream& out, std::ostream& err) {
  std::vector<acceptance::CriterionResult> results;
  if (only > 0) {
    results.push_back(acceptance::run_criterion(only));
  } else {
    results = acceptance::run_all();
  }
  bool all = true;
  for (const auto& r : results) {
    out << acceptance::format_line(r) << '\n';
    err << "  criterion " << r.id << " took " << io::format_number(r.seconds) << " s\n";
    all = all && r.passed;
  }
  out << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-vertex geometric phase of two-photon polarization qutrits", "tvgp"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  PhaseCurveArgs pc;
  auto* pc_cmd = app.add_subcommand("phase-curve", "Unwrapped phase vs phi for one (theta, chi)");
  pc_cmd->add_option("--theta", pc.theta, "Half-angle between psi1 and psi2 [deg]")->required();
  pc_cmd->add_option("--chi", pc.chi, "Angle between psi3 and psi3' [deg]")->required();
  pc_cmd->add_option("--phi", pc.phi, "phi grid start:stop:points [deg]");
  pc_cmd->add_option("--format", pc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  pc_cmd->add_option("--out", pc.out, "Output file, '-' for stdout");

  FringeArgs fr;
  auto* fr_cmd = app.add_subcommand("fringe", "Eraser fringe P(delta) for one standard triplet");
  fr_cmd->add_option("--theta", fr.theta, "[deg]")->required();
  fr_cmd->add_option("--chi", fr.chi, "[deg]")->required();
  fr_cmd->add_option("--phi", fr.phi, "[deg]");
  fr_cmd->add_option("--delta-steps", fr.delta_steps, "Samples over one fringe period");
  fr_cmd->add_option("--noise-photons", fr.noise_photons,
                     "Mean photons per sample at unit intensity; 0 = noiseless");
  fr_cmd->add_option("--seed", fr.seed, "Noise seed");
  fr_cmd->add_option("--format", fr.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  fr_cmd->add_option("--out", fr.out, "Output file, '-' for stdout");

  std::string fig_dir = "figures";
  auto* fig_cmd = app.add_subcommand("reproduce-figures", "Write every figure curve as CSV");
  fig_cmd->add_option("--out", fig_dir, "Output directory");

  int only = 0;
  auto* ver_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  ver_cmd->add_option("--criterion", only, "Run a single criterion (1-10)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*pc_cmd) return phase_curve(pc, out);
    if (*fr_cmd) return fringe(fr, out, err);
    if (*fig_cmd) {
      const auto specs = reproduce_figures(fig_dir);
      out << "wrote " << specs.size() << " curves and manifest.json to " << fig_dir << '\n';
      return kOk;
    }
    if (*ver_cmd) {
      if (only < 0 || only > acceptance::kCriterionCount) {
        throw ValidationError("--criterion: must lie in 1..10");
      }
      return verify(only, out, err);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ZeroVisibility& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const GridTooCoarse& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const UndefinedPhase& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  }
  return kOk;
}

}  // namespace tvgp::cli
