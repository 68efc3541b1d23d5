#include "tvgp/phase_core.hpp"

#include <cmath>

#include "tvgp/angles.hpp"
#include "tvgp/errors.hpp"

namespace tvgp {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Below this |amp_hh| the Majorana polynomial is treated as having lost
// its leading coefficient, i.e. one constituent sits exactly at |V>.
constexpr double kRootAtInfinity = 1e-14;

double phase_of_product(Complex product) {
  const double mag = std::abs(product);
  if (!(mag >= kOrthogonalityThreshold)) throw UndefinedPhase(mag);
  return wrap_angle(std::arg(product));
}

}  // namespace

QubitState::QubitState(Complex amp_h, Complex amp_v) {
  const double norm = std::sqrt(std::norm(amp_h) + std::norm(amp_v));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("QubitState: amplitudes must be finite and not both zero");
  }
  amp_h_ = amp_h / norm;
  amp_v_ = amp_v / norm;
}

QubitState QubitState::with_global_phase(double phase) const {
  const Complex u = std::polar(1.0, phase);
  QubitState out;
  out.amp_h_ = u * amp_h_;
  out.amp_v_ = u * amp_v_;
  return out;
}

SymmetricState::SymmetricState(Complex amp_hh, Complex amp_sym, Complex amp_vv) {
  const double norm = std::sqrt(std::norm(amp_hh) + std::norm(amp_sym) + std::norm(amp_vv));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("SymmetricState: amplitudes must be finite and not all zero");
  }
  amps_ = {amp_hh / norm, amp_sym / norm, amp_vv / norm};
}

SymmetricState SymmetricState::with_global_phase(double phase) const {
  const Complex u = std::polar(1.0, phase);
  SymmetricState out;
  out.amps_ = {u * amps_[0], u * amps_[1], u * amps_[2]};
  return out;
}

std::array<Complex, 4> SymmetricState::product_basis() const {
  const Complex hv = amps_[1] / kSqrt2;
  return {amps_[0], hv, hv, amps_[2]};
}

BlochVector BlochVector::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("BlochVector: zero or non-finite");
  return {x / n, y / n, z / n};
}

Complex inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.amp_h()) * b.amp_h() + std::conj(a.amp_v()) * b.amp_v();
}

Complex inner(const SymmetricState& a, const SymmetricState& b) {
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1] + std::conj(x[2]) * y[2];
}

double fidelity(const QubitState& a, const QubitState& b) { return std::norm(inner(a, b)); }
double fidelity(const SymmetricState& a, const SymmetricState& b) {
  return std::norm(inner(a, b));
}

double three_vertex_phase(const QubitState& a, const QubitState& b, const QubitState& c) {
  return phase_of_product(inner(a, c) * inner(c, b) * inner(b, a));
}

double three_vertex_phase(const SymmetricState& a, const SymmetricState& b,
                          const SymmetricState& c) {
  return phase_of_product(inner(a, c) * inner(c, b) * inner(b, a));
}

SymmetricState symmetrize(const QubitState& p, const QubitState& q) {
  // |p>|q> + |q>|p> = 2 p_h q_h |HH> + (p_h q_v + p_v q_h)(|HV>+|VH>) + 2 p_v q_v |VV>
  const Complex hh = 2.0 * (p.amp_h() * q.amp_h());
  const Complex sym = kSqrt2 * (p.amp_h() * q.amp_v() + p.amp_v() * q.amp_h());
  const Complex vv = 2.0 * (p.amp_v() * q.amp_v());
  return {hh, sym, vv};
}

std::pair<QubitState, QubitState> majorana_decompose(const SymmetricState& s) {
  // Star polynomial a z^2 + b z + c; a root r corresponds to the qubit (1, -r).
  const Complex a = s.amp_hh();
  const Complex b = kSqrt2 * s.amp_sym();
  const Complex c = s.amp_vv();

  Complex disc = std::sqrt(b * b - 4.0 * a * c);
  if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
  const Complex q = -0.5 * (b + disc);

  // Roots q/a and c/q, written as states without dividing.
  if (std::abs(q) == 0.0) {
    // b == 0 and a*c == 0: a coincident pair at one pole.
    return std::abs(a) >= std::abs(c)
               ? std::pair{QubitState::horizontal(), QubitState::horizontal()}
               : std::pair{QubitState::vertical(), QubitState::vertical()};
  }
  const QubitState first =
      std::abs(a) < kRootAtInfinity ? QubitState::vertical() : QubitState(a, -q);
  const QubitState second(q, -c);
  return {first, second};
}

BlochVector bloch_from_qubit(const QubitState& p) {
  const Complex cross = std::conj(p.amp_h()) * p.amp_v();
  return BlochVector::normalized(2.0 * cross.real(), 2.0 * cross.imag(),
                                 std::norm(p.amp_h()) - std::norm(p.amp_v()));
}

QubitState qubit_from_bloch(const BlochVector& v) {
  const double polar = std::atan2(std::hypot(v.x, v.y), v.z);
  const double azimuth = std::atan2(v.y, v.x);
  return {Complex(std::cos(0.5 * polar)), std::polar(std::sin(0.5 * polar), azimuth)};
}

double spherical_triangle_signed_area(const BlochVector& v1, const BlochVector& v2,
                                      const BlochVector& v3) {
  const double d12 = v1.dot(v2);
  const double d23 = v2.dot(v3);
  const double d31 = v3.dot(v1);
  if (d12 < -1.0 + kAntipodalThreshold || d23 < -1.0 + kAntipodalThreshold ||
      d31 < -1.0 + kAntipodalThreshold) {
    throw DegenerateTriangle("spherical triangle has antipodal vertices");
  }
  // v1 . (v2 x v3)
  const double triple = v1.x * (v2.y * v3.z - v2.z * v3.y) + v1.y * (v2.z * v3.x - v2.x * v3.z) +
                        v1.z * (v2.x * v3.y - v2.y * v3.x);
  return 2.0 * std::atan2(triple, 1.0 + d12 + d23 + d31);
}

}  // namespace tvgp
