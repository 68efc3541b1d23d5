#pragma once

// States, overlaps and the three-vertex geometric phase for a polarization
// qubit and for the symmetric two-photon (qutrit) subspace.
//
// Conventions used throughout the library:
//   |H> = (1, 0), |V> = (0, 1)
//   <a|b> is conjugate-linear in the first argument
//   Bloch map: |H> -> +z, (|H>+|V>)/sqrt2 -> +x, (|H>+i|V>)/sqrt2 -> +y
//   phases are reported on the branch (-pi, pi]

#include <array>
#include <complex>
#include <utility>

namespace tvgp {

using Complex = std::complex<double>;

inline constexpr double kOrthogonalityThreshold = 1e-12;
inline constexpr double kAntipodalThreshold = 1e-9;

class QubitState {
 public:
  /// |H>.
  QubitState() : amp_h_(1.0, 0.0), amp_v_(0.0, 0.0) {}
  /// Normalizes the given amplitudes; throws InvalidArgument on a zero vector.
  QubitState(Complex amp_h, Complex amp_v);

  static QubitState horizontal() { return {}; }
  static QubitState vertical() { return {Complex(0.0), Complex(1.0)}; }

  Complex amp_h() const { return amp_h_; }
  Complex amp_v() const { return amp_v_; }

  /// Same ray, amplitudes multiplied by a unit phase factor.
  QubitState with_global_phase(double phase) const;

 private:
  Complex amp_h_;
  Complex amp_v_;
};

// Amplitudes in the orthonormal symmetric basis {|HH>, (|HV>+|VH>)/sqrt2, |VV>}.
// The antisymmetric singlet is not representable.
class SymmetricState {
 public:
  /// |HH>.
  SymmetricState() : amps_{Complex(1.0), Complex(0.0), Complex(0.0)} {}
  SymmetricState(Complex amp_hh, Complex amp_sym, Complex amp_vv);

  Complex amp_hh() const { return amps_[0]; }
  Complex amp_sym() const { return amps_[1]; }
  Complex amp_vv() const { return amps_[2]; }
  const std::array<Complex, 3>& amplitudes() const { return amps_; }

  SymmetricState with_global_phase(double phase) const;

  /// Components on the full two-photon product basis {HH, HV, VH, VV}.
  std::array<Complex, 4> product_basis() const;

 private:
  std::array<Complex, 3> amps_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// Rescales to unit length; throws InvalidArgument on the zero vector.
  static BlochVector normalized(double x, double y, double z);

  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

Complex inner(const QubitState& a, const QubitState& b);
Complex inner(const SymmetricState& a, const SymmetricState& b);

/// |<a|b>|^2.
double fidelity(const QubitState& a, const QubitState& b);
double fidelity(const SymmetricState& a, const SymmetricState& b);

/// arg <a|c><c|b><b|a>, in (-pi, pi]. Throws UndefinedPhase when the
/// product magnitude is below kOrthogonalityThreshold.
double three_vertex_phase(const QubitState& a, const QubitState& b, const QubitState& c);
double three_vertex_phase(const SymmetricState& a, const SymmetricState& b,
                          const SymmetricState& c);

/// Normalized |p>|q> + |q>|p>. Exactly symmetric in its arguments.
SymmetricState symmetrize(const QubitState& p, const QubitState& q);

/// The two Majorana constituents of a symmetric two-photon state: the
/// unordered pair {p, q} with symmetrize(p, q) equal to s up to a global phase.
std::pair<QubitState, QubitState> majorana_decompose(const SymmetricState& s);

BlochVector bloch_from_qubit(const QubitState& p);
QubitState qubit_from_bloch(const BlochVector& v);

/// Oriented solid angle of the geodesic triangle v1 -> v2 -> v3, in (-2pi, 2pi].
/// Positive for the (+z, +x, +y) octant. Satisfies
/// three_vertex_phase(a, b, c) == -area / 2 (mod 2pi).
/// Throws DegenerateTriangle if two vertices are antipodal.
double spherical_triangle_signed_area(const BlochVector& v1, const BlochVector& v2,
                                      const BlochVector& v3);

}  // namespace tvgp
