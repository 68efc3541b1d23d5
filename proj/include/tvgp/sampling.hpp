#pragma once

#include <random>

#include "tvgp/phase_core.hpp"

namespace tvgp {

/// Haar-random qubit (normalized complex Gaussian vector).
inline QubitState random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
}

/// Unitarily invariant random state of the symmetric subspace.
inline SymmetricState random_symmetric(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
}

}  // namespace tvgp
