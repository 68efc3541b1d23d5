#pragma once

#include <stdexcept>
#include <string>

namespace tvgp {

// Base class for every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some pair of states is (numerically) orthogonal, so the overlap product
// has no meaningful argument.
class UndefinedPhase : public Error {
 public:
  explicit UndefinedPhase(double product_magnitude)
      : Error("three-vertex phase undefined: |overlap product| = " +
              std::to_string(product_magnitude)),
        magnitude_(product_magnitude) {}
  double magnitude() const { return magnitude_; }

 private:
  double magnitude_;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class Unreachable : public Error {
 public:
  Unreachable(const std::string& what, double best_infidelity)
      : Error(what), best_infidelity_(best_infidelity) {}
  double best_infidelity() const { return best_infidelity_; }

 private:
  double best_infidelity_;
};

class ZeroVisibility : public Error {
 public:
  explicit ZeroVisibility(double visibility)
      : Error("fringe visibility too small: " + std::to_string(visibility)),
        visibility_(visibility) {}
  double visibility() const { return visibility_; }

 private:
  double visibility_;
};

// Raised for argument/range violations (degenerate sweep parameters, bad grids).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace tvgp
