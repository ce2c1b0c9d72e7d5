#pragma once

#include <stdexcept>
#include <string>

namespace affq {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group element outside the connected component (a <= 0), or a = 0 for a character.
class InvalidGroupElement : public Error {
 public:
  using Error::Error;
};

/// The Kirillov form was requested on a point orbit.
class DegenerateOrbit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Grid shape, domain tag or lattice mismatch between operands.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// Pseudo-differential series cannot be resolved on the grid, or its terms blow up.
class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

/// Resampled data is not band-limited enough for spectral interpolation.
class InterpolationError : public Error {
 public:
  using Error::Error;
};

/// A shift moves a measurable fraction of the L2 mass out of the truncated window.
class WindowError : public Error {
 public:
  WindowError(const std::string& what, double mass_loss) : Error(what), mass_loss_(mass_loss) {}
  double mass_loss() const noexcept { return mass_loss_; }

 private:
  double mass_loss_;
};

/// Explicit RK4 step outside the stability interval of the discretized operator.
class CflViolation : public Error {
 public:
  CflViolation(const std::string& what, double courant) : Error(what), courant_(courant) {}
  double courant() const noexcept { return courant_; }

 private:
  double courant_;
};

}  // namespace affq
