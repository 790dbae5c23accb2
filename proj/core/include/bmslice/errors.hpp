#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bmslice {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Construction-time rejection of a body (zero generator, rank-deficient
/// generator set, too few generators, bad dimension).
class InvalidBody : public Error {
 public:
  using Error::Error;
};

/// The H-representation support LP is unbounded, i.e. the facet functionals
/// fail to span.
class UnboundedBody : public Error {
 public:
  using Error::Error;
};

class NotFullDimensional : public Error {
 public:
  using Error::Error;
};

/// Iterative ellipsoid solver exceeded its iteration budget. Carries the
/// partial solver state so callers can dump diagnostics.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, std::vector<double> weights,
                double achieved_epsilon, long iterations)
      : Error(what),
        weights(std::move(weights)),
        achieved_epsilon(achieved_epsilon),
        iterations(iterations) {}

  std::vector<double> weights;
  double achieved_epsilon = 0.0;
  long iterations = 0;
};

/// The map handed to the equivariant-extension combinator failed the
/// orthogonal-equivariance spot check on the slice.
class NotEquivariantOnSlice : public Error {
 public:
  using Error::Error;
};

/// JSON input could not be parsed; line/column refer to the input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line(line), column(column) {}

  int line = 0;
  int column = 0;
};

}  // namespace bmslice
