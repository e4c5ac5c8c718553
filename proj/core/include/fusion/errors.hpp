#ifndef FUSION_ERRORS_HPP
#define FUSION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fusion {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dimension, block-count or index mismatches between operands.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A numerical condition failed: matrix not Hermitian, not positive
/// definite, numerically singular, all-zero input, or a candidate
/// operator that does not factor as a scaled projector.
class NumericError : public Error {
public:
  using Error::Error;
};

/// A mathematical precondition of the requested operation is not met,
/// e.g. the input is not a fusion frame or not a fusion Riesz basis.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration of a generator (lattice, filter bank, grid).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input file (CSV, JSON).
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace fusion

#endif
