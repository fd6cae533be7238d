/**
 * @file errors.hpp
 * @brief Exception hierarchy for the qaskey library.
 *
 * Every error thrown by the library derives from qaskey::Error, which in turn
 * derives from std::runtime_error.  Numerical kernels never return NaN/Inf to
 * signal failure; they throw, so that callers (in particular the automatic
 * representation-fallback logic) can switch strategies.
 */

#ifndef QASKEY_ERRORS_HPP
#define QASKEY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qaskey {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of an operation
/// (e.g. |q| >= 1 for an infinite product, vanishing denominator factor).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// An infinite sum or product failed to meet its tail-bound certificate
/// within the iteration cap.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// A nonterminating series of divergent type was requested.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(what) {}
};

/// A transformation was applied to a series whose shape (parameter counts,
/// termination, offset) does not match the transformation's pattern.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

/// A representation's denominator parameter hit (a neighborhood of) the
/// forbidden set; the caller should fall back to another representation.
class SingularRepresentationError : public Error {
 public:
  explicit SingularRepresentationError(const std::string& what)
      : Error(what) {}
};

/// Quadrature refinement stalled before reaching the requested tolerance.
class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& what) : Error(what) {}
};

/// An exact evaluation would lose more significant digits than the active
/// precision budget permits (e.g. q^{-2 binom(n,2)} growth past the degree
/// cap of the configured real type).
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(what) {}
};

/// The 3-point linear system used for recurrence extraction is degenerate.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what) : Error(what) {}
};

/// A pole-order probe failed to stabilize (no pole of the requested order).
class PoleOrderError : public Error {
 public:
  explicit PoleOrderError(const std::string& what) : Error(what) {}
};

/// Malformed CLI / suite configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace qaskey

#endif  // QASKEY_ERRORS_HPP
