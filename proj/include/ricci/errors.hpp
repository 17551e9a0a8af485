#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

/// Base class for every error raised by the library. The CLI maps these onto
/// process exit codes; library users can catch the specific type they care about.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numerics or solver configuration (step count, tolerances, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A quadrature sample or intermediate value was NaN/Inf.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing failed: g(lo) and g(hi) have the same sign.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// Iteration budget exhausted or residual target not met.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Neither root of the fiber-coefficient quadratic keeps every beta positive.
class NoAdmissibleRoot : public Error {
 public:
  using Error::Error;
};

/// The sign condition on the existence integral is violated.
class ExistenceFailed : public Error {
 public:
  using Error::Error;
};

/// The only soliton closing root is kappa1 = 0 (no non-trivial soliton).
class TrivialSoliton : public Error {
 public:
  using Error::Error;
};

/// Unknown built-in manifold name.
class NotInCatalog : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside [0, s_star].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Profile handed to an entropy routine has the wrong family or broken invariants.
class InvalidProfile : public Error {
 public:
  using Error::Error;
};

/// Warped-product fiber dimension must be an integer >= 2.
class FiberDimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed bundle description file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricci
