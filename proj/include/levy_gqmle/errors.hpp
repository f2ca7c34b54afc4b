#pragma once

#include <stdexcept>
#include <string>

namespace levy_gqmle {

enum class ErrorKind {
  ParameterDomain,   // invalid distribution / model parameters
  Singularity,       // density evaluated at the origin
  NoJumpPart,        // jump-only operation on a Brownian law
  QuadratureFailure,
  Divergence,        // simulated state left the finite range
  GridFormat,        // malformed or non-equispaced path file
  EstimationFailure,
  DegeneratePath,
  MixingSuspect,     // invariant-sample sanity gate failed
  NotCentered,       // EPE right-hand side not centred under pi0
  SingularMatrix,
  Inconsistent,      // numerically inconsistent result (e.g. indefinite Sigma)
  Experiment,
  Io,
  Usage,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by adaptive quadrature; carries the residual error estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double residual)
      : Error(ErrorKind::QuadratureFailure, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised by the Euler scheme when |X| exceeds the divergence threshold.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, long step)
      : Error(ErrorKind::Divergence, what), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace levy_gqmle
