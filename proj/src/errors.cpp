#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterDomain: return "parameter-domain";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::NoJumpPart: return "no-jump-part";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::GridFormat: return "grid-format";
    case ErrorKind::EstimationFailure: return "estimation-failure";
    case ErrorKind::DegeneratePath: return "degenerate-path";
    case ErrorKind::MixingSuspect: return "mixing-suspect";
    case ErrorKind::NotCentered: return "not-centered";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::Experiment: return "experiment";
    case ErrorKind::Io: return "io";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace levy_gqmle
