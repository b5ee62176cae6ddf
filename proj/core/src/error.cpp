#include "zipmap/error.hpp"

#include <sstream>

namespace zipmap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidTransform: return "invalid-transform";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::OutOfOrder: return "out-of-order";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::TangentArc: return "tangent-arc";
    case ErrorKind::AmbiguousBranch: return "ambiguous-branch";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

std::string out_of_order_message(std::size_t index, double imag) {
  std::ostringstream os;
  os << "data point " << index
     << " is out of order: its image lies on the real axis (Im = " << imag << ")";
  return os.str();
}

std::string non_convergence_message(const std::string& region, double residual,
                                    int iterations, long step) {
  std::ostringstream os;
  os << "Newton iteration did not converge in region " << region << " after "
     << iterations << " iterations (relative residual " << residual << ")";
  if (step >= 0) os << " at step " << step;
  return os.str();
}

}  // namespace

OutOfOrderError::OutOfOrderError(std::size_t index, double imag_part)
    : Error(ErrorKind::OutOfOrder, out_of_order_message(index, imag_part)),
      index_(index),
      imag_(imag_part) {}

NonConvergenceError::NonConvergenceError(std::string region, double residual,
                                         int iterations, long step_index)
    : Error(ErrorKind::NonConvergence,
            non_convergence_message(region, residual, iterations, step_index)),
      region_(std::move(region)),
      residual_(residual),
      iterations_(iterations),
      step_index_(step_index) {}

NonConvergenceError NonConvergenceError::with_step(long step) const {
  return NonConvergenceError(region_, residual_, iterations_, step);
}

}  // namespace zipmap
