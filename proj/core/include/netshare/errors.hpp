#pragma once

#include <stdexcept>
#include <string>

namespace netshare {

/// Invalid scenario/configuration input (bad dimensions, nonpositive rates,
/// unresolved cross-references).  CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical solver did not reach the requested tolerance. Carries the best
/// residual achieved.  CLI maps this to exit code 3.
class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

private:
  double best_residual_ = 0.0;
};

/// A stated precondition of an operation does not hold (heavy traffic,
/// single bottleneck, horizon range).  CLI maps this to exit code 4.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// All-zero state passed to the state-dependent allocation solver; callers
/// that can accept the zero state should use effective_rate instead.
class DegenerateStateError : public PreconditionError {
public:
  explicit DegenerateStateError(const std::string& what) : PreconditionError(what) {}
};

}  // namespace netshare
