#pragma once

#include <cstddef>
#include <vector>

#include "netshare/network.hpp"

namespace netshare {

/// Weighted alpha-fair utility family.  alpha == 1 selects the logarithmic
/// (weighted proportional-fair) member  U_r = beta_r n_r log(rate_r);
/// otherwise  U_r = beta_r n_r^alpha rate_r^(1-alpha) / (1-alpha).
class UtilitySpec {
public:
  UtilitySpec(double alpha, std::vector<double> beta);

  double alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  std::size_t route_count() const { return beta_.size(); }

  /// U_r(n, rate); identically 0 when n == 0.
  double value(std::size_t r, double n, double rate) const;

  /// d/d(rate) U_r(n, rate) = beta_r (n / rate)^alpha.
  double marginal(std::size_t r, double n, double rate) const;

  /// Inverse of the stationarity equation: the rate with marginal equal to
  /// `price` for backlog n, i.e. n * (beta_r / price)^(1/alpha).
  double rate_at_price(std::size_t r, double n, double price) const;

private:
  double alpha_ = 1.0;
  std::vector<double> beta_;
};

struct AllocationResult {
  std::vector<double> rate;        // per-route optimal rate; 0 where n_r == 0
  std::vector<double> price;       // per-link Lagrange multiplier eta_l >= 0
  double kkt_residual = 0.0;
  std::size_t iterations = 0;      // dual sweeps performed
  double objective = 0.0;          // utility value at the returned rates
};

struct AllocationOptions {
  double tol = 1e-8;               // accepted KKT residual
  double feas_tol = 1e-10;         // accepted per-link capacity overshoot
  std::size_t max_sweeps = 100000;
  bool trace_dual = false;         // record the dual objective per sweep
  std::vector<double>* dual_trace = nullptr;
};

/// Solves max sum_r U_r(n_r, rate_r) over the feasible rate set
/// { rate >= 0 : sum_{r on l} rate_r <= c_l }.
///
/// Routes with n_r == 0 are excluded from the optimization and returned with
/// rate 0.  Throws DegenerateStateError when every n_r == 0 and SolverFailure
/// when the dual scheme does not certify the tolerance within the sweep cap.
AllocationResult solve_allocation(const NetworkTopology& topology, const UtilitySpec& utility,
                                  const std::vector<double>& n,
                                  const AllocationOptions& opts = {});

/// Max over the four optimality groups: stationarity gap on active routes,
/// primal capacity violation, dual sign violation, complementary slackness.
double kkt_residual(const NetworkTopology& topology, const UtilitySpec& utility,
                    const std::vector<double>& n, const std::vector<double>& rate,
                    const std::vector<double>& price);

/// Rate map used by the fluid dynamics: the optimal rate where n_r > 0 and
/// the offered load rho_r where n_r == 0.  Returns rho without invoking the
/// solver when every component of n is zero.
std::vector<double> effective_rate(const NetworkTopology& topology, const UtilitySpec& utility,
                                   const TrafficProfile& traffic, const std::vector<double>& n,
                                   const AllocationOptions& opts = {});

/// Max over active routes of |rate_r(a*n) - rate_r(n)|; the alpha-fair
/// optimizer is scale invariant so the deviation is solver noise only.
double check_radial_homogeneity(const NetworkTopology& topology, const UtilitySpec& utility,
                                const std::vector<double>& n, double a,
                                const AllocationOptions& opts = {});

}  // namespace netshare
