#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netshare/allocation.hpp"
#include "netshare/network.hpp"

namespace netshare {

/// Holding cost obtained from the utility by freezing the rate at the
/// offered load:  C_r(n) = beta_r nu_r n^(1+alpha) / ((1+alpha) rho_r^alpha).
/// Strictly increasing and strictly convex with C_r(0) = 0.
class CostModel {
public:
  CostModel(const UtilitySpec& utility, const TrafficProfile& traffic);

  std::size_t route_count() const { return beta_.size(); }
  double alpha() const { return alpha_; }

  double cost(std::size_t r, double n) const;
  /// C_r'(n) = nu_r * beta_r * (n / rho_r)^alpha.
  double cost_prime(std::size_t r, double n) const;
  /// Inverse of C_r on [0, inf).
  double cost_inverse(std::size_t r, double y) const;
  /// The state with C_r'(n) = nu_r * price, i.e. rho_r (price / beta_r)^(1/alpha).
  double state_at_price(std::size_t r, double price) const;

  double nu(std::size_t r) const { return nu_[r]; }
  double rho(std::size_t r) const { return rho_[r]; }

private:
  double alpha_ = 1.0;
  std::vector<double> beta_;
  std::vector<double> nu_;
  std::vector<double> rho_;
};

/// psi(n) = sum_r C_r(n_r).
double cost_value(const CostModel& cost, const std::vector<double>& n);

struct FixedPointResult {
  std::vector<double> n_star;       // per-route minimizer, 0 off bottleneck routes
  std::vector<double> theta;        // multiplier per entry of the bottleneck set
  double cost = 0.0;                // psi(n_star)
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
};

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_sweeps = 100000;
};

/// Minimizes psi(n) subject to the per-bottleneck workload constraints
/// sum_{r on l} nu_r n_r >= w_l for l in `bottlenecks`, n >= 0.  The
/// minimizer is unique by strict convexity; w == 0 returns n* == 0.
FixedPointResult fixed_point(const NetworkTopology& topology, const CostModel& cost,
                             const std::vector<std::size_t>& bottlenecks,
                             const std::vector<double>& w, const FixedPointOptions& opts = {});

struct RoundtripReport {
  bool degenerate = false;             // w == 0: nothing to check
  std::vector<double> n_star;
  /// Direction (i): max over bottleneck routes with n*_r > 0 of
  /// |rate_r(n*) - rho_r|.
  double allocation_gap = 0.0;
  /// Direction (ii): max over bottleneck routes of |n*(w(n*)) - n*|.
  double state_gap = 0.0;
};

/// Proposition-style duality round trip between the cost minimizer and the
/// utility-maximizing allocation.  Requires the heavy-traffic condition.
RoundtripReport duality_roundtrip(const NetworkTopology& topology, const UtilitySpec& utility,
                                  const TrafficProfile& traffic,
                                  const std::vector<std::size_t>& bottlenecks,
                                  const std::vector<double>& w, double classify_tol = 1e-9);

/// |n*(w + delta) - n*(w)|_1 for each delta in `deltas`.
std::vector<double> fixed_point_continuity_probe(const NetworkTopology& topology,
                                                 const CostModel& cost,
                                                 const std::vector<std::size_t>& bottlenecks,
                                                 const std::vector<double>& w,
                                                 const std::vector<double>& deltas);

}  // namespace netshare
