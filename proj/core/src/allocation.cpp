#include "netshare/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "netshare/errors.hpp"

namespace netshare {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

UtilitySpec::UtilitySpec(double alpha, std::vector<double> beta)
    : alpha_(alpha), beta_(std::move(beta)) {
  if (!(alpha_ > 0.0)) throw ConfigError("utility: alpha must be > 0");
  if (beta_.empty()) throw ConfigError("utility: beta must be nonempty");
  for (std::size_t r = 0; r < beta_.size(); ++r) {
    if (!(beta_[r] > 0.0)) {
      throw ConfigError("utility: beta[" + std::to_string(r) + "] must be > 0");
    }
  }
}

double UtilitySpec::value(std::size_t r, double n, double rate) const {
  if (n <= 0.0) return 0.0;
  if (alpha_ == 1.0) {
    if (rate <= 0.0) return -kInf;
    return beta_[r] * n * std::log(rate);
  }
  if (rate <= 0.0) return alpha_ > 1.0 ? -kInf : 0.0;
  return beta_[r] * std::pow(n, alpha_) * std::pow(rate, 1.0 - alpha_) / (1.0 - alpha_);
}

double UtilitySpec::marginal(std::size_t r, double n, double rate) const {
  if (n <= 0.0) return 0.0;
  if (rate <= 0.0) return kInf;
  return beta_[r] * std::pow(n / rate, alpha_);
}

double UtilitySpec::rate_at_price(std::size_t r, double n, double price) const {
  if (n <= 0.0) return 0.0;
  if (price <= 0.0) return kInf;
  return n * std::pow(beta_[r] / price, 1.0 / alpha_);
}

namespace {

void check_dims(const NetworkTopology& topology, const UtilitySpec& utility,
                const std::vector<double>& n) {
  if (utility.route_count() != topology.route_count()) {
    throw ConfigError("utility has " + std::to_string(utility.route_count()) +
                      " weights but topology declares " + std::to_string(topology.route_count()) +
                      " routes");
  }
  if (n.size() != topology.route_count()) {
    throw ConfigError("state vector has dimension " + std::to_string(n.size()) +
                      " but topology declares " + std::to_string(topology.route_count()) +
                      " routes");
  }
  for (double v : n) {
    if (v < 0.0 || !std::isfinite(v)) throw ConfigError("state vector must be finite and >= 0");
  }
}

struct DualState {
  const NetworkTopology& topology;
  const UtilitySpec& utility;
  const std::vector<double>& n;
  std::vector<double> price;      // per link
  std::vector<char> active;       // per route, n_r > 0

  double route_price(std::size_t r) const {
    double q = 0.0;
    for (std::size_t l : topology.route(r).links) q += price[l];
    return q;
  }

  double rate(std::size_t r) const {
    if (!active[r]) return 0.0;
    return utility.rate_at_price(r, n[r], route_price(r));
  }

  /// Load on link l if its price were `p` (other prices fixed).
  double load_at(std::size_t l, double p) const {
    double load = 0.0;
    for (std::size_t r : topology.routes_on_link(l)) {
      if (!active[r]) continue;
      const double q = route_price(r) - price[l] + p;
      load += utility.rate_at_price(r, n[r], q);
    }
    return load;
  }

  bool link_has_active_route(std::size_t l) const {
    for (std::size_t r : topology.routes_on_link(l)) {
      if (active[r]) return true;
    }
    return false;
  }

  /// Coordinate minimization of the dual in price[l]: the link load is
  /// strictly decreasing in the price, so either price 0 already satisfies
  /// the capacity or bisection finds the saturating price.
  void update_link(std::size_t l) {
    const double c = topology.link(l).capacity;
    if (!link_has_active_route(l)) {
      price[l] = 0.0;
      return;
    }
    if (load_at(l, 0.0) <= c) {
      price[l] = 0.0;
      return;
    }
    double hi = std::max(price[l], 1.0);
    int guard = 0;
    while (load_at(l, hi) > c && guard++ < 400) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 110; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (load_at(l, mid) > c ? lo : hi) = mid;
    }
    price[l] = hi;  // hi side keeps load <= c
  }

  double dual_objective() const {
    double g = 0.0;
    for (std::size_t r = 0; r < topology.route_count(); ++r) {
      if (!active[r]) continue;
      const double q = route_price(r);
      const double v = utility.rate_at_price(r, n[r], q);
      g += utility.value(r, n[r], v) - q * v;
    }
    for (std::size_t l = 0; l < topology.link_count(); ++l) {
      g += price[l] * topology.link(l).capacity;
    }
    return g;
  }
};

AllocationResult single_route_shortcut(const NetworkTopology& topology,
                                       const UtilitySpec& utility, const std::vector<double>& n,
                                       std::size_t r) {
  AllocationResult out;
  out.rate.assign(topology.route_count(), 0.0);
  out.price.assign(topology.link_count(), 0.0);
  std::size_t tightest = topology.route(r).links.front();
  for (std::size_t l : topology.route(r).links) {
    if (topology.link(l).capacity < topology.link(tightest).capacity) tightest = l;
  }
  out.rate[r] = topology.link(tightest).capacity;
  out.price[tightest] = utility.marginal(r, n[r], out.rate[r]);
  out.iterations = 0;
  out.kkt_residual = kkt_residual(topology, utility, n, out.rate, out.price);
  out.objective = utility.value(r, n[r], out.rate[r]);
  return out;
}

}  // namespace

AllocationResult solve_allocation(const NetworkTopology& topology, const UtilitySpec& utility,
                                  const std::vector<double>& n, const AllocationOptions& opts) {
  check_dims(topology, utility, n);
  if (!(opts.tol > 0.0)) throw ConfigError("solve_allocation: tol must be > 0");

  std::vector<std::size_t> active_routes;
  for (std::size_t r = 0; r < n.size(); ++r) {
    if (n[r] > 0.0) active_routes.push_back(r);
  }
  if (active_routes.empty()) {
    throw DegenerateStateError("solve_allocation: all n_r are zero; use effective_rate");
  }
  if (active_routes.size() == 1) {
    return single_route_shortcut(topology, utility, n, active_routes.front());
  }

  DualState dual{topology, utility, n, {}, {}};
  dual.price.assign(topology.link_count(), 0.0);
  dual.active.assign(topology.route_count(), 0);
  for (std::size_t r : active_routes) dual.active[r] = 1;

  std::vector<std::size_t> used_links;
  for (std::size_t l = 0; l < topology.link_count(); ++l) {
    if (dual.link_has_active_route(l)) used_links.push_back(l);
  }

  // Warm start from the single-link closed form: exact when the link is the
  // route's only priced constraint.
  const double alpha = utility.alpha();
  for (std::size_t l : used_links) {
    double s = 0.0;
    for (std::size_t r : topology.routes_on_link(l)) {
      if (dual.active[r]) s += std::pow(utility.beta()[r], 1.0 / alpha) * n[r];
    }
    dual.price[l] = std::pow(s / topology.link(l).capacity, alpha);
  }

  AllocationResult out;
  out.rate.assign(topology.route_count(), 0.0);
  double best_residual = kInf;
  for (std::size_t sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    for (std::size_t l : used_links) dual.update_link(l);
    if (opts.trace_dual && opts.dual_trace) opts.dual_trace->push_back(dual.dual_objective());

    for (std::size_t r = 0; r < topology.route_count(); ++r) out.rate[r] = dual.rate(r);
    const double res = kkt_residual(topology, utility, n, out.rate, dual.price);
    best_residual = std::min(best_residual, res);

    double overload = 0.0;
    for (std::size_t l : used_links) {
      double load = 0.0;
      for (std::size_t r : topology.routes_on_link(l)) load += out.rate[r];
      overload = std::max(overload, load - topology.link(l).capacity);
    }
    if (res <= opts.tol && overload <= opts.feas_tol) {
      out.price = dual.price;
      out.kkt_residual = res;
      out.iterations = sweep;
      out.objective = 0.0;
      for (std::size_t r : active_routes) out.objective += utility.value(r, n[r], out.rate[r]);
      return out;
    }
  }
  throw SolverFailure("solve_allocation: no convergence within " +
                          std::to_string(opts.max_sweeps) + " sweeps (best residual " +
                          std::to_string(best_residual) + ")",
                      best_residual);
}

double kkt_residual(const NetworkTopology& topology, const UtilitySpec& utility,
                    const std::vector<double>& n, const std::vector<double>& rate,
                    const std::vector<double>& price) {
  check_dims(topology, utility, n);
  if (rate.size() != topology.route_count() || price.size() != topology.link_count()) {
    throw ConfigError("kkt_residual: rate/price dimensions do not match the topology");
  }
  double res = 0.0;
  for (std::size_t r = 0; r < topology.route_count(); ++r) {
    if (n[r] <= 0.0 || rate[r] <= 0.0) continue;
    double q = 0.0;
    for (std::size_t l : topology.route(r).links) q += price[l];
    res = std::max(res, std::abs(utility.marginal(r, n[r], rate[r]) - q));
  }
  for (std::size_t l = 0; l < topology.link_count(); ++l) {
    double load = 0.0;
    for (std::size_t r : topology.routes_on_link(l)) load += rate[r];
    const double slack = load - topology.link(l).capacity;
    res = std::max(res, std::max(slack, 0.0));                  // primal feasibility
    res = std::max(res, std::max(-price[l], 0.0));              // dual feasibility
    res = std::max(res, std::abs(price[l] * slack));            // complementary slackness
  }
  return res;
}

std::vector<double> effective_rate(const NetworkTopology& topology, const UtilitySpec& utility,
                                   const TrafficProfile& traffic, const std::vector<double>& n,
                                   const AllocationOptions& opts) {
  check_dims(topology, utility, n);
  if (traffic.route_count() != topology.route_count()) {
    throw ConfigError("effective_rate: traffic/topology route counts differ");
  }
  const bool any_positive = std::any_of(n.begin(), n.end(), [](double v) { return v > 0.0; });
  if (!any_positive) return traffic.rho();
  auto result = solve_allocation(topology, utility, n, opts);
  std::vector<double> out = result.rate;
  for (std::size_t r = 0; r < n.size(); ++r) {
    if (n[r] == 0.0) out[r] = traffic.route(r).rho();
  }
  return out;
}

double check_radial_homogeneity(const NetworkTopology& topology, const UtilitySpec& utility,
                                const std::vector<double>& n, double a,
                                const AllocationOptions& opts) {
  if (!(a > 0.0)) throw ConfigError("check_radial_homogeneity: a must be > 0");
  if (a == 1.0) return 0.0;
  auto base = solve_allocation(topology, utility, n, opts);
  std::vector<double> scaled(n.size());
  for (std::size_t r = 0; r < n.size(); ++r) scaled[r] = a * n[r];
  auto other = solve_allocation(topology, utility, scaled, opts);
  double dev = 0.0;
  for (std::size_t r = 0; r < n.size(); ++r) {
    if (n[r] > 0.0) dev = std::max(dev, std::abs(other.rate[r] - base.rate[r]));
  }
  return dev;
}

}  // namespace netshare
