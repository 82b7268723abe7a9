#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace netshare {

/// A transmission/processing resource with a fixed capacity in work units
/// per unit time.
struct Link {
  std::string id;
  double capacity = 0.0;
};

/// A job class. Every in-service job of the class occupies all links of the
/// route concurrently.
struct Route {
  std::string id;
  std::vector<std::size_t> links;  // indices into NetworkTopology::links
};

/// Static network description: links with capacities and routes as link
/// subsets.  Immutable after construction; safe to share across threads.
class NetworkTopology {
public:
  NetworkTopology(std::vector<Link> links, std::vector<Route> routes);

  const std::vector<Link>& links() const { return links_; }
  const std::vector<Route>& routes() const { return routes_; }
  std::size_t link_count() const { return links_.size(); }
  std::size_t route_count() const { return routes_.size(); }

  const Link& link(std::size_t l) const { return links_[l]; }
  const Route& route(std::size_t r) const { return routes_[r]; }

  /// Routes crossing link `l`, in route order.
  const std::vector<std::size_t>& routes_on_link(std::size_t l) const {
    return routes_on_link_[l];
  }
  bool route_uses_link(std::size_t r, std::size_t l) const;

private:
  std::vector<Link> links_;
  std::vector<Route> routes_;
  std::vector<std::vector<std::size_t>> routes_on_link_;
};

/// Per-route arrival and service moments. Rates are jobs per unit time,
/// work is in the same units as link capacity integrated over time.
struct RouteTraffic {
  double lambda = 0.0;  // arrival rate, > 0
  double nu = 0.0;      // mean work per job, > 0
  double a_sq = 0.0;    // interarrival-time variance, >= 0
  double b_sq = 0.0;    // work variance, >= 0

  double rho() const { return lambda * nu; }
  double mu() const { return 1.0 / nu; }
};

class TrafficProfile {
public:
  explicit TrafficProfile(std::vector<RouteTraffic> routes);

  const std::vector<RouteTraffic>& routes() const { return routes_; }
  std::size_t route_count() const { return routes_.size(); }
  const RouteTraffic& route(std::size_t r) const { return routes_[r]; }

  std::vector<double> rho() const;
  std::vector<double> lambda() const;
  std::vector<double> nu() const;

private:
  std::vector<RouteTraffic> routes_;
};

/// First-order perturbation of a base profile along the heavy-traffic index
/// k:  lambda^k = lambda + theta_lambda / k,  nu^k = nu + theta_nu / k.
/// Variances are held constant in k.
struct RoutePerturbation {
  double theta_lambda = 0.0;
  double theta_nu = 0.0;
};

class ScalingSequenceSpec {
public:
  ScalingSequenceSpec(TrafficProfile base, std::vector<RoutePerturbation> thetas);

  const TrafficProfile& base() const { return base_; }
  const std::vector<RoutePerturbation>& thetas() const { return thetas_; }

  /// lambda_r * theta_nu_r + nu_r * theta_lambda_r, the limit of
  /// k * (rho_r^k - rho_r).
  double theta_rho(std::size_t r) const;

private:
  TrafficProfile base_;
  std::vector<RoutePerturbation> thetas_;
};

/// Per-link offered load: load_l = sum of rho_r over routes r crossing l.
std::vector<double> link_load(const NetworkTopology& topology,
                              const TrafficProfile& traffic);

enum class LinkState { Bottleneck, StrictSlack, Overloaded };

struct LinkClassification {
  std::vector<LinkState> states;          // aligned with topology links
  std::vector<std::size_t> bottlenecks;   // links with |load - c| <= tol
  std::vector<std::size_t> strict_slack;  // load < c - tol
  std::vector<std::size_t> overloaded;    // load > c + tol
  bool usual_traffic = false;   // no overloaded link (rho in M)
  bool heavy_traffic = false;   // usual traffic and at least one bottleneck
  bool single_bottleneck = false;

  /// Routes crossing at least one bottleneck link, in route order.
  std::vector<std::size_t> bottleneck_routes;
};

/// Classifies every link by comparing its load against capacity with an
/// absolute tolerance.
LinkClassification classify_links(const NetworkTopology& topology,
                                  const TrafficProfile& traffic, double tol);

/// The k-th member of the scaling sequence.  Throws ConfigError if any
/// resulting rate or mean work is nonpositive.
TrafficProfile traffic_at_scale(const ScalingSequenceSpec& spec, unsigned k);

}  // namespace netshare
