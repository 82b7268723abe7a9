#include "netshare/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netshare/errors.hpp"

namespace netshare {

NetworkTopology::NetworkTopology(std::vector<Link> links, std::vector<Route> routes)
    : links_(std::move(links)), routes_(std::move(routes)) {
  if (links_.empty()) throw ConfigError("topology: at least one link required");
  if (routes_.empty()) throw ConfigError("topology: at least one route required");
  for (std::size_t l = 0; l < links_.size(); ++l) {
    if (!(links_[l].capacity > 0.0)) {
      throw ConfigError("topology: link '" + links_[l].id + "' capacity must be > 0");
    }
  }
  routes_on_link_.assign(links_.size(), {});
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    if (routes_[r].links.empty()) {
      throw ConfigError("topology: route '" + routes_[r].id + "' uses no links");
    }
    for (std::size_t l : routes_[r].links) {
      if (l >= links_.size()) {
        throw ConfigError("topology: route '" + routes_[r].id +
                          "' references undeclared link index " + std::to_string(l));
      }
    }
    // Normalize: sorted unique link sets make membership checks cheap.
    auto& rl = routes_[r].links;
    std::sort(rl.begin(), rl.end());
    rl.erase(std::unique(rl.begin(), rl.end()), rl.end());
    for (std::size_t l : rl) routes_on_link_[l].push_back(r);
  }
}

bool NetworkTopology::route_uses_link(std::size_t r, std::size_t l) const {
  const auto& rl = routes_[r].links;
  return std::binary_search(rl.begin(), rl.end(), l);
}

TrafficProfile::TrafficProfile(std::vector<RouteTraffic> routes) : routes_(std::move(routes)) {
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    const auto& t = routes_[r];
    if (!(t.lambda > 0.0) || !(t.nu > 0.0)) {
      throw ConfigError("traffic: route " + std::to_string(r) +
                        " requires lambda > 0 and nu > 0");
    }
    if (t.a_sq < 0.0 || t.b_sq < 0.0) {
      throw ConfigError("traffic: route " + std::to_string(r) + " has negative variance");
    }
  }
}

std::vector<double> TrafficProfile::rho() const {
  std::vector<double> out(routes_.size());
  for (std::size_t r = 0; r < routes_.size(); ++r) out[r] = routes_[r].rho();
  return out;
}

std::vector<double> TrafficProfile::lambda() const {
  std::vector<double> out(routes_.size());
  for (std::size_t r = 0; r < routes_.size(); ++r) out[r] = routes_[r].lambda;
  return out;
}

std::vector<double> TrafficProfile::nu() const {
  std::vector<double> out(routes_.size());
  for (std::size_t r = 0; r < routes_.size(); ++r) out[r] = routes_[r].nu;
  return out;
}

ScalingSequenceSpec::ScalingSequenceSpec(TrafficProfile base,
                                         std::vector<RoutePerturbation> thetas)
    : base_(std::move(base)), thetas_(std::move(thetas)) {
  if (thetas_.size() != base_.route_count()) {
    throw ConfigError("scaling: theta count " + std::to_string(thetas_.size()) +
                      " does not match route count " + std::to_string(base_.route_count()));
  }
}

double ScalingSequenceSpec::theta_rho(std::size_t r) const {
  const auto& t = base_.route(r);
  return t.lambda * thetas_[r].theta_nu + t.nu * thetas_[r].theta_lambda;
}

namespace {

void check_alignment(const NetworkTopology& topology, const TrafficProfile& traffic) {
  if (topology.route_count() != traffic.route_count()) {
    throw ConfigError("traffic has " + std::to_string(traffic.route_count()) +
                      " routes but topology declares " + std::to_string(topology.route_count()));
  }
}

}  // namespace

std::vector<double> link_load(const NetworkTopology& topology, const TrafficProfile& traffic) {
  check_alignment(topology, traffic);
  std::vector<double> load(topology.link_count(), 0.0);
  for (std::size_t l = 0; l < topology.link_count(); ++l) {
    for (std::size_t r : topology.routes_on_link(l)) load[l] += traffic.route(r).rho();
  }
  return load;
}

LinkClassification classify_links(const NetworkTopology& topology,
                                  const TrafficProfile& traffic, double tol) {
  if (tol < 0.0) throw ConfigError("classify_links: tol must be >= 0");
  const auto load = link_load(topology, traffic);
  LinkClassification out;
  out.states.resize(topology.link_count());
  for (std::size_t l = 0; l < topology.link_count(); ++l) {
    const double c = topology.link(l).capacity;
    if (std::abs(load[l] - c) <= tol) {
      out.states[l] = LinkState::Bottleneck;
      out.bottlenecks.push_back(l);
    } else if (load[l] < c - tol) {
      out.states[l] = LinkState::StrictSlack;
      out.strict_slack.push_back(l);
    } else {
      out.states[l] = LinkState::Overloaded;
      out.overloaded.push_back(l);
    }
  }
  out.usual_traffic = out.overloaded.empty();
  out.heavy_traffic = out.usual_traffic && !out.bottlenecks.empty();
  out.single_bottleneck = out.heavy_traffic && out.bottlenecks.size() == 1;
  for (std::size_t r = 0; r < topology.route_count(); ++r) {
    for (std::size_t l : out.bottlenecks) {
      if (topology.route_uses_link(r, l)) {
        out.bottleneck_routes.push_back(r);
        break;
      }
    }
  }
  return out;
}

TrafficProfile traffic_at_scale(const ScalingSequenceSpec& spec, unsigned k) {
  if (k == 0) throw ConfigError("traffic_at_scale: k must be a positive integer");
  std::vector<RouteTraffic> out(spec.base().route_count());
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto& base = spec.base().route(r);
    const auto& th = spec.thetas()[r];
    RouteTraffic t = base;
    t.lambda = base.lambda + th.theta_lambda / static_cast<double>(k);
    t.nu = base.nu + th.theta_nu / static_cast<double>(k);
    if (!(t.lambda > 0.0)) {
      std::ostringstream msg;
      msg << "traffic_at_scale: route " << r << " has lambda^k = " << t.lambda
          << " <= 0 at k = " << k;
      throw ConfigError(msg.str());
    }
    if (!(t.nu > 0.0)) {
      std::ostringstream msg;
      msg << "traffic_at_scale: route " << r << " has nu^k = " << t.nu << " <= 0 at k = " << k;
      throw ConfigError(msg.str());
    }
    out[r] = t;
  }
  return TrafficProfile(std::move(out));
}

}  // namespace netshare
