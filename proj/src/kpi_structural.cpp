#include "mcskpi/kpi_structural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mcskpi {

KpiValue redundancyAtSite(const SiteInventory& inventory, int ntarget,
                          const std::optional<std::string>& connectorFamily,
                          const std::map<std::string, std::string>* feederMap) {
  if (ntarget <= 0) throw BadSpec("redundancyAtSite: ntarget must be > 0");
  KpiValue v{"K1", std::nullopt, std::nullopt, {}};

  std::set<std::string> counted;
  for (const RefillPoint* rp : inventory.allRefillPoints()) {
    if (connectorFamily) {
      const bool hasFamily =
          std::any_of(rp->connectors.begin(), rp->connectors.end(),
                      [&](const Connector& c) { return c.connectorType == *connectorFamily; });
      if (!hasFamily) continue;
    }
    if (feederMap) {
      auto it = feederMap->find(rp->refillPointId);
      counted.insert(it != feederMap->end() ? "feeder:" + it->second
                                            : "point:" + rp->refillPointId);
    } else {
      counted.insert(rp->refillPointId);
    }
  }
  if (counted.empty()) {
    v.raw = 0.0;
    v.normalized = 0.0;
    v.notes.push_back("EmptyInventory: no refill points after filtering");
    return v;
  }
  v.raw = std::min(static_cast<double>(counted.size()) / ntarget, 1.0);
  v.normalized = v.raw;
  return v;
}

HighPowerShare highPowerShare(const SiteInventory& inventory, double pthrKw) {
  HighPowerShare out;
  out.value.kpiId = "K2";
  const auto connectors = inventory.allConnectors();
  if (connectors.empty()) {
    out.value.notes.push_back("EmptyInventory: no connectors installed");
    return out;
  }
  auto shareAt = [&connectors](double thr) {
    std::size_t n = 0;
    for (const Connector* c : connectors) {
      if (c->maxPowerKw >= thr) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(connectors.size());
  };
  out.value.raw = shareAt(pthrKw);
  out.value.normalized = out.value.raw;
  out.share750 = shareAt(750.0);
  out.share1000 = shareAt(1000.0);
  return out;
}

KpiValue greenSupplyRatio(const std::vector<std::pair<std::string, double>>& mix,
                          const std::set<std::string>& renewableLabels) {
  KpiValue v{"K3", 0.0, std::nullopt, {}};
  double sum = 0.0;
  for (const auto& [label, ratio] : mix) {
    if (ratio < 0.0 || ratio > 1.0) throw SchemaViolation("energy-mix ratio outside [0,1]");
    if (renewableLabels.count(label)) sum += ratio;
  }
  v.raw = std::clamp(sum, 0.0, 1.0);
  v.normalized = v.raw;
  return v;
}

KpiValue greenSupplyRatioDynamic(const std::vector<std::pair<Timestamp, double>>& renewableShare,
                                 const std::vector<std::pair<Timestamp, double>>& deliveredKwh,
                                 const AnalysisWindow& window) {
  KpiValue v{"K3dyn", std::nullopt, std::nullopt, {}};
  std::map<Timestamp, double> shares;
  for (const auto& [t, r] : renewableShare) {
    if (window.contains(t)) shares[t] = r;
  }
  double weighted = 0.0;
  double total = 0.0;
  std::size_t joined = 0;
  for (const auto& [t, e] : deliveredKwh) {
    if (!window.contains(t)) continue;
    auto it = shares.find(t);
    if (it == shares.end()) continue;
    weighted += it->second * e;
    total += e;
    ++joined;
  }
  if (joined == 0 && !renewableShare.empty() && !deliveredKwh.empty()) {
    throw MisalignedSeries("greenSupplyRatioDynamic: no common timestamps to join");
  }
  if (total <= 0.0) {
    v.notes.push_back("undefined: delivered energy sums to zero");
    return v;
  }
  v.raw = weighted / total;
  v.normalized = std::clamp(*v.raw, 0.0, 1.0);
  return v;
}

KpiValue userAccessResilience(const std::map<std::string, double>& shares) {
  KpiValue v{"K4", std::nullopt, std::nullopt, {}};
  double sum = 0.0;
  for (const auto& [m, p] : shares) {
    if (p < 0) throw BadDistribution("negative usage share for " + m);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw BadDistribution("usage shares must sum to 1");
  }
  if (shares.size() <= 1) {
    v.raw = 0.0;
    v.normalized = 0.0;
    return v;
  }
  double entropy = 0.0;
  for (const auto& [m, p] : shares) {
    if (p > 0) entropy -= p * std::log(p);  // 0*ln(0) = 0
  }
  v.raw = entropy / std::log(static_cast<double>(shares.size()));
  v.normalized = std::clamp(*v.raw, 0.0, 1.0);
  return v;
}

KpiValue userAccessResilience(const std::set<std::string>& methods) {
  KpiValue v{"K4", std::nullopt, std::nullopt, {}};
  if (methods.empty()) {
    v.notes.push_back("undefined: no payment methods declared");
    return v;
  }
  // Equal shares assumed when usage data is absent.
  v.raw = methods.size() >= 2 ? 1.0 : 0.0;
  v.normalized = v.raw;
  v.notes.push_back("equal usage shares assumed");
  return v;
}

double haversineKm(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  const double phi1 = lat1 * kDegToRad;
  const double phi2 = lat2 * kDegToRad;
  const double dphi = (lat2 - lat1) * kDegToRad;
  const double dlambda = (lon2 - lon1) * kDegToRad;
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

SpatialCoverage spatialCoverage(const std::vector<DemandPoint>& demand,
                                const std::vector<std::pair<double, double>>& sites,
                                double radiusKm) {
  SpatialCoverage out;
  out.value.kpiId = "K5";
  if (demand.empty()) {
    out.value.notes.push_back("NoDemand: no demand points supplied");
    return out;
  }
  double covered = 0.0;
  double total = 0.0;
  double distanceSum = 0.0;
  for (const auto& dp : demand) {
    if (dp.weight <= 0) throw BadSpec("demand weight must be > 0");
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& [lat, lon] : sites) {
      nearest = std::min(nearest, haversineKm(dp.lat, dp.lon, lat, lon));
    }
    total += dp.weight;
    if (!sites.empty()) {
      if (nearest <= radiusKm) covered += dp.weight;
      distanceSum += dp.weight * nearest;
    }
  }
  out.value.raw = sites.empty() ? 0.0 : covered / total;
  out.value.normalized = out.value.raw;
  if (!sites.empty()) out.meanNearestKm = distanceSum / total;
  return out;
}

}  // namespace mcskpi
