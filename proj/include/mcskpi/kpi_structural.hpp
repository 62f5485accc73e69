#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcskpi/model.hpp"

namespace mcskpi {

// Static-feed KPIs K1-K5.

// K1: min(Nrp / Ntarget, 1). Optionally restricted to one connector family
// and/or counted per distinct feeder.
KpiValue redundancyAtSite(const SiteInventory& inventory, int ntarget,
                          const std::optional<std::string>& connectorFamily = std::nullopt,
                          const std::map<std::string, std::string>* feederMap = nullptr);

struct HighPowerShare {
  KpiValue value;       // at the configured threshold
  std::optional<double> share750;
  std::optional<double> share1000;
};

// K2: share of connectors with maxPowerKw >= threshold.
HighPowerShare highPowerShare(const SiteInventory& inventory, double pthrKw);

// K3 static: sum of renewable-source ratios, clamped to [0,1].
KpiValue greenSupplyRatio(const std::vector<std::pair<std::string, double>>& mix,
                          const std::set<std::string>& renewableLabels);

// K3 dynamic: energy-weighted renewable share, joined on exact timestamps.
KpiValue greenSupplyRatioDynamic(const std::vector<std::pair<Timestamp, double>>& renewableShare,
                                 const std::vector<std::pair<Timestamp, double>>& deliveredKwh,
                                 const AnalysisWindow& window);

// K4: normalized Shannon diversity of payment-method usage shares.
// Methods-only input assumes equal shares (UAR = 1 for two or more methods).
KpiValue userAccessResilience(const std::map<std::string, double>& shares);
KpiValue userAccessResilience(const std::set<std::string>& methods);

double haversineKm(double lat1, double lon1, double lat2, double lon2);

struct SpatialCoverage {
  KpiValue value;                      // SC(r)
  std::optional<double> meanNearestKm; // CSP convention: mean distance to nearest site
};

// K5: demand-weighted share of points within radiusKm of a site.
SpatialCoverage spatialCoverage(const std::vector<DemandPoint>& demand,
                                const std::vector<std::pair<double, double>>& sites,
                                double radiusKm);

}  // namespace mcskpi
