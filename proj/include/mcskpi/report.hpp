#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mcskpi/composite.hpp"
#include "mcskpi/ingest.hpp"
#include "mcskpi/model.hpp"

namespace mcskpi {

// JSON weight/normalization config; missing fields fall back to defaults.
WeightConfig parseConfigFile(const std::string& path);
nlohmann::json configToJson(const WeightConfig& config);

struct Report {
  nlohmann::json document;   // full-precision report.json payload
  std::string csv;           // human table, rounded per reporting rules
  std::string radarCsv;      // plot-ready (kpiId, normalized) pairs
  int definedKpiCount = 0;
  std::vector<std::string> warnings;
};

// Full pipeline: timelines -> KPIs -> normalization -> SRS -> IRI.
// `level` in {connector, point, station, pool, site} selects the breakdown
// granularity; headline KPIs are always site-level.
Report computeReport(const FeedBundle& bundle, const AnalysisWindow& window,
                     const WeightConfig& config, const std::string& level = "site");

// Recomputes SRS from a report's own components; used by `explain`.
double recomputeSrsFromReport(const nlohmann::json& report);

}  // namespace mcskpi
