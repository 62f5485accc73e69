#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcskpi/intervals.hpp"
#include "mcskpi/model.hpp"

namespace mcskpi {

// Availability-and-recovery KPIs K6-K11.

// K6: share of connectors of the given type that are `available` at t.
// connectorType empty means all connectors.
KpiValue functionalAvailabilityInstant(
    const std::vector<StatusTimeline>& timelines,
    const std::map<std::string, std::string>& connectorTypes,
    const std::string& connectorType, Timestamp t);

struct ConnectorAvailability {
  KpiValue value;                       // mean share of time available
  std::optional<double> meanDowntimeHours;  // time not available, per connector
};

// K9: time-weighted availability averaged over connectors of a type.
ConnectorAvailability availabilityByConnector(
    const std::vector<StatusTimeline>& timelines,
    const std::map<std::string, std::string>& connectorTypes,
    const std::string& connectorType, const AnalysisWindow& window);

struct UptimeStats {
  double uptime = 1.0;
  std::optional<double> mtbfHours;  // n/a when no fault intervals
  double mdfHours = 0.0;
  std::int64_t faultCount = 0;
  Duration downtimeSeconds = 0;
};

// K10 from fault intervals already clipped to the window.
UptimeStats uptimeMtbfMdf(const std::vector<Interval>& faults, const AnalysisWindow& window);

// Optional MTTR: mean repair-phase duration over events carrying both
// repairStart and fullRestore.
std::optional<double> mttrRepairPhaseHours(const std::vector<Interruption>& interruptions);

struct Responsiveness {
  std::optional<double> irMinSeconds;
  std::optional<double> irFullSeconds;
  std::optional<double> irMinMedianSeconds;
  std::optional<double> irFullMedianSeconds;
  std::int64_t eventCount = 0;
  std::int64_t censoredCount = 0;
  double shareWithBothTimestamps = 0.0;
};

// K11: mean (and median) time to minimum-viable and full restoration.
// Events still open at t1 are censored: excluded from the means, counted.
Responsiveness interruptionResponsiveness(const std::vector<Interruption>& interruptions,
                                          const AnalysisWindow& window);

// K7: discrete estimator over power samples falling inside outage intervals.
// A site declared without backup scores 0 whenever outages exist.
KpiValue gridOutageTolerance(const std::vector<Interval>& outages,
                             const std::vector<std::pair<Timestamp, double>>& powerSamples,
                             double pminKw, bool hasBackupPower);

struct CoscResult {
  KpiValue timeShare;      // COSC_time
  KpiValue sessionShare;   // COSC_sessions
};

// K8: serviceability s(t) = 1 iff the site timeline is available or occupied.
CoscResult commsOutageContinuity(const std::vector<Interval>& commsOutages,
                                 const StatusTimeline& serviceability,
                                 const std::vector<std::pair<std::string, bool>>& offlineSessions);

}  // namespace mcskpi
