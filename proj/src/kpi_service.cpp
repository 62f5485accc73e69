#include "mcskpi/kpi_service.hpp"

#include <algorithm>
#include <cmath>

namespace mcskpi {

namespace {

bool typeMatches(const std::map<std::string, std::string>& connectorTypes,
                 const std::string& componentId, const std::string& wanted) {
  if (wanted.empty()) return true;
  auto it = connectorTypes.find(componentId);
  return it != connectorTypes.end() && it->second == wanted;
}

}  // namespace

KpiValue functionalAvailabilityInstant(
    const std::vector<StatusTimeline>& timelines,
    const std::map<std::string, std::string>& connectorTypes,
    const std::string& connectorType, Timestamp t) {
  KpiValue v{"K6", std::nullopt, std::nullopt, {}};
  std::size_t total = 0;
  std::size_t available = 0;
  for (const auto& tl : timelines) {
    if (!typeMatches(connectorTypes, tl.componentId, connectorType)) continue;
    ++total;
    if (tl.statusAt(t) == Status::Available) ++available;
  }
  if (total == 0) {
    v.notes.push_back("EmptyClass: no connectors of type '" + connectorType + "'");
    return v;
  }
  v.raw = static_cast<double>(available) / static_cast<double>(total);
  v.normalized = v.raw;
  return v;
}

ConnectorAvailability availabilityByConnector(
    const std::vector<StatusTimeline>& timelines,
    const std::map<std::string, std::string>& connectorTypes,
    const std::string& connectorType, const AnalysisWindow& window) {
  ConnectorAvailability out;
  out.value.kpiId = "K9";
  const double dt = static_cast<double>(window.length());
  double shareSum = 0.0;
  double downtimeSum = 0.0;
  std::size_t total = 0;
  for (const auto& tl : timelines) {
    if (!typeMatches(connectorTypes, tl.componentId, connectorType)) continue;
    ++total;
    const auto availableSeconds = static_cast<double>(tl.timeIn(Status::Available));
    shareSum += availableSeconds / dt;
    downtimeSum += (dt - availableSeconds) / 3600.0;
  }
  if (total == 0) {
    out.value.notes.push_back("EmptyClass: no connectors of type '" + connectorType + "'");
    return out;
  }
  out.value.raw = shareSum / static_cast<double>(total);
  out.value.normalized = out.value.raw;
  out.meanDowntimeHours = downtimeSum / static_cast<double>(total);
  return out;
}

UptimeStats uptimeMtbfMdf(const std::vector<Interval>& faults, const AnalysisWindow& window) {
  UptimeStats s;
  const double dtHours = static_cast<double>(window.length()) / 3600.0;
  for (const auto& iv : faults) s.downtimeSeconds += iv.length();
  s.faultCount = static_cast<std::int64_t>(faults.size());
  const double downHours = static_cast<double>(s.downtimeSeconds) / 3600.0;
  s.uptime = 1.0 - downHours / dtHours;
  if (s.faultCount > 0) {
    s.mtbfHours = (dtHours - downHours) / static_cast<double>(s.faultCount);
    s.mdfHours = downHours / static_cast<double>(s.faultCount);
  }
  return s;
}

std::optional<double> mttrRepairPhaseHours(const std::vector<Interruption>& interruptions) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& intr : interruptions) {
    if (intr.repairStart && intr.fullRestore) {
      sum += static_cast<double>(*intr.fullRestore - *intr.repairStart) / 3600.0;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

Responsiveness interruptionResponsiveness(const std::vector<Interruption>& interruptions,
                                          const AnalysisWindow& window) {
  Responsiveness r;
  std::vector<double> minDelays;
  std::vector<double> fullDelays;
  std::size_t withBoth = 0;
  for (const auto& intr : interruptions) {
    if (!window.contains(intr.start)) continue;
    ++r.eventCount;
    const bool minInWindow = intr.minRestore && *intr.minRestore < window.t1;
    const bool fullInWindow = intr.fullRestore && *intr.fullRestore < window.t1;
    if (!fullInWindow) ++r.censoredCount;  // still open at window end
    if (minInWindow) minDelays.push_back(static_cast<double>(*intr.minRestore - intr.start));
    if (fullInWindow) fullDelays.push_back(static_cast<double>(*intr.fullRestore - intr.start));
    if (minInWindow && fullInWindow) ++withBoth;
  }
  if (r.eventCount > 0) {
    r.shareWithBothTimestamps = static_cast<double>(withBoth) / static_cast<double>(r.eventCount);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  if (!minDelays.empty()) {
    r.irMinSeconds = mean(minDelays);
    r.irMinMedianSeconds = median(minDelays);
  }
  if (!fullDelays.empty()) {
    r.irFullSeconds = mean(fullDelays);
    r.irFullMedianSeconds = median(fullDelays);
  }
  return r;
}

KpiValue gridOutageTolerance(const std::vector<Interval>& outages,
                             const std::vector<std::pair<Timestamp, double>>& powerSamples,
                             double pminKw, bool hasBackupPower) {
  KpiValue v{"K7", std::nullopt, std::nullopt, {}};
  const auto merged = mergeIntervals(outages);
  if (totalDuration(merged) == 0) {
    v.notes.push_back("undefined: no grid-outage stress observed");
    return v;
  }
  if (!hasBackupPower) {
    // No islanding capability: zero deliverable power during any grid outage.
    v.raw = 0.0;
    v.normalized = 0.0;
    v.notes.push_back("site declared without BESS/backup");
    return v;
  }
  std::size_t inOutage = 0;
  std::size_t aboveMin = 0;
  for (const auto& [t, kw] : powerSamples) {
    for (const auto& iv : merged) {
      if (t >= iv.start && t < iv.end) {
        ++inOutage;
        if (kw >= pminKw) ++aboveMin;
        break;
      }
    }
  }
  if (inOutage == 0) {
    v.notes.push_back("NoSamplesInOutage: power samples do not cover outage intervals");
    return v;
  }
  v.raw = static_cast<double>(aboveMin) / static_cast<double>(inOutage);
  v.normalized = v.raw;
  return v;
}

CoscResult commsOutageContinuity(const std::vector<Interval>& commsOutages,
                                 const StatusTimeline& serviceability,
                                 const std::vector<std::pair<std::string, bool>>& offlineSessions) {
  CoscResult out;
  out.timeShare.kpiId = "K8_time";
  out.sessionShare.kpiId = "K8_sessions";

  AnalysisWindow window{serviceability.t0, serviceability.t1, 1};
  const auto merged = clipIntervals(commsOutages, window);
  const Duration outageTotal = totalDuration(merged);
  if (outageTotal == 0) {
    out.timeShare.notes.push_back("undefined: no comms outages in window");
  } else {
    std::vector<Interval> serviced;
    for (const auto& seg : serviceability.segments) {
      if (seg.status == Status::Available || seg.status == Status::Occupied) {
        serviced.push_back({seg.start, seg.end, false});
      }
    }
    const Duration servicedInOutage = intersectionMeasure(mergeIntervals(serviced), merged);
    out.timeShare.raw = static_cast<double>(servicedInOutage) / static_cast<double>(outageTotal);
    out.timeShare.normalized = out.timeShare.raw;
  }

  if (offlineSessions.empty()) {
    out.sessionShare.notes.push_back("undefined: no offline sessions recorded");
  } else {
    std::size_t settled = 0;
    for (const auto& [id, ok] : offlineSessions) {
      if (ok) ++settled;
    }
    out.sessionShare.raw =
        static_cast<double>(settled) / static_cast<double>(offlineSessions.size());
    out.sessionShare.normalized = out.sessionShare.raw;
  }
  return out;
}

}  // namespace mcskpi
