#include "mcskpi/kpi_cyber.hpp"

#include <algorithm>
#include <cmath>

namespace mcskpi {

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

LinkFailure linkKeepaliveFailure(const CyberTelemetry& tel) {
  LinkFailure out;
  out.hfr = ratio(tel.heartbeatsMissed, tel.heartbeatsExpected);
  out.pfr = ratio(tel.pingsMissed, tel.pingsExpected);
  if (out.hfr && out.pfr) {
    out.lkfr = 0.5 * *out.hfr + 0.5 * *out.pfr;
  } else if (out.hfr) {
    out.lkfr = out.hfr;
    out.notes.push_back("PFR undefined (no expected pings); LKFR equals HFR");
  } else if (out.pfr) {
    out.lkfr = out.pfr;
    out.notes.push_back("HFR undefined (no expected heartbeats); LKFR equals PFR");
  } else {
    out.notes.push_back("undefined: no expected heartbeats or pings");
  }
  return out;
}

std::optional<double> commTimeoutRate(const CyberTelemetry& tel) {
  return ratio(tel.timeouts, tel.transactions);
}

std::optional<double> secureSessionSuccess(const CyberTelemetry& tel) {
  return ratio(tel.tlsSuccesses, tel.tlsAttempts);
}

CertLatency certDeploymentLatency(const CyberTelemetry& tel) {
  CertLatency out;
  out.pendingDevices = tel.certPendingDevices;
  if (!tel.certIssuedAt || tel.certAcceptedAt.empty()) return out;
  std::vector<double> latencies;
  for (const auto& [device, accepted] : tel.certAcceptedAt) {
    latencies.push_back(static_cast<double>(accepted - *tel.certIssuedAt) / 86400.0);
  }
  out.medianDays = median(latencies);
  return out;
}

std::optional<double> telemetryFreshness(const CyberTelemetry& tel) {
  if (tel.messageLatencies.empty()) return std::nullopt;
  std::size_t ok = 0;
  for (const auto& m : tel.messageLatencies) {
    if (m.latencySeconds <= m.slaSeconds) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(tel.messageLatencies.size());
}

std::optional<double> timeSyncHealth(const CyberTelemetry& tel) {
  if (tel.clockErrorsSeconds.empty()) return std::nullopt;
  std::size_t ok = 0;
  for (const auto& [device, err] : tel.clockErrorsSeconds) {
    if (std::abs(err) <= 2.0) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(tel.clockErrorsSeconds.size());
}

Day1Indicators day1Indicators(const CyberTelemetry& tel) {
  Day1Indicators out;

  auto critical = tel.patchDelaysDays.find("critical");
  if (critical != tel.patchDelaysDays.end() && !critical->second.empty()) {
    out.patchLatencyMedianDays.value = median(critical->second);
    out.patchLatencyMedianDays.hasTarget = true;
    out.patchLatencyMedianDays.pass = *out.patchLatencyMedianDays.value <= 14.0;
  }

  if (!tel.securityIncidents.empty()) {
    std::vector<double> detect;
    std::vector<double> recover;
    for (const auto& inc : tel.securityIncidents) {
      detect.push_back(inc.detectHours);
      recover.push_back(inc.recoverHours);
    }
    double dSum = 0, rSum = 0;
    for (double x : detect) dSum += x;
    for (double x : recover) rSum += x;
    out.securityMttdMeanHours = dSum / static_cast<double>(detect.size());
    out.securityMttdMedianHours = median(detect);
    out.securityMttrMeanHours = rSum / static_cast<double>(recover.size());
    out.securityMttrMedianHours.value = median(recover);
    out.securityMttrMedianHours.hasTarget = true;
    out.securityMttrMedianHours.pass = *out.securityMttrMedianHours.value <= 4.0;
  }

  if (tel.vulnsDueCount > 0) {
    out.vulnClosureRate.value =
        static_cast<double>(tel.vulnsClosedInSlaCount) / static_cast<double>(tel.vulnsDueCount);
    out.vulnClosureRate.hasTarget = true;
    out.vulnClosureRate.pass = *out.vulnClosureRate.value >= 0.90;
  }

  if (tel.mfaPrivilegedTotal > 0) {
    out.mfaCoverage =
        static_cast<double>(tel.mfaPrivilegedCovered) / static_cast<double>(tel.mfaPrivilegedTotal);
  }

  if (tel.certValidShare) {
    out.certHealthShare.value = tel.certValidShare;
    out.certHealthShare.hasTarget = true;
    out.certHealthShare.pass = *out.certHealthShare.value >= 0.99;
  }

  out.networkSeparation = tel.networkSeparation;
  out.networkSeparationNotes = tel.networkSeparationNotes;
  return out;
}

CyberSubIndices cyberSubIndices(std::optional<double> lkfr, std::optional<double> ctr,
                                std::optional<double> sses, std::optional<double> cdlNormalized,
                                std::optional<double> coscTime) {
  CyberSubIndices out;
  {
    std::vector<double> parts;
    if (lkfr) parts.push_back(1.0 - *lkfr); else out.notes.push_back("linkHealth: LKFR dropped");
    if (ctr) parts.push_back(1.0 - *ctr); else out.notes.push_back("linkHealth: CTR dropped");
    if (sses) parts.push_back(*sses); else out.notes.push_back("linkHealth: SSES dropped");
    if (!parts.empty()) {
      double s = 0;
      for (double x : parts) s += x;
      out.linkHealth = s / static_cast<double>(parts.size());
    }
  }
  {
    std::vector<double> parts;
    if (cdlNormalized) parts.push_back(*cdlNormalized);
    else out.notes.push_back("recovery: CDL dropped");
    if (coscTime) parts.push_back(*coscTime);
    else out.notes.push_back("recovery: COSC_time dropped");
    if (!parts.empty()) {
      double s = 0;
      for (double x : parts) s += x;
      out.recovery = s / static_cast<double>(parts.size());
    }
  }
  return out;
}

}  // namespace mcskpi
