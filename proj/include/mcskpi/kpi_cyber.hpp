#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcskpi/model.hpp"

namespace mcskpi {

// §-style OCPP/transport link-health and lifecycle KPIs from CyberTelemetry.

struct LinkFailure {
  std::optional<double> hfr;
  std::optional<double> pfr;
  std::optional<double> lkfr;  // mean of the defined components
  std::vector<std::string> notes;
};

LinkFailure linkKeepaliveFailure(const CyberTelemetry& tel);

std::optional<double> commTimeoutRate(const CyberTelemetry& tel);
// Also reported under the THSR alias (identical formula).
std::optional<double> secureSessionSuccess(const CyberTelemetry& tel);

struct CertLatency {
  std::optional<double> medianDays;
  std::int64_t pendingDevices = 0;  // never accepted the new certificate
};

CertLatency certDeploymentLatency(const CyberTelemetry& tel);

std::optional<double> telemetryFreshness(const CyberTelemetry& tel);
// Share of devices with |clock error| <= 2 s.
std::optional<double> timeSyncHealth(const CyberTelemetry& tel);

struct Day1Indicator {
  std::optional<double> value;
  bool hasTarget = false;
  bool pass = false;
};

struct Day1Indicators {
  Day1Indicator patchLatencyMedianDays;  // target <= 14 (critical severity)
  std::optional<double> securityMttdMeanHours;
  std::optional<double> securityMttdMedianHours;
  Day1Indicator securityMttrMedianHours;  // target <= 4
  std::optional<double> securityMttrMeanHours;
  Day1Indicator vulnClosureRate;          // target >= 0.90
  std::optional<double> mfaCoverage;
  Day1Indicator certHealthShare;          // target >= 0.99
  std::optional<bool> networkSeparation;
  std::string networkSeparationNotes;
};

Day1Indicators day1Indicators(const CyberTelemetry& tel);

struct CyberSubIndices {
  std::optional<double> linkHealth;  // mean of {1-LKFR, 1-CTR, SSES}
  std::optional<double> recovery;    // mean of {normalized CDL, COSC_time}
  std::vector<std::string> notes;
};

CyberSubIndices cyberSubIndices(std::optional<double> lkfr, std::optional<double> ctr,
                                std::optional<double> sses, std::optional<double> cdlNormalized,
                                std::optional<double> coscTime);

}  // namespace mcskpi
