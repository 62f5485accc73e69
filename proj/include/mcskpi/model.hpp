#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcskpi {

// Timestamps are integer seconds since the Unix epoch, UTC. Sub-second
// inputs are truncated on ingest so interval arithmetic stays exact.
using Timestamp = std::int64_t;
using Duration = std::int64_t;

Timestamp parseIso8601(const std::string& text);
std::string formatIso8601(Timestamp t);

struct MalformedDocument : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadDistribution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadRates : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MisalignedSeries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-open window [t0, t1).
struct AnalysisWindow {
  Timestamp t0 = 0;
  Timestamp t1 = 0;
  Duration resolution = 1;

  Duration length() const { return t1 - t0; }
  bool contains(Timestamp t) const { return t >= t0 && t < t1; }
  void validate() const;
};

enum class Status { Available, Occupied, OutOfService, Fault, Unknown };

// Closed status set; anything unrecognized maps to Unknown.
Status parseStatus(const std::string& label, bool* recognized = nullptr);
std::string statusLabel(Status s);

struct Connector {
  std::string connectorId;
  std::string connectorType;
  double maxPowerKw = 0.0;
  std::string refillPointId;
};

struct RefillPoint {
  std::string refillPointId;
  std::string stationId;
  std::optional<std::string> feederId;
  std::vector<Connector> connectors;
};

struct Station {
  std::string stationId;
  std::vector<RefillPoint> refillPoints;
};

struct SiteInventory {
  std::string siteId;
  std::vector<Station> stations;
  double lat = 0.0;
  double lon = 0.0;
  std::set<std::string> paymentMethods;
  std::vector<std::pair<std::string, double>> energyMix;
  std::map<std::string, std::string> operatorMeta;
  bool hasBackupPower = false;

  std::vector<const Connector*> allConnectors() const;
  std::vector<const RefillPoint*> allRefillPoints() const;
  // Every component id (site, station, point, connector) must be unique.
  void validate() const;
};

struct StatusEvent {
  std::string componentId;
  Timestamp timestamp = 0;
  Status status = Status::Unknown;
};

struct Segment {
  Timestamp start = 0;
  Timestamp end = 0;
  Status status = Status::Unknown;
};

// Piecewise-constant state function tiling [t0, t1).
struct StatusTimeline {
  std::string componentId;
  Timestamp t0 = 0;
  Timestamp t1 = 0;
  std::vector<Segment> segments;

  Status statusAt(Timestamp t) const;
  Duration timeIn(Status s) const;
  void validate() const;
};

struct Interval {
  Timestamp start = 0;
  Timestamp end = 0;
  bool censored = false;

  Duration length() const { return end - start; }
};

struct Interruption {
  Timestamp start = 0;
  std::optional<Timestamp> minRestore;
  std::optional<Timestamp> fullRestore;
  std::optional<Timestamp> repairStart;
};

struct StressorLog {
  std::vector<Interval> gridOutages;
  std::vector<Interval> commsOutages;
  std::vector<Interruption> interruptions;
  std::vector<Interval> plannedMaintenance;
  std::vector<std::pair<Timestamp, double>> powerSamples;  // availablePowerKw
  std::vector<std::pair<std::string, bool>> offlineSessions;  // (id, settled)
};

struct RateObservation {
  Timestamp timestamp = 0;
  double rate = 0.0;
};

struct RateSeries {
  std::string currency = "EUR";
  std::vector<RateObservation> observations;
};

struct DemandPoint {
  std::string locationId;
  double lat = 0.0;
  double lon = 0.0;
  double weight = 1.0;
};

struct QueueRecord {
  std::string vehicleId;
  std::optional<Timestamp> tJoin;
  Timestamp tPlug = 0;
};

struct MessageLatency {
  std::string messageClass;
  double latencySeconds = 0.0;
  double slaSeconds = 0.0;
};

struct SecurityIncident {
  double detectHours = 0.0;
  double recoverHours = 0.0;
};

struct CyberTelemetry {
  std::int64_t heartbeatsExpected = 0;
  std::int64_t heartbeatsMissed = 0;
  std::int64_t pingsExpected = 0;
  std::int64_t pingsMissed = 0;
  std::int64_t transactions = 0;
  std::int64_t timeouts = 0;
  std::int64_t tlsAttempts = 0;
  std::int64_t tlsSuccesses = 0;
  std::optional<Timestamp> certIssuedAt;
  std::map<std::string, Timestamp> certAcceptedAt;
  std::int64_t certPendingDevices = 0;  // devices never accepting the new cert
  std::vector<MessageLatency> messageLatencies;
  std::map<std::string, double> clockErrorsSeconds;
  std::map<std::string, std::vector<double>> patchDelaysDays;  // by severity
  std::vector<SecurityIncident> securityIncidents;
  std::int64_t vulnsDueCount = 0;
  std::int64_t vulnsClosedInSlaCount = 0;
  std::int64_t mfaPrivilegedTotal = 0;
  std::int64_t mfaPrivilegedCovered = 0;
  std::optional<double> certValidShare;  // fraction of chargers with healthy certs
  std::optional<bool> networkSeparation;
  std::string networkSeparationNotes;
  Duration latenessThresholdSeconds = 120;

  void validate() const;
};

struct KpiValue {
  std::string kpiId;
  std::optional<double> raw;
  std::optional<double> normalized;
  std::vector<std::string> notes;

  bool defined() const { return raw.has_value(); }
};

enum class NormKind { Identity, MinMax, InvertedMinMax };

struct NormSpec {
  NormKind kind = NormKind::Identity;
  double lo = 0.0;
  double hi = 1.0;
};

struct Thresholds {
  double pthrKw = 1000.0;
  double pminKw = 100.0;
  int ntarget = 4;
  double coverageRadiusKm = 50.0;
  Duration windowPivSeconds = 24 * 3600;
  Duration pivStepSeconds = 3600;
  Duration psiBaselineSeconds = 7 * 24 * 3600;
  double surgeThreshold = 2.0;
  int nmin = 2;
  Duration latenessDeltaSeconds = 120;
  double cdlNormLoDays = 0.0;
  double cdlNormHiDays = 30.0;
  Duration seedLookbackSeconds = 7 * 24 * 3600;
  double waitNormHiMinutes = 120.0;
  double irNormHiSeconds = 3600.0;
};

struct WeightConfig {
  std::map<std::string, double> weights;  // sub-KPI set S, must sum to 1
  double wFault = 0.1;
  double perturbationFraction = 0.20;
  std::map<std::string, NormSpec> normalization;
  Thresholds thresholds;
  std::set<std::string> renewableLabels = {"solar", "wind", "hydro", "biomass",
                                           "geothermal"};
  bool excludeMaintenance = true;
  bool treatOutOfServiceAsFault = true;

  static WeightConfig defaults();
  void validate() const;
};

double median(std::vector<double> values);
// Nearest-rank percentile: ceil(p*n)-th order statistic, p in (0,1].
double percentileNearestRank(std::vector<double> values, double p);

}  // namespace mcskpi
