#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcskpi/ingest.hpp"
#include "mcskpi/model.hpp"

namespace mcskpi {

// Synthetic feed bundles with analytically known KPIs, for end-to-end
// validation. Generation is deterministic: mt19937_64 with an explicit
// 64-bit seed, single-threaded per scenario.

struct FaultInjection {
  std::size_t connectorIndex = 0;  // index into the flattened connector list
  Duration startOffset = 0;        // seconds after t0
  Duration duration = 0;
};

struct SurgeInjection {
  Duration offset = 0;   // seconds after t0
  double magnitude = 0;  // added on top of the base rate
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  AnalysisWindow window;
  // Site shape
  int stations = 1;
  int pointsPerStation = 2;
  int connectorsPerPoint = 1;
  double maxPowerKw = 1000.0;
  std::string connectorType = "MCS";
  std::vector<std::string> paymentMethods = {"adhoc-card", "app"};
  std::vector<std::pair<std::string, double>> energyMix = {{"solar", 0.6}, {"gas", 0.4}};
  bool hasBackupPower = false;
  double lat = 52.0;
  double lon = 5.0;
  // Stressors
  std::vector<FaultInjection> faults;      // explicit, construction-determined
  int randomFaultCount = 0;                // additional random faults per site
  Duration randomFaultMeanDuration = 3600;
  std::vector<Interval> gridOutages;       // absolute timestamps
  std::vector<Interval> commsOutages;
  // Price process
  double baseRate = 0.40;
  Duration rateIntervalSeconds = 3600;
  std::vector<SurgeInjection> surges;
  // Queueing
  double lambdaPerHour = 0.0;
  double muPerHour = 1.0;
  int servers = 1;
  int arrivals = 0;
  // Cyber counters (construction-determined rates)
  std::optional<CyberTelemetry> cyber;

  static ScenarioSpec fromJsonFile(const std::string& path);
};

struct GroundTruth {
  std::map<std::string, double> uptimePerConnector;
  double availabilityOverall = 1.0;  // K9 over all connectors
  double faultRate = 0.0;
  double rsite = 1.0;
  double hpShare1000 = 0.0;
  double hpShare750 = 0.0;
  double gsr = 0.0;
  double uar = 1.0;
  std::optional<double> hfr;
  std::optional<double> pfr;
  std::optional<double> lkfr;
  std::optional<double> ctr;
  std::optional<double> sses;
  bool constantPrice = true;  // when true, every defined PIV is 0
  int expectedSurgeCount = 0;
};

struct Scenario {
  FeedBundle bundle;
  GroundTruth truth;
};

Scenario generateScenario(const ScenarioSpec& spec);

// Writes inventory.json, status.jsonl, queue.jsonl, cyber.json, demand.json
// and groundtruth.json with deterministic content.
void writeScenarioFiles(const Scenario& scenario, const ScenarioSpec& spec,
                        const std::string& outDir);

struct MmsEmpirical {
  double meanWaitHours = 0.0;
  double waitStdError = 0.0;  // batch-means standard error
  double utilization = 0.0;
  bool unstable = false;
};

// Discrete-event FIFO M/M/s simulation; the oracle for mmsWaitProxy.
MmsEmpirical mmsSimulator(double lambdaPerHour, double muPerHour, int servers,
                          std::int64_t arrivals, std::uint64_t seed);

}  // namespace mcskpi
