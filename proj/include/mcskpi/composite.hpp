#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcskpi/model.hpp"

namespace mcskpi {

// Normalization, the Site Resilience Score, sensitivity ablation, hierarchy
// roll-ups, and the Interoperability Readiness Index.

std::optional<double> normalizeValue(std::optional<double> raw, const NormSpec& spec);

// Aggregate time in fault/outOfService across refill points / (#points * dT).
double siteFaultRate(const std::vector<StatusTimeline>& pointTimelines,
                     const AnalysisWindow& window);

struct SrsComponent {
  std::optional<double> raw;
  std::optional<double> normalized;
  double weight = 0.0;           // configured weight
  double effectiveWeight = 0.0;  // after dropping undefined and renormalizing
};

struct SensitivityEntry {
  std::string kpiId;
  int direction = +1;  // +1 or -1
  double srsDelta = 0.0;
};

struct SrsResult {
  std::optional<double> srs;
  double headline0to100 = 0.0;  // clamp(srs, 0, 1) * 100
  double faultRate = 0.0;
  double wFault = 0.0;
  std::map<std::string, SrsComponent> components;
  std::vector<std::string> droppedKpis;  // undefined, weight renormalized away
  std::vector<SensitivityEntry> sensitivity;
  double maxAbsDelta = 0.0;
  std::vector<std::pair<std::string, double>> radarData;
};

// SRS = sum(w_i * norm_i) - wFault * faultRate over the defined sub-KPIs,
// with weights renormalized over the defined set.
SrsResult siteResilienceScore(const std::map<std::string, KpiValue>& values,
                              const WeightConfig& config, double faultRate);

// +-perturbation ablation on each configured weight, renormalized.
std::vector<SensitivityEntry> weightSensitivity(const std::map<std::string, KpiValue>& values,
                                                const WeightConfig& config, double faultRate,
                                                double* maxAbsDelta = nullptr);

enum class AggregationRule { TimeWeighted, CountPooled };

struct ChildValue {
  double numerator = 0.0;
  double denominator = 0.0;
};

struct RolledUpValue {
  std::optional<double> value;
  double numerator = 0.0;
  double denominator = 0.0;
  AggregationRule rule = AggregationRule::CountPooled;
};

// Pooled numerator/denominator aggregation; time-weighted KPIs pass
// (duration-in-state, duration) pairs, count-based KPIs pass raw counts.
RolledUpValue rollUp(AggregationRule rule, const std::vector<ChildValue>& children);

struct KpiCatalogEntry {
  std::string kpiId;
  char minTier = 'A';  // A: static+status; B: +csms; C: +ems; D: +reservations
  std::string category;
};

// The KPI portfolio with minimum computation tier and reporting category.
const std::vector<KpiCatalogEntry>& defaultKpiCatalog();

struct IriResult {
  double percent = 0.0;
  int computable = 0;
  int total = 0;
  std::map<char, std::pair<int, int>> perTier;          // tier -> (computable, total)
  std::map<std::string, std::pair<int, int>> perCategory;
  std::vector<std::string> computableKpis;
};

IriResult interoperabilityReadiness(const std::set<std::string>& declaredFeeds,
                                    const std::vector<KpiCatalogEntry>& catalog =
                                        defaultKpiCatalog());

}  // namespace mcskpi
