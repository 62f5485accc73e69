#include "mcskpi/composite.hpp"

#include <algorithm>
#include <cmath>

namespace mcskpi {

std::optional<double> normalizeValue(std::optional<double> raw, const NormSpec& spec) {
  if (!raw) return std::nullopt;
  switch (spec.kind) {
    case NormKind::Identity:
      return std::clamp(*raw, 0.0, 1.0);
    case NormKind::MinMax:
      if (spec.lo >= spec.hi) throw BadSpec("normalization requires lo < hi");
      return std::clamp((*raw - spec.lo) / (spec.hi - spec.lo), 0.0, 1.0);
    case NormKind::InvertedMinMax:
      if (spec.lo >= spec.hi) throw BadSpec("normalization requires lo < hi");
      return 1.0 - std::clamp((*raw - spec.lo) / (spec.hi - spec.lo), 0.0, 1.0);
  }
  return std::nullopt;
}

double siteFaultRate(const std::vector<StatusTimeline>& pointTimelines,
                     const AnalysisWindow& window) {
  if (pointTimelines.empty()) return 0.0;
  Duration faultTime = 0;
  for (const auto& tl : pointTimelines) {
    faultTime += tl.timeIn(Status::Fault) + tl.timeIn(Status::OutOfService);
  }
  return static_cast<double>(faultTime) /
         (static_cast<double>(pointTimelines.size()) * static_cast<double>(window.length()));
}

namespace {

// Core SRS arithmetic over an explicit weight vector.
std::optional<double> srsWith(const std::map<std::string, KpiValue>& values,
                              const std::map<std::string, double>& weights, double wFault,
                              double faultRate, std::vector<std::string>* dropped,
                              std::map<std::string, SrsComponent>* components) {
  double definedWeight = 0.0;
  for (const auto& [id, w] : weights) {
    auto it = values.find(id);
    const bool defined = it != values.end() && it->second.normalized.has_value();
    if (defined) definedWeight += w;
    else if (dropped) dropped->push_back(id);
  }
  if (definedWeight <= 0.0) return std::nullopt;

  double score = 0.0;
  for (const auto& [id, w] : weights) {
    auto it = values.find(id);
    const bool defined = it != values.end() && it->second.normalized.has_value();
    const double effective = defined ? w / definedWeight : 0.0;
    if (defined) score += effective * *it->second.normalized;
    if (components) {
      SrsComponent c;
      if (it != values.end()) {
        c.raw = it->second.raw;
        c.normalized = it->second.normalized;
      }
      c.weight = w;
      c.effectiveWeight = effective;
      (*components)[id] = c;
    }
  }
  return score - wFault * faultRate;
}

}  // namespace

SrsResult siteResilienceScore(const std::map<std::string, KpiValue>& values,
                              const WeightConfig& config, double faultRate) {
  config.validate();
  SrsResult out;
  out.faultRate = faultRate;
  out.wFault = config.wFault;
  out.srs = srsWith(values, config.weights, config.wFault, faultRate, &out.droppedKpis,
                    &out.components);
  if (out.srs) out.headline0to100 = std::clamp(*out.srs, 0.0, 1.0) * 100.0;
  for (const auto& [id, comp] : out.components) {
    if (comp.normalized) out.radarData.emplace_back(id, *comp.normalized);
  }
  out.sensitivity = weightSensitivity(values, config, faultRate, &out.maxAbsDelta);
  return out;
}

std::vector<SensitivityEntry> weightSensitivity(const std::map<std::string, KpiValue>& values,
                                                const WeightConfig& config, double faultRate,
                                                double* maxAbsDelta) {
  std::vector<SensitivityEntry> out;
  if (maxAbsDelta) *maxAbsDelta = 0.0;
  if (config.perturbationFraction == 0.0) return out;

  const auto baseline =
      srsWith(values, config.weights, config.wFault, faultRate, nullptr, nullptr);
  if (!baseline) return out;

  for (const auto& [id, w] : config.weights) {
    for (int direction : {+1, -1}) {
      auto perturbed = config.weights;
      perturbed[id] = w * (1.0 + direction * config.perturbationFraction);
      double sum = 0.0;
      for (const auto& [pid, pw] : perturbed) sum += pw;
      if (sum <= 0.0) continue;
      for (auto& [pid, pw] : perturbed) pw /= sum;
      const auto srs =
          srsWith(values, perturbed, config.wFault, faultRate, nullptr, nullptr);
      if (!srs) continue;
      const double delta = *srs - *baseline;
      out.push_back({id, direction, delta});
      if (maxAbsDelta) *maxAbsDelta = std::max(*maxAbsDelta, std::abs(delta));
    }
  }
  return out;
}

RolledUpValue rollUp(AggregationRule rule, const std::vector<ChildValue>& children) {
  RolledUpValue out;
  out.rule = rule;
  for (const auto& child : children) {
    out.numerator += child.numerator;
    out.denominator += child.denominator;
  }
  if (out.denominator > 0.0) out.value = out.numerator / out.denominator;
  return out;
}

const std::vector<KpiCatalogEntry>& defaultKpiCatalog() {
  static const std::vector<KpiCatalogEntry> catalog = {
      {"K1", 'A', "Availability"},
      {"K2", 'A', "Grid/Flex"},
      {"K3", 'C', "Market/Sourcing"},
      {"K4", 'A', "User/Spatial"},
      {"K5", 'A', "User/Spatial"},
      {"K6", 'A', "Availability"},
      {"K7", 'C', "Grid/Flex"},
      {"K8", 'B', "Availability"},
      {"K9", 'A', "Availability"},
      {"K10", 'A', "Availability"},
      {"K11", 'B', "Availability"},
      {"K12", 'A', "Market/Sourcing"},
      {"K13", 'A', "Market/Sourcing"},
      {"K14", 'D', "HDV Ops"},
      {"K15", 'A', "Availability"},
      {"LKFR", 'B', "Cyber"},
      {"CTR", 'B', "Cyber"},
      {"SSES", 'B', "Cyber"},
      {"CDL", 'C', "Cyber"},
      {"TFS", 'C', "Cyber"},
      {"TSH", 'C', "Cyber"},
      {"PatchLatency", 'C', "Cyber"},
      {"MFACoverage", 'C', "Cyber"},
      {"CertHealth", 'C', "Cyber"},
      {"SecurityMTTR", 'C', "Cyber"},
      {"VulnClosure", 'C', "Cyber"},
      {"NetworkSeparation", 'C', "Cyber"},
  };
  return catalog;
}

IriResult interoperabilityReadiness(const std::set<std::string>& declaredFeeds,
                                    const std::vector<KpiCatalogEntry>& catalog) {
  auto tierSatisfied = [&declaredFeeds](char tier) {
    const bool a = declaredFeeds.count("static") && declaredFeeds.count("status");
    const bool b = a && declaredFeeds.count("csms");
    const bool c = b && declaredFeeds.count("ems");
    const bool d = c && declaredFeeds.count("reservations");
    switch (tier) {
      case 'A': return a;
      case 'B': return b;
      case 'C': return c;
      case 'D': return d;
      default: return false;
    }
  };

  IriResult out;
  out.total = static_cast<int>(catalog.size());
  for (const auto& entry : catalog) {
    const bool computable = tierSatisfied(entry.minTier);
    auto& tier = out.perTier[entry.minTier];
    auto& cat = out.perCategory[entry.category];
    ++tier.second;
    ++cat.second;
    if (computable) {
      ++out.computable;
      ++tier.first;
      ++cat.first;
      out.computableKpis.push_back(entry.kpiId);
    }
  }
  if (out.total > 0) {
    out.percent = 100.0 * static_cast<double>(out.computable) / static_cast<double>(out.total);
  }
  return out;
}

}  // namespace mcskpi
