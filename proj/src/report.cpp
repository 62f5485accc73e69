#include "mcskpi/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "mcskpi/kpi_cyber.hpp"
#include "mcskpi/kpi_market_queue.hpp"
#include "mcskpi/kpi_service.hpp"
#include "mcskpi/kpi_structural.hpp"

namespace mcskpi {

using nlohmann::json;

namespace {

NormSpec parseNormSpec(const json& j, const std::string& where) {
  NormSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") spec.kind = NormKind::Identity;
  else if (kind == "minmax") spec.kind = NormKind::MinMax;
  else if (kind == "inverted-minmax") spec.kind = NormKind::InvertedMinMax;
  else throw SchemaViolation(where + ": unknown normalization kind '" + kind + "'");
  spec.lo = j.value("lo", 0.0);
  spec.hi = j.value("hi", 1.0);
  return spec;
}

std::string normKindLabel(NormKind kind) {
  switch (kind) {
    case NormKind::Identity: return "identity";
    case NormKind::MinMax: return "minmax";
    case NormKind::InvertedMinMax: return "inverted-minmax";
  }
  return "identity";
}

json optJson(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

// Unit tags drive the human CSV rounding rules.
enum class Unit { Share, Seconds, Minutes, Score };

struct KpiRow {
  std::string id;
  std::optional<double> raw;
  std::optional<double> normalized;
  Unit unit = Unit::Share;
  std::vector<std::string> notes;
};

std::string displayValue(const std::optional<double>& raw, Unit unit) {
  if (!raw) return "undefined";
  char buf[64];
  switch (unit) {
    case Unit::Share:
      std::snprintf(buf, sizeof(buf), "%.1f%%", *raw * 100.0);
      return buf;
    case Unit::Seconds:
      std::snprintf(buf, sizeof(buf), "%lld min",
                    static_cast<long long>(std::llround(*raw / 60.0)));
      return buf;
    case Unit::Minutes:
      std::snprintf(buf, sizeof(buf), "%lld min", static_cast<long long>(std::llround(*raw)));
      return buf;
    case Unit::Score:
      std::snprintf(buf, sizeof(buf), "%.3f", *raw);
      return buf;
  }
  return "";
}

}  // namespace

WeightConfig parseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(path + ": " + e.what());
  }

  WeightConfig cfg = WeightConfig::defaults();
  if (doc.contains("weights")) {
    cfg.weights.clear();
    for (auto it = doc["weights"].begin(); it != doc["weights"].end(); ++it) {
      cfg.weights[it.key()] = it.value().get<double>();
    }
  }
  cfg.wFault = doc.value("wFault", cfg.wFault);
  cfg.perturbationFraction = doc.value("perturbationFraction", cfg.perturbationFraction);
  if (doc.contains("normalization")) {
    for (auto it = doc["normalization"].begin(); it != doc["normalization"].end(); ++it) {
      cfg.normalization[it.key()] = parseNormSpec(it.value(), path + ".normalization");
    }
  }
  if (doc.contains("thresholds")) {
    const auto& t = doc["thresholds"];
    auto& th = cfg.thresholds;
    th.pthrKw = t.value("pthrKw", th.pthrKw);
    th.pminKw = t.value("pminKw", th.pminKw);
    th.ntarget = t.value("ntarget", th.ntarget);
    th.coverageRadiusKm = t.value("coverageRadiusKm", th.coverageRadiusKm);
    th.windowPivSeconds = t.value("windowPivSeconds", th.windowPivSeconds);
    th.pivStepSeconds = t.value("pivStepSeconds", th.pivStepSeconds);
    th.psiBaselineSeconds = t.value("psiBaselineSeconds", th.psiBaselineSeconds);
    th.surgeThreshold = t.value("surgeThreshold", th.surgeThreshold);
    th.nmin = t.value("nmin", th.nmin);
    th.latenessDeltaSeconds = t.value("latenessDeltaSeconds", th.latenessDeltaSeconds);
    th.cdlNormLoDays = t.value("cdlNormLoDays", th.cdlNormLoDays);
    th.cdlNormHiDays = t.value("cdlNormHiDays", th.cdlNormHiDays);
    th.seedLookbackSeconds = t.value("seedLookbackSeconds", th.seedLookbackSeconds);
    th.waitNormHiMinutes = t.value("waitNormHiMinutes", th.waitNormHiMinutes);
    th.irNormHiSeconds = t.value("irNormHiSeconds", th.irNormHiSeconds);
  }
  if (doc.contains("renewableLabels")) {
    cfg.renewableLabels.clear();
    for (const auto& label : doc["renewableLabels"]) {
      cfg.renewableLabels.insert(label.get<std::string>());
    }
  }
  cfg.excludeMaintenance = doc.value("excludeMaintenance", cfg.excludeMaintenance);
  cfg.treatOutOfServiceAsFault = doc.value("treatOutOfServiceAsFault", cfg.treatOutOfServiceAsFault);
  cfg.validate();
  return cfg;
}

json configToJson(const WeightConfig& cfg) {
  json doc;
  doc["weights"] = cfg.weights;
  doc["wFault"] = cfg.wFault;
  doc["perturbationFraction"] = cfg.perturbationFraction;
  json norms;
  for (const auto& [id, spec] : cfg.normalization) {
    norms[id] = {{"kind", normKindLabel(spec.kind)}, {"lo", spec.lo}, {"hi", spec.hi}};
  }
  doc["normalization"] = norms;
  const auto& th = cfg.thresholds;
  doc["thresholds"] = {{"pthrKw", th.pthrKw},
                       {"pminKw", th.pminKw},
                       {"ntarget", th.ntarget},
                       {"coverageRadiusKm", th.coverageRadiusKm},
                       {"windowPivSeconds", th.windowPivSeconds},
                       {"pivStepSeconds", th.pivStepSeconds},
                       {"psiBaselineSeconds", th.psiBaselineSeconds},
                       {"surgeThreshold", th.surgeThreshold},
                       {"nmin", th.nmin},
                       {"latenessDeltaSeconds", th.latenessDeltaSeconds},
                       {"cdlNormLoDays", th.cdlNormLoDays},
                       {"cdlNormHiDays", th.cdlNormHiDays},
                       {"seedLookbackSeconds", th.seedLookbackSeconds},
                       {"waitNormHiMinutes", th.waitNormHiMinutes},
                       {"irNormHiSeconds", th.irNormHiSeconds}};
  doc["renewableLabels"] = cfg.renewableLabels;
  doc["excludeMaintenance"] = cfg.excludeMaintenance;
  doc["treatOutOfServiceAsFault"] = cfg.treatOutOfServiceAsFault;
  return doc;
}

Report computeReport(const FeedBundle& bundle, const AnalysisWindow& window,
                     const WeightConfig& config, const std::string& level) {
  window.validate();
  config.validate();
  const auto& th = config.thresholds;
  Report report;

  // Connector timelines and the derived refill-point / site views.
  std::map<std::string, std::string> connectorTypes;
  std::vector<StatusTimeline> connectorTimelines;
  for (const Connector* c : bundle.inventory.allConnectors()) {
    connectorTypes[c->connectorId] = c->connectorType;
    connectorTimelines.push_back(buildTimeline(bundle.statusEvents, c->connectorId, window));
  }
  std::vector<StatusTimeline> pointTimelines;
  std::map<std::string, std::vector<std::size_t>> stationChildren;  // indices into pointTimelines
  for (const Station& st : bundle.inventory.stations) {
    for (const RefillPoint& rp : st.refillPoints) {
      const bool hasOwnEvents = std::any_of(
          bundle.statusEvents.begin(), bundle.statusEvents.end(),
          [&rp](const StatusEvent& ev) { return ev.componentId == rp.refillPointId; });
      bool added = false;
      if (hasOwnEvents) {
        pointTimelines.push_back(buildTimeline(bundle.statusEvents, rp.refillPointId, window));
        added = true;
      } else {
        std::vector<StatusTimeline> children;
        for (const Connector& c : rp.connectors) {
          for (const auto& tl : connectorTimelines) {
            if (tl.componentId == c.connectorId) children.push_back(tl);
          }
        }
        if (!children.empty()) {
          pointTimelines.push_back(combineTimelines(children, rp.refillPointId));
          added = true;
        }
      }
      if (added) stationChildren[st.stationId].push_back(pointTimelines.size() - 1);
    }
  }

  const std::vector<Interval> maintenance =
      config.excludeMaintenance ? bundle.stressors.plannedMaintenance : std::vector<Interval>{};

  std::map<std::string, KpiValue> values;
  std::vector<KpiRow> rows;
  json kpiDetails;

  auto record = [&](const std::string& id, const KpiValue& v, Unit unit, json extra = json()) {
    KpiValue stored = v;
    stored.kpiId = id;
    NormSpec spec{NormKind::Identity, 0, 1};
    auto it = config.normalization.find(id);
    if (it != config.normalization.end()) spec = it->second;
    stored.normalized = normalizeValue(stored.raw, spec);
    values[id] = stored;
    rows.push_back({id, stored.raw, stored.normalized, unit, stored.notes});
    json detail = extra.is_null() ? json::object() : extra;
    detail["raw"] = optJson(stored.raw);
    detail["normalized"] = optJson(stored.normalized);
    if (!stored.notes.empty()) detail["notes"] = stored.notes;
    kpiDetails[id] = detail;
  };

  // K1-K5 from the static profile.
  record("K1", redundancyAtSite(bundle.inventory, th.ntarget), Unit::Share,
         json{{"ntarget", th.ntarget}});
  {
    const auto hp = highPowerShare(bundle.inventory, th.pthrKw);
    record("K2", hp.value, Unit::Share,
           json{{"thresholdKw", th.pthrKw},
                {"share750", optJson(hp.share750)},
                {"share1000", optJson(hp.share1000)}});
  }
  record("K3", greenSupplyRatio(bundle.inventory.energyMix, config.renewableLabels), Unit::Share);
  record("K4", userAccessResilience(bundle.inventory.paymentMethods), Unit::Score,
         json{{"methods", bundle.inventory.paymentMethods}});
  {
    const std::vector<std::pair<double, double>> sites = {
        {bundle.inventory.lat, bundle.inventory.lon}};
    const auto sc = spatialCoverage(bundle.demand, sites, th.coverageRadiusKm);
    record("K5", sc.value, Unit::Share,
           json{{"radiusKm", th.coverageRadiusKm},
                {"meanNearestKm", optJson(sc.meanNearestKm)}});
  }

  // K6/K9 from connector timelines.
  record("K6",
         functionalAvailabilityInstant(connectorTimelines, connectorTypes, "",
                                       window.t0 + window.length() / 2),
         Unit::Share, json{{"evaluatedAt", formatIso8601(window.t0 + window.length() / 2)}});
  {
    const auto overall = availabilityByConnector(connectorTimelines, connectorTypes, "", window);
    json perType;
    std::set<std::string> types;
    for (const auto& [id, type] : connectorTypes) types.insert(type);
    for (const auto& type : types) {
      const auto a = availabilityByConnector(connectorTimelines, connectorTypes, type, window);
      perType[type] = {{"availability", optJson(a.value.raw)},
                       {"meanDowntimeHours", optJson(a.meanDowntimeHours)}};
    }
    record("K9", overall.value, Unit::Share,
           json{{"perConnectorType", perType},
                {"meanDowntimeHours", optJson(overall.meanDowntimeHours)}});
  }

  // K10 on the site service timeline: up iff any connector can serve.
  std::optional<StatusTimeline> siteTimeline;
  if (!connectorTimelines.empty()) {
    siteTimeline = combineTimelines(connectorTimelines, bundle.inventory.siteId);
  }
  std::int64_t censoredFaultIntervals = 0;
  {
    KpiValue v{"K10", std::nullopt, std::nullopt, {}};
    json extra;
    if (siteTimeline) {
      const auto faults =
          faultIntervals(*siteTimeline, config.treatOutOfServiceAsFault, maintenance);
      for (const auto& iv : faults) {
        if (iv.censored) ++censoredFaultIntervals;
      }
      const auto stats = uptimeMtbfMdf(faults, window);
      v.raw = stats.uptime;
      extra["mtbfHours"] = optJson(stats.mtbfHours);
      extra["mdfHours"] = stats.mdfHours;
      extra["faultIntervals"] = stats.faultCount;
      extra["downtimeSeconds"] = stats.downtimeSeconds;
      const auto mttr = mttrRepairPhaseHours(bundle.stressors.interruptions);
      extra["mttrRepairHours"] = optJson(mttr);
    } else {
      v.notes.push_back("undefined: no connectors in inventory");
    }
    extra["serviceRule"] = "site up iff any connector available or occupied";
    extra["maintenanceExcluded"] = config.excludeMaintenance;
    record("K10", v, Unit::Share, extra);
  }

  // K11 from tagged interruptions.
  {
    const auto r = interruptionResponsiveness(bundle.stressors.interruptions, window);
    KpiValue v{"K11", std::nullopt, std::nullopt, {}};
    if (r.irMinSeconds) {
      v.raw = r.irMinSeconds;
    } else if (r.irFullSeconds) {
      v.raw = r.irFullSeconds;
      v.notes.push_back("IR_min unavailable; IR_full reported");
    } else if (r.eventCount == 0) {
      v.notes.push_back("undefined: no interruption events in window");
    } else {
      v.notes.push_back("undefined: all events censored at window end");
    }
    record("K11", v, Unit::Seconds,
           json{{"irMinSeconds", optJson(r.irMinSeconds)},
                {"irFullSeconds", optJson(r.irFullSeconds)},
                {"irMinMedianSeconds", optJson(r.irMinMedianSeconds)},
                {"irFullMedianSeconds", optJson(r.irFullMedianSeconds)},
                {"events", r.eventCount},
                {"censored", r.censoredCount},
                {"shareWithBothTimestamps", r.shareWithBothTimestamps}});
  }

  // K7 grid-outage tolerance.
  record("K7",
         gridOutageTolerance(clipIntervals(bundle.stressors.gridOutages, window),
                             bundle.stressors.powerSamples, th.pminKw,
                             bundle.inventory.hasBackupPower),
         Unit::Share,
         json{{"pminKw", th.pminKw}, {"hasBackupPower", bundle.inventory.hasBackupPower}});

  // K8 comms-outage continuity.
  std::optional<double> coscTime;
  {
    KpiValue v{"K8", std::nullopt, std::nullopt, {}};
    json extra;
    if (siteTimeline) {
      const auto cosc = commsOutageContinuity(bundle.stressors.commsOutages, *siteTimeline,
                                              bundle.stressors.offlineSessions);
      v.raw = cosc.timeShare.raw;
      v.notes = cosc.timeShare.notes;
      coscTime = cosc.timeShare.raw;
      extra["coscSessions"] = optJson(cosc.sessionShare.raw);
      if (!cosc.sessionShare.notes.empty()) extra["sessionNotes"] = cosc.sessionShare.notes;
    } else {
      v.notes.push_back("undefined: no connectors in inventory");
    }
    record("K8", v, Unit::Share, extra);
  }

  // K12/K13 on the first pricing scope.
  const RateSeries* rates = bundle.rates.empty() ? nullptr : &bundle.rates.begin()->second;
  {
    KpiValue v{"K12", std::nullopt, std::nullopt, {}};
    json extra{{"windowSeconds", th.windowPivSeconds}, {"stepSeconds", th.pivStepSeconds}};
    if (rates) {
      const auto series =
          priceInstabilitySeries(*rates, window, th.windowPivSeconds, th.pivStepSeconds, th.nmin);
      v.raw = series.medianDefined;
      std::size_t defined = 0;
      for (const auto& p : series.points) {
        if (p.piv) ++defined;
      }
      extra["evaluations"] = series.points.size();
      extra["definedEvaluations"] = defined;
      if (!v.raw) v.notes.push_back("undefined: no window with enough observations");
    } else {
      v.notes.push_back("undefined: no rate series in feed");
    }
    record("K12", v, Unit::Score, extra);
  }
  {
    KpiValue v{"K13", std::nullopt, std::nullopt, {}};
    json extra{{"baselineSeconds", th.psiBaselineSeconds}, {"tau", th.surgeThreshold}};
    if (rates) {
      std::size_t defined = 0;
      std::size_t surges = 0;
      double maxPsi = -std::numeric_limits<double>::infinity();
      for (Timestamp t = window.t0; t < window.t1; t += th.pivStepSeconds) {
        const auto psi =
            priceSurgeIntensity(*rates, t, th.psiBaselineSeconds, th.surgeThreshold, th.nmin);
        if (psi.psi) {
          ++defined;
          maxPsi = std::max(maxPsi, *psi.psi);
          if (psi.surge) ++surges;
        }
      }
      extra["definedEvaluations"] = defined;
      extra["surgeCount"] = surges;
      if (defined > 0) {
        v.raw = static_cast<double>(surges) / static_cast<double>(defined);
        extra["maxPsi"] = maxPsi;
      } else {
        v.notes.push_back("undefined: no evaluation with a usable baseline");
      }
    } else {
      v.notes.push_back("undefined: no rate series in feed");
    }
    record("K13", v, Unit::Share, extra);
  }

  // K14 waiting statistics.
  {
    const auto stats = waitingStats(bundle.queue);
    KpiValue v{"K14", std::nullopt, std::nullopt, {}};
    if (stats.medianSeconds) {
      v.raw = *stats.medianSeconds / 60.0;  // minutes, matching the norm range
    } else if (bundle.queue.empty()) {
      v.notes.push_back("undefined: no queue records");
    } else {
      v.notes.push_back("NoJoinSignals: records lack intent-to-charge timestamps");
    }
    record("K14", v, Unit::Minutes,
           json{{"medianSeconds", optJson(stats.medianSeconds)},
                {"p95Seconds", optJson(stats.p95Seconds)},
                {"joinCoverage", stats.joinCoverage},
                {"records", bundle.queue.size()}});
  }

  // Cyber KPIs and the two composite sub-indices.
  if (bundle.cyber) {
    const auto& tel = *bundle.cyber;
    const auto link = linkKeepaliveFailure(tel);
    const auto ctr = commTimeoutRate(tel);
    const auto sses = secureSessionSuccess(tel);
    const auto cdl = certDeploymentLatency(tel);
    const auto tfs = telemetryFreshness(tel);
    const auto tsh = timeSyncHealth(tel);
    const auto day1 = day1Indicators(tel);
    const auto cdlNorm = normalizeValue(
        cdl.medianDays, {NormKind::InvertedMinMax, th.cdlNormLoDays, th.cdlNormHiDays});
    const auto sub = cyberSubIndices(link.lkfr, ctr, sses, cdlNorm, coscTime);

    json cyberJson;
    cyberJson["hfr"] = optJson(link.hfr);
    cyberJson["pfr"] = optJson(link.pfr);
    cyberJson["lkfr"] = optJson(link.lkfr);
    cyberJson["ctr"] = optJson(ctr);
    cyberJson["sses"] = optJson(sses);
    cyberJson["thsr"] = optJson(sses);  // alias, identical formula
    cyberJson["cdlDays"] = optJson(cdl.medianDays);
    cyberJson["cdlPendingDevices"] = cdl.pendingDevices;
    cyberJson["cdlNormalized"] = optJson(cdlNorm);
    cyberJson["tfs"] = optJson(tfs);
    cyberJson["tsh"] = optJson(tsh);
    json d1;
    d1["patchLatencyMedianDays"] = optJson(day1.patchLatencyMedianDays.value);
    d1["patchLatencyPass"] =
        day1.patchLatencyMedianDays.hasTarget ? json(day1.patchLatencyMedianDays.pass) : json();
    d1["securityMttdMeanHours"] = optJson(day1.securityMttdMeanHours);
    d1["securityMttdMedianHours"] = optJson(day1.securityMttdMedianHours);
    d1["securityMttrMeanHours"] = optJson(day1.securityMttrMeanHours);
    d1["securityMttrMedianHours"] = optJson(day1.securityMttrMedianHours.value);
    d1["securityMttrPass"] =
        day1.securityMttrMedianHours.hasTarget ? json(day1.securityMttrMedianHours.pass) : json();
    d1["vulnClosureRate"] = optJson(day1.vulnClosureRate.value);
    d1["vulnClosurePass"] =
        day1.vulnClosureRate.hasTarget ? json(day1.vulnClosureRate.pass) : json();
    d1["mfaCoverage"] = optJson(day1.mfaCoverage);
    d1["certHealthShare"] = optJson(day1.certHealthShare.value);
    d1["certHealthPass"] =
        day1.certHealthShare.hasTarget ? json(day1.certHealthShare.pass) : json();
    d1["networkSeparation"] =
        day1.networkSeparation ? json(*day1.networkSeparation) : json();
    if (!day1.networkSeparationNotes.empty()) {
      d1["networkSeparationNotes"] = day1.networkSeparationNotes;
    }
    cyberJson["day1"] = d1;
    kpiDetails["cyber"] = cyberJson;

    KpiValue linkValue{"cyber_link", sub.linkHealth, std::nullopt, sub.notes};
    record("cyber_link", linkValue, Unit::Score);
    KpiValue recoveryValue{"cyber_recovery", sub.recovery, std::nullopt, {}};
    record("cyber_recovery", recoveryValue, Unit::Score);
  } else {
    KpiValue missing{"cyber_link", std::nullopt, std::nullopt, {"no cyber feed declared"}};
    record("cyber_link", missing, Unit::Score);
    missing.kpiId = "cyber_recovery";
    record("cyber_recovery", missing, Unit::Score);
  }

  // Composite.
  const double faultRate =
      pointTimelines.empty() ? 0.0 : siteFaultRate(pointTimelines, window);
  const SrsResult srs = siteResilienceScore(values, config, faultRate);
  const IriResult iri = interoperabilityReadiness(bundle.declaredFeeds);

  json doc;
  doc["schemaVersion"] = "1.0";
  doc["site"] = bundle.inventory.siteId;
  doc["window"] = {{"t0", window.t0},
                   {"t1", window.t1},
                   {"t0Iso", formatIso8601(window.t0)},
                   {"t1Iso", formatIso8601(window.t1)},
                   {"resolution", window.resolution}};
  doc["level"] = level;
  doc["kpis"] = kpiDetails;

  json srsJson;
  srsJson["value"] = optJson(srs.srs);
  srsJson["headline0to100"] = srs.headline0to100;
  srsJson["faultRate"] = srs.faultRate;
  srsJson["wFault"] = srs.wFault;
  json comps;
  for (const auto& [id, c] : srs.components) {
    comps[id] = {{"raw", optJson(c.raw)},
                 {"normalized", optJson(c.normalized)},
                 {"weight", c.weight},
                 {"effectiveWeight", c.effectiveWeight}};
  }
  srsJson["components"] = comps;
  srsJson["dropped"] = srs.droppedKpis;
  json sens = json::array();
  for (const auto& e : srs.sensitivity) {
    sens.push_back({{"kpiId", e.kpiId},
                    {"direction", e.direction > 0 ? "+" : "-"},
                    {"srsDelta", e.srsDelta}});
  }
  srsJson["sensitivity"] = sens;
  srsJson["maxAbsDelta"] = srs.maxAbsDelta;
  doc["srs"] = srsJson;

  json iriJson;
  iriJson["percent"] = iri.percent;
  iriJson["computable"] = iri.computable;
  iriJson["total"] = iri.total;
  json perTier;
  for (const auto& [tier, counts] : iri.perTier) {
    perTier[std::string(1, tier)] = {{"computable", counts.first}, {"total", counts.second}};
  }
  iriJson["perTier"] = perTier;
  json perCategory;
  for (const auto& [cat, counts] : iri.perCategory) {
    perCategory[cat] = {{"computable", counts.first}, {"total", counts.second}};
  }
  iriJson["perCategory"] = perCategory;
  iriJson["declaredFeeds"] = bundle.declaredFeeds;
  iriJson["computableKpis"] = iri.computableKpis;
  doc["iri"] = iriJson;

  json radar = json::array();
  for (const auto& [id, norm] : srs.radarData) radar.push_back({id, norm});
  doc["radar"] = radar;
  doc["config"] = configToJson(config);

  // Optional per-unit availability breakdown at the requested level.
  if (level != "site") {
    json breakdown;
    auto availabilityOf = [&window](const StatusTimeline& tl) {
      return static_cast<double>(tl.timeIn(Status::Available)) /
             static_cast<double>(window.length());
    };
    if (level == "connector") {
      for (const auto& tl : connectorTimelines) breakdown[tl.componentId] = availabilityOf(tl);
    } else if (level == "point") {
      for (const auto& tl : pointTimelines) breakdown[tl.componentId] = availabilityOf(tl);
    } else if (level == "station" || level == "pool") {
      for (const auto& [stationId, childIdx] : stationChildren) {
        std::vector<StatusTimeline> tls;
        for (std::size_t i : childIdx) tls.push_back(pointTimelines[i]);
        if (!tls.empty()) {
          breakdown[stationId] = availabilityOf(combineTimelines(tls, stationId));
        }
      }
    } else {
      throw BadSpec("unknown level: " + level);
    }
    doc["breakdown"] = breakdown;
  }

  json diagnostics;
  diagnostics["censoredFaultIntervals"] = censoredFaultIntervals;
  std::vector<std::string> undefinedKpis;
  int definedCount = 0;
  for (const auto& [id, v] : values) {
    if (v.defined()) ++definedCount;
    else undefinedKpis.push_back(id);
  }
  diagnostics["undefinedKpis"] = undefinedKpis;
  diagnostics["notes"] = json::array(
      {"K9 counts only `available` as available-for-service; K8 serviceability also counts "
       "`occupied`",
       "temporary operating hours are parsed but not folded into K9"});
  doc["diagnostics"] = diagnostics;

  report.document = std::move(doc);
  report.definedKpiCount = definedCount;

  // Flat CSV with the human rounding rules (full precision stays in JSON).
  std::ostringstream csv;
  csv << "kpiId,raw,normalized,weight,display\n";
  for (const auto& row : rows) {
    csv << row.id << ",";
    if (row.raw) csv << *row.raw;
    csv << ",";
    if (row.normalized) csv << *row.normalized;
    csv << ",";
    auto wit = config.weights.find(row.id);
    if (wit != config.weights.end()) csv << wit->second;
    csv << "," << displayValue(row.raw, row.unit) << "\n";
  }
  if (srs.srs) {
    csv << "K15," << *srs.srs << ",," << "," << displayValue(srs.headline0to100 / 100.0,
                                                             Unit::Share)
        << "\n";
  }
  report.csv = csv.str();

  std::ostringstream radarCsv;
  radarCsv << "kpiId,normalized\n";
  for (const auto& [id, norm] : srs.radarData) radarCsv << id << "," << norm << "\n";
  report.radarCsv = radarCsv.str();
  return report;
}

double recomputeSrsFromReport(const json& report) {
  const auto& srs = report.at("srs");
  double score = 0.0;
  for (const auto& [id, comp] : srs.at("components").items()) {
    if (comp.at("normalized").is_null()) continue;
    score += comp.at("effectiveWeight").get<double>() * comp.at("normalized").get<double>();
  }
  return score - srs.at("wFault").get<double>() * srs.at("faultRate").get<double>();
}

}  // namespace mcskpi
