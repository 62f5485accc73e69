#include "mcskpi/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcskpi {

using nlohmann::json;

namespace {

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(path + ": " + e.what());
  }
}

Timestamp parseTs(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return static_cast<Timestamp>(v.get<double>());
  if (v.is_string()) return parseIso8601(v.get<std::string>());
  throw SchemaViolation(where + ": timestamp must be epoch seconds or ISO-8601 string");
}

void warn(WarningSink* sink, const std::string& msg) {
  if (sink) sink->push_back(msg);
}

void checkKnownFields(const json& obj, const std::set<std::string>& known,
                      const std::string& where, WarningSink* warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      warn(warnings, where + ": ignoring unknown field '" + it.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaViolation(where + ": missing field '" + key + "'");
  return *it;
}

int statusPriority(Status s) {
  switch (s) {
    case Status::Available: return 4;
    case Status::Occupied: return 3;
    case Status::Unknown: return 2;
    case Status::OutOfService: return 1;
    case Status::Fault: return 0;
  }
  return 2;
}

}  // namespace

SiteInventory parseStaticFeed(const std::string& path, WarningSink* warnings) {
  const json doc = loadJsonFile(path);
  if (!doc.is_object()) throw SchemaViolation(path + ": root must be an object");
  if (!doc.contains("schemaVersion")) {
    warn(warnings, path + ": missing schemaVersion");
  }
  checkKnownFields(doc,
                   {"schemaVersion", "siteId", "coordinates", "paymentMethods",
                    "energyMix", "operatorMeta", "hasBackupPower", "stations"},
                   path, warnings);

  SiteInventory inv;
  inv.siteId = require(doc, "siteId", path).get<std::string>();
  if (doc.contains("coordinates")) {
    const auto& c = doc["coordinates"];
    inv.lat = require(c, "lat", path + ".coordinates").get<double>();
    inv.lon = require(c, "lon", path + ".coordinates").get<double>();
  }
  if (doc.contains("paymentMethods")) {
    for (const auto& m : doc["paymentMethods"]) inv.paymentMethods.insert(m.get<std::string>());
  }
  if (doc.contains("energyMix")) {
    for (const auto& e : doc["energyMix"]) {
      inv.energyMix.emplace_back(require(e, "source", path + ".energyMix").get<std::string>(),
                                 require(e, "ratio", path + ".energyMix").get<double>());
    }
  }
  if (doc.contains("operatorMeta")) {
    for (auto it = doc["operatorMeta"].begin(); it != doc["operatorMeta"].end(); ++it) {
      inv.operatorMeta[it.key()] = it.value().is_string() ? it.value().get<std::string>()
                                                          : it.value().dump();
    }
  }
  inv.hasBackupPower = doc.value("hasBackupPower", false);

  for (const auto& stj : require(doc, "stations", path)) {
    Station st;
    st.stationId = require(stj, "stationId", path + ".stations").get<std::string>();
    for (const auto& rpj : require(stj, "refillPoints", path + "." + st.stationId)) {
      RefillPoint rp;
      rp.refillPointId =
          require(rpj, "refillPointId", path + "." + st.stationId).get<std::string>();
      rp.stationId = st.stationId;
      if (rpj.contains("feederId")) rp.feederId = rpj["feederId"].get<std::string>();
      for (const auto& cj : require(rpj, "connectors", path + "." + rp.refillPointId)) {
        Connector c;
        const std::string where = path + "." + rp.refillPointId;
        c.connectorId = require(cj, "connectorId", where).get<std::string>();
        c.connectorType = require(cj, "connectorType", where).get<std::string>();
        c.maxPowerKw = require(cj, "maxPowerKw", where).get<double>();
        c.refillPointId = rp.refillPointId;
        rp.connectors.push_back(std::move(c));
      }
      st.refillPoints.push_back(std::move(rp));
    }
    inv.stations.push_back(std::move(st));
  }
  inv.validate();
  return inv;
}

DynamicFeed parseDynamicFeed(const std::string& path, const AnalysisWindow& window,
                             WarningSink* warnings) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot open file: " + path);
  const Timestamp lookback = window.t0 - Thresholds{}.seedLookbackSeconds;

  DynamicFeed feed;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedDocument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    const std::string where = path + ":" + std::to_string(lineno);
    const std::string kind = require(rec, "kind", where).get<std::string>();
    if (kind == "header" || kind == "schema") {
      continue;
    } else if (kind == "status") {
      StatusEvent ev;
      ev.componentId = require(rec, "componentId", where).get<std::string>();
      ev.timestamp = parseTs(require(rec, "timestamp", where), where);
      bool recognized = true;
      ev.status = parseStatus(require(rec, "status", where).get<std::string>(), &recognized);
      if (!recognized) {
        warn(warnings, where + ": unrecognized status '" +
                           rec["status"].get<std::string>() + "' mapped to unknown");
      }
      if (ev.timestamp >= lookback && ev.timestamp < window.t1) {
        feed.events.push_back(std::move(ev));
      }
    } else if (kind == "rate") {
      const std::string scope = rec.value("scope", std::string("site"));
      RateObservation obs;
      obs.timestamp = parseTs(require(rec, "timestamp", where), where);
      obs.rate = require(rec, "rate", where).get<double>();
      if (obs.rate < 0) throw SchemaViolation(where + ": negative rate");
      auto& series = feed.rates[scope];
      if (rec.contains("currency")) series.currency = rec["currency"].get<std::string>();
      series.observations.push_back(obs);
    } else if (kind == "gridOutage" || kind == "commsOutage" || kind == "maintenance") {
      Interval iv;
      iv.start = parseTs(require(rec, "start", where), where);
      iv.end = parseTs(require(rec, "end", where), where);
      if (iv.start > iv.end) throw SchemaViolation(where + ": interval start after end");
      if (kind == "gridOutage") feed.stressors.gridOutages.push_back(iv);
      else if (kind == "commsOutage") feed.stressors.commsOutages.push_back(iv);
      else feed.stressors.plannedMaintenance.push_back(iv);
    } else if (kind == "interruption") {
      Interruption intr;
      intr.start = parseTs(require(rec, "start", where), where);
      if (rec.contains("minRestore")) intr.minRestore = parseTs(rec["minRestore"], where);
      if (rec.contains("fullRestore")) intr.fullRestore = parseTs(rec["fullRestore"], where);
      if (rec.contains("repairStart")) intr.repairStart = parseTs(rec["repairStart"], where);
      feed.stressors.interruptions.push_back(intr);
    } else if (kind == "powerSample") {
      feed.stressors.powerSamples.emplace_back(
          parseTs(require(rec, "timestamp", where), where),
          require(rec, "availablePowerKw", where).get<double>());
    } else if (kind == "offlineSession") {
      feed.stressors.offlineSessions.emplace_back(
          require(rec, "sessionId", where).get<std::string>(),
          require(rec, "settled", where).get<bool>());
    } else {
      warn(warnings, where + ": ignoring unknown record kind '" + kind + "'");
    }
  }

  // Per-component clock-skew check on original file order, then stable sort.
  std::map<std::string, Timestamp> lastSeen;
  for (const auto& ev : feed.events) {
    auto it = lastSeen.find(ev.componentId);
    if (it != lastSeen.end() && ev.timestamp < it->second) {
      warn(warnings, "ClockSkew: out-of-order events for component '" + ev.componentId +
                         "' near " + formatIso8601(ev.timestamp) + "; stable-sorted");
    }
    lastSeen[ev.componentId] = std::max(it == lastSeen.end() ? ev.timestamp : it->second,
                                        ev.timestamp);
  }
  std::stable_sort(feed.events.begin(), feed.events.end(),
                   [](const StatusEvent& a, const StatusEvent& b) {
                     if (a.componentId != b.componentId) return a.componentId < b.componentId;
                     return a.timestamp < b.timestamp;
                   });

  for (auto& [scope, series] : feed.rates) {
    std::stable_sort(series.observations.begin(), series.observations.end(),
                     [](const RateObservation& a, const RateObservation& b) {
                       return a.timestamp < b.timestamp;
                     });
    std::vector<RateObservation> dedup;
    for (const auto& obs : series.observations) {
      if (!dedup.empty() && dedup.back().timestamp == obs.timestamp) {
        warn(warnings, "duplicate rate timestamp in scope '" + scope + "' at " +
                           formatIso8601(obs.timestamp) + "; keeping last");
        dedup.back() = obs;
      } else {
        dedup.push_back(obs);
      }
    }
    series.observations = std::move(dedup);
  }

  auto sortIntervals = [](std::vector<Interval>& v) {
    std::sort(v.begin(), v.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
  };
  sortIntervals(feed.stressors.gridOutages);
  sortIntervals(feed.stressors.commsOutages);
  sortIntervals(feed.stressors.plannedMaintenance);
  std::sort(feed.stressors.interruptions.begin(), feed.stressors.interruptions.end(),
            [](const Interruption& a, const Interruption& b) { return a.start < b.start; });
  std::sort(feed.stressors.powerSamples.begin(), feed.stressors.powerSamples.end());
  return feed;
}

std::vector<QueueRecord> parseQueueFeed(const std::string& path, WarningSink* warnings) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot open file: " + path);
  std::vector<QueueRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedDocument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    const std::string where = path + ":" + std::to_string(lineno);
    if (rec.value("kind", std::string("queue")) != "queue") continue;
    QueueRecord q;
    q.vehicleId = require(rec, "vehicleId", where).get<std::string>();
    q.tPlug = parseTs(require(rec, "tPlug", where), where);
    if (rec.contains("tJoin")) {
      q.tJoin = parseTs(rec["tJoin"], where);
      if (*q.tJoin > q.tPlug) throw SchemaViolation(where + ": tJoin after tPlug");
    }
    out.push_back(std::move(q));
  }
  (void)warnings;
  return out;
}

CyberTelemetry parseCyberFeed(const std::string& path, WarningSink* warnings) {
  const json doc = loadJsonFile(path);
  if (!doc.is_object()) throw SchemaViolation(path + ": root must be an object");
  if (!doc.contains("schemaVersion")) warn(warnings, path + ": missing schemaVersion");

  CyberTelemetry tel;
  tel.heartbeatsExpected = doc.value("heartbeatsExpected", 0);
  tel.heartbeatsMissed = doc.value("heartbeatsMissed", 0);
  tel.pingsExpected = doc.value("pingsExpected", 0);
  tel.pingsMissed = doc.value("pingsMissed", 0);
  tel.transactions = doc.value("transactions", 0);
  tel.timeouts = doc.value("timeouts", 0);
  tel.tlsAttempts = doc.value("tlsAttempts", 0);
  tel.tlsSuccesses = doc.value("tlsSuccesses", 0);
  if (doc.contains("certIssuedAt")) tel.certIssuedAt = parseTs(doc["certIssuedAt"], path);
  if (doc.contains("certAcceptedAt")) {
    for (auto it = doc["certAcceptedAt"].begin(); it != doc["certAcceptedAt"].end(); ++it) {
      tel.certAcceptedAt[it.key()] = parseTs(it.value(), path + ".certAcceptedAt");
    }
  }
  tel.certPendingDevices = doc.value("certPendingDevices", 0);
  if (doc.contains("messageLatencies")) {
    for (const auto& m : doc["messageLatencies"]) {
      tel.messageLatencies.push_back(
          {require(m, "class", path).get<std::string>(),
           require(m, "latencySeconds", path).get<double>(),
           require(m, "slaSeconds", path).get<double>()});
    }
  }
  if (doc.contains("clockErrors")) {
    for (auto it = doc["clockErrors"].begin(); it != doc["clockErrors"].end(); ++it) {
      tel.clockErrorsSeconds[it.key()] = it.value().get<double>();
    }
  }
  if (doc.contains("patchDelaysDays")) {
    for (auto it = doc["patchDelaysDays"].begin(); it != doc["patchDelaysDays"].end(); ++it) {
      tel.patchDelaysDays[it.key()] = it.value().get<std::vector<double>>();
    }
  }
  if (doc.contains("securityIncidents")) {
    for (const auto& s : doc["securityIncidents"]) {
      tel.securityIncidents.push_back({require(s, "detectHours", path).get<double>(),
                                       require(s, "recoverHours", path).get<double>()});
    }
  }
  tel.vulnsDueCount = doc.value("vulnsDueCount", 0);
  tel.vulnsClosedInSlaCount = doc.value("vulnsClosedInSlaCount", 0);
  tel.mfaPrivilegedTotal = doc.value("mfaPrivilegedTotal", 0);
  tel.mfaPrivilegedCovered = doc.value("mfaPrivilegedCovered", 0);
  if (doc.contains("certValidShare")) tel.certValidShare = doc["certValidShare"].get<double>();
  if (doc.contains("networkSeparation")) {
    const auto& ns = doc["networkSeparation"];
    tel.networkSeparation = require(ns, "inPlace", path + ".networkSeparation").get<bool>();
    tel.networkSeparationNotes = ns.value("notes", std::string());
  }
  tel.latenessThresholdSeconds = doc.value("latenessThresholdSeconds", 120);
  tel.validate();
  return tel;
}

std::vector<DemandPoint> parseDemandFeed(const std::string& path, WarningSink* warnings) {
  const json doc = loadJsonFile(path);
  if (!doc.contains("schemaVersion")) warn(warnings, path + ": missing schemaVersion");
  std::vector<DemandPoint> out;
  for (const auto& p : require(doc, "points", path)) {
    DemandPoint dp;
    dp.locationId = require(p, "locationId", path).get<std::string>();
    dp.lat = require(p, "lat", path).get<double>();
    dp.lon = require(p, "lon", path).get<double>();
    dp.weight = p.value("weight", 1.0);
    if (dp.weight <= 0) throw SchemaViolation(path + ": demand weight must be > 0");
    out.push_back(std::move(dp));
  }
  return out;
}

StatusTimeline buildTimeline(const std::vector<StatusEvent>& events,
                             const std::string& componentId,
                             const AnalysisWindow& window,
                             std::optional<Status> seedStatus) {
  StatusTimeline tl;
  tl.componentId = componentId;
  tl.t0 = window.t0;
  tl.t1 = window.t1;

  Status state = Status::Unknown;
  bool seeded = false;
  if (seedStatus) {
    state = *seedStatus;
    seeded = true;
  }
  std::vector<const StatusEvent*> inWindow;
  for (const auto& ev : events) {
    if (ev.componentId != componentId) continue;
    if (ev.timestamp < window.t0) {
      if (!seeded) state = ev.status;  // last pre-window event wins when unseeded
    } else if (ev.timestamp < window.t1) {
      inWindow.push_back(&ev);
    }
  }

  Timestamp cursor = window.t0;
  auto close = [&tl](Timestamp start, Timestamp end, Status s) {
    if (start >= end) return;
    if (!tl.segments.empty() && tl.segments.back().status == s) {
      tl.segments.back().end = end;
    } else {
      tl.segments.push_back({start, end, s});
    }
  };
  for (const StatusEvent* ev : inWindow) {
    if (ev->timestamp == cursor) {
      state = ev->status;  // same-timestamp: last in order wins
      continue;
    }
    close(cursor, ev->timestamp, state);
    cursor = ev->timestamp;
    state = ev->status;
  }
  close(cursor, window.t1, state);
  return tl;
}

std::vector<Interval> faultIntervals(const StatusTimeline& timeline,
                                     bool treatOutOfServiceAsFault,
                                     const std::vector<Interval>& excludeMaintenance) {
  std::vector<Interval> faults;
  for (const auto& seg : timeline.segments) {
    const bool isFault = seg.status == Status::Fault ||
                         (treatOutOfServiceAsFault && seg.status == Status::OutOfService);
    if (!isFault) continue;
    if (!faults.empty() && faults.back().end == seg.start) {
      faults.back().end = seg.end;
    } else {
      faults.push_back({seg.start, seg.end, false});
    }
  }
  for (auto& iv : faults) iv.censored = (iv.end == timeline.t1);

  AnalysisWindow window{timeline.t0, timeline.t1, 1};
  auto result = subtractIntervals(faults, clipIntervals(excludeMaintenance, window));
  for (auto& iv : result) iv.censored = iv.censored && iv.end == timeline.t1;
  return result;
}

StatusTimeline combineTimelines(const std::vector<StatusTimeline>& children,
                                const std::string& parentId) {
  if (children.empty()) throw BadSpec("combineTimelines requires at least one child");
  StatusTimeline out;
  out.componentId = parentId;
  out.t0 = children.front().t0;
  out.t1 = children.front().t1;

  std::vector<Timestamp> cuts;
  for (const auto& child : children) {
    if (child.t0 != out.t0 || child.t1 != out.t1) {
      throw BadSpec("combineTimelines: children cover different windows");
    }
    for (const auto& seg : child.segments) cuts.push_back(seg.start);
  }
  cuts.push_back(out.t1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Timestamp start = cuts[i];
    const Timestamp end = cuts[i + 1];
    int best = -1;
    for (const auto& child : children) {
      best = std::max(best, statusPriority(child.statusAt(start)));
    }
    Status status = Status::Unknown;
    for (Status s : {Status::Available, Status::Occupied, Status::Unknown,
                     Status::OutOfService, Status::Fault}) {
      if (statusPriority(s) == best) status = s;
    }
    if (!out.segments.empty() && out.segments.back().status == status) {
      out.segments.back().end = end;
    } else {
      out.segments.push_back({start, end, status});
    }
  }
  return out;
}

}  // namespace mcskpi
