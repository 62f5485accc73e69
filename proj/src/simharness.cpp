#include "mcskpi/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "mcskpi/intervals.hpp"
#include "mcskpi/kpi_structural.hpp"

namespace mcskpi {

using nlohmann::json;

namespace {

// Uniform in (0, 1] from the top 53 bits; keeps draws identical across
// standard-library versions.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

double expDraw(std::mt19937_64& rng, double rate) {
  return -std::log(uniform01(rng)) / rate;
}

std::string pad(int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", n);
  return buf;
}

}  // namespace

ScenarioSpec ScenarioSpec::fromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot open scenario spec: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(path + ": " + e.what());
  }

  ScenarioSpec spec;
  if (!doc.contains("seed")) throw BadSpec(path + ": scenario spec requires a seed");
  spec.seed = doc["seed"].get<std::uint64_t>();
  auto ts = [&](const json& v) {
    if (v.is_string()) return parseIso8601(v.get<std::string>());
    return v.get<Timestamp>();
  };
  const auto& w = doc.at("window");
  spec.window.t0 = ts(w.at("t0"));
  spec.window.t1 = ts(w.at("t1"));
  spec.window.resolution = w.value("resolution", 1);
  spec.window.validate();

  if (doc.contains("site")) {
    const auto& s = doc["site"];
    spec.stations = s.value("stations", spec.stations);
    spec.pointsPerStation = s.value("pointsPerStation", spec.pointsPerStation);
    spec.connectorsPerPoint = s.value("connectorsPerPoint", spec.connectorsPerPoint);
    spec.maxPowerKw = s.value("maxPowerKw", spec.maxPowerKw);
    spec.connectorType = s.value("connectorType", spec.connectorType);
    spec.hasBackupPower = s.value("hasBackupPower", spec.hasBackupPower);
    spec.lat = s.value("lat", spec.lat);
    spec.lon = s.value("lon", spec.lon);
    if (s.contains("paymentMethods")) {
      spec.paymentMethods = s["paymentMethods"].get<std::vector<std::string>>();
    }
    if (s.contains("energyMix")) {
      spec.energyMix.clear();
      for (const auto& e : s["energyMix"]) {
        spec.energyMix.emplace_back(e.at("source").get<std::string>(),
                                    e.at("ratio").get<double>());
      }
    }
  }
  if (spec.stations < 1 || spec.pointsPerStation < 1 || spec.connectorsPerPoint < 1) {
    throw BadSpec(path + ": site shape counts must be >= 1");
  }
  if (doc.contains("faults")) {
    for (const auto& f : doc["faults"]) {
      spec.faults.push_back({f.at("connectorIndex").get<std::size_t>(),
                             f.at("startOffset").get<Duration>(),
                             f.at("duration").get<Duration>()});
    }
  }
  spec.randomFaultCount = doc.value("randomFaultCount", 0);
  spec.randomFaultMeanDuration = doc.value("randomFaultMeanDuration", spec.randomFaultMeanDuration);
  if (doc.contains("gridOutages")) {
    for (const auto& o : doc["gridOutages"]) {
      spec.gridOutages.push_back({ts(o.at("start")), ts(o.at("end")), false});
    }
  }
  if (doc.contains("commsOutages")) {
    for (const auto& o : doc["commsOutages"]) {
      spec.commsOutages.push_back({ts(o.at("start")), ts(o.at("end")), false});
    }
  }
  if (doc.contains("price")) {
    const auto& p = doc["price"];
    spec.baseRate = p.value("base", spec.baseRate);
    spec.rateIntervalSeconds = p.value("intervalSeconds", spec.rateIntervalSeconds);
    if (p.contains("surges")) {
      for (const auto& s : p["surges"]) {
        spec.surges.push_back({s.at("offset").get<Duration>(),
                               s.at("magnitude").get<double>()});
      }
    }
  }
  if (doc.contains("queue")) {
    const auto& q = doc["queue"];
    spec.lambdaPerHour = q.value("lambdaPerHour", 0.0);
    spec.muPerHour = q.value("muPerHour", 1.0);
    spec.servers = q.value("servers", 1);
    spec.arrivals = q.value("arrivals", 0);
  }
  if (doc.contains("cyber")) {
    const auto& c = doc["cyber"];
    CyberTelemetry tel;
    tel.heartbeatsExpected = c.value("heartbeatsExpected", 0);
    tel.heartbeatsMissed = c.value("heartbeatsMissed", 0);
    tel.pingsExpected = c.value("pingsExpected", 0);
    tel.pingsMissed = c.value("pingsMissed", 0);
    tel.transactions = c.value("transactions", 0);
    tel.timeouts = c.value("timeouts", 0);
    tel.tlsAttempts = c.value("tlsAttempts", 0);
    tel.tlsSuccesses = c.value("tlsSuccesses", 0);
    tel.validate();
    spec.cyber = tel;
  }
  return spec;
}

Scenario generateScenario(const ScenarioSpec& spec) {
  spec.window.validate();
  std::mt19937_64 rng(spec.seed);
  Scenario out;
  auto& bundle = out.bundle;
  auto& truth = out.truth;

  // Inventory with deterministic identifiers.
  SiteInventory inv;
  inv.siteId = "site-1";
  inv.lat = spec.lat;
  inv.lon = spec.lon;
  inv.hasBackupPower = spec.hasBackupPower;
  for (const auto& m : spec.paymentMethods) inv.paymentMethods.insert(m);
  inv.energyMix = spec.energyMix;
  int connectorSerial = 0;
  std::vector<std::string> connectorIds;
  for (int s = 0; s < spec.stations; ++s) {
    Station st;
    st.stationId = "st-" + pad(s + 1);
    for (int p = 0; p < spec.pointsPerStation; ++p) {
      RefillPoint rp;
      rp.refillPointId = st.stationId + "-rp-" + pad(p + 1);
      rp.stationId = st.stationId;
      for (int c = 0; c < spec.connectorsPerPoint; ++c) {
        Connector con;
        con.connectorId = "c-" + pad(++connectorSerial);
        con.connectorType = spec.connectorType;
        con.maxPowerKw = spec.maxPowerKw;
        con.refillPointId = rp.refillPointId;
        connectorIds.push_back(con.connectorId);
        rp.connectors.push_back(std::move(con));
      }
      st.refillPoints.push_back(std::move(rp));
    }
    inv.stations.push_back(std::move(st));
  }
  inv.validate();
  bundle.inventory = inv;

  const Duration dt = spec.window.length();
  const auto nConnectors = connectorIds.size();

  // Fault intervals per connector: explicit injections plus random draws.
  std::vector<std::vector<Interval>> faultsByConnector(nConnectors);
  for (const auto& f : spec.faults) {
    if (f.connectorIndex >= nConnectors) throw BadSpec("fault connectorIndex out of range");
    faultsByConnector[f.connectorIndex].push_back(
        {spec.window.t0 + f.startOffset, spec.window.t0 + f.startOffset + f.duration, false});
  }
  for (int i = 0; i < spec.randomFaultCount; ++i) {
    const auto idx = static_cast<std::size_t>(rng() % nConnectors);
    const auto start = spec.window.t0 + static_cast<Duration>(uniform01(rng) * (dt - 1));
    auto dur = static_cast<Duration>(
        std::ceil(expDraw(rng, 1.0 / static_cast<double>(spec.randomFaultMeanDuration))));
    if (dur < 1) dur = 1;
    faultsByConnector[idx].push_back({start, start + dur, false});
  }

  // Emit seed + fault events, and compute exact downtime from the merged,
  // clipped intervals (the construction-determined ground truth).
  double downtimeTotal = 0.0;
  for (std::size_t i = 0; i < nConnectors; ++i) {
    bundle.statusEvents.push_back({connectorIds[i], spec.window.t0, Status::Available});
    auto merged = clipIntervals(mergeIntervals(faultsByConnector[i]), spec.window);
    faultsByConnector[i] = merged;
    for (const auto& iv : merged) {
      bundle.statusEvents.push_back({connectorIds[i], iv.start, Status::Fault});
      if (iv.end < spec.window.t1) {
        bundle.statusEvents.push_back({connectorIds[i], iv.end, Status::Available});
      }
    }
    const auto down = static_cast<double>(totalDuration(merged));
    truth.uptimePerConnector[connectorIds[i]] = 1.0 - down / static_cast<double>(dt);
    downtimeTotal += down;
  }
  std::stable_sort(bundle.statusEvents.begin(), bundle.statusEvents.end(),
                   [](const StatusEvent& a, const StatusEvent& b) {
                     if (a.componentId != b.componentId) return a.componentId < b.componentId;
                     return a.timestamp < b.timestamp;
                   });
  truth.availabilityOverall =
      1.0 - downtimeTotal / (static_cast<double>(nConnectors) * static_cast<double>(dt));

  // Refill-point fault rate: a point is faulted only while all its
  // connectors are, so intersect the per-connector fault sets.
  double pointFaultTime = 0.0;
  std::size_t flat = 0;
  for (int s = 0; s < spec.stations; ++s) {
    for (int p = 0; p < spec.pointsPerStation; ++p) {
      std::vector<Interval> common = faultsByConnector[flat++];
      for (int c = 1; c < spec.connectorsPerPoint; ++c, ++flat) {
        std::vector<Interval> next;
        for (const auto& a : common) {
          for (const auto& b : faultsByConnector[flat]) {
            const Timestamp lo = std::max(a.start, b.start);
            const Timestamp hi = std::min(a.end, b.end);
            if (lo < hi) next.push_back({lo, hi, false});
          }
        }
        common = mergeIntervals(next);
      }
      pointFaultTime += static_cast<double>(totalDuration(common));
    }
  }
  const auto nPoints = static_cast<double>(spec.stations * spec.pointsPerStation);
  truth.faultRate = pointFaultTime / (nPoints * static_cast<double>(dt));

  truth.rsite = std::min(nPoints / 4.0, 1.0);
  truth.hpShare1000 = spec.maxPowerKw >= 1000.0 ? 1.0 : 0.0;
  truth.hpShare750 = spec.maxPowerKw >= 750.0 ? 1.0 : 0.0;
  {
    const WeightConfig defaults = WeightConfig::defaults();
    double gsr = 0.0;
    for (const auto& [label, ratio] : spec.energyMix) {
      if (defaults.renewableLabels.count(label)) gsr += ratio;
    }
    truth.gsr = std::clamp(gsr, 0.0, 1.0);
  }
  truth.uar = spec.paymentMethods.size() >= 2 ? 1.0 : 0.0;

  // Price profile: base rate at a fixed cadence plus injected spikes.
  RateSeries series;
  std::map<Duration, double> surgeAt;
  for (const auto& s : spec.surges) surgeAt[s.offset] += s.magnitude;
  for (Timestamp t = spec.window.t0; t < spec.window.t1; t += spec.rateIntervalSeconds) {
    double rate = spec.baseRate;
    auto it = surgeAt.find(t - spec.window.t0);
    if (it != surgeAt.end()) rate += it->second;
    series.observations.push_back({t, rate});
  }
  bundle.rates["site"] = series;
  truth.constantPrice = spec.surges.empty();

  bundle.stressors.gridOutages = spec.gridOutages;
  bundle.stressors.commsOutages = spec.commsOutages;
  if (spec.hasBackupPower) {
    for (const auto& o : spec.gridOutages) {
      for (Timestamp t = o.start; t < o.end; t += 300) {
        bundle.stressors.powerSamples.emplace_back(t, spec.maxPowerKw);
      }
    }
  }

  // FIFO M/M/s arrivals -> queue records with known join/plug stamps.
  if (spec.arrivals > 0 && spec.lambdaPerHour > 0) {
    std::vector<double> serverFree(static_cast<std::size_t>(spec.servers), 0.0);
    double clock = 0.0;
    for (int n = 0; n < spec.arrivals; ++n) {
      clock += expDraw(rng, spec.lambdaPerHour) * 3600.0;
      auto it = std::min_element(serverFree.begin(), serverFree.end());
      const double start = std::max(clock, *it);
      *it = start + expDraw(rng, spec.muPerHour) * 3600.0;
      QueueRecord rec;
      rec.vehicleId = "veh-" + pad(n + 1);
      rec.tJoin = spec.window.t0 + static_cast<Timestamp>(clock);
      rec.tPlug = spec.window.t0 + static_cast<Timestamp>(start);
      if (*rec.tJoin > rec.tPlug) rec.tPlug = *rec.tJoin;
      bundle.queue.push_back(std::move(rec));
    }
  }

  if (spec.cyber) {
    bundle.cyber = spec.cyber;
    if (spec.cyber->heartbeatsExpected > 0) {
      truth.hfr = static_cast<double>(spec.cyber->heartbeatsMissed) /
                  static_cast<double>(spec.cyber->heartbeatsExpected);
    }
    if (spec.cyber->pingsExpected > 0) {
      truth.pfr = static_cast<double>(spec.cyber->pingsMissed) /
                  static_cast<double>(spec.cyber->pingsExpected);
    }
    if (truth.hfr && truth.pfr) truth.lkfr = 0.5 * *truth.hfr + 0.5 * *truth.pfr;
    if (spec.cyber->transactions > 0) {
      truth.ctr = static_cast<double>(spec.cyber->timeouts) /
                  static_cast<double>(spec.cyber->transactions);
    }
    if (spec.cyber->tlsAttempts > 0) {
      truth.sses = static_cast<double>(spec.cyber->tlsSuccesses) /
                   static_cast<double>(spec.cyber->tlsAttempts);
    }
  }

  // One demand point co-located with the site keeps K5 defined.
  bundle.demand.push_back({"demand-001", spec.lat, spec.lon, 1.0});

  bundle.declaredFeeds = {"static", "status"};
  if (!bundle.queue.empty()) bundle.declaredFeeds.insert("reservations");
  if (bundle.cyber) {
    bundle.declaredFeeds.insert("csms");
    bundle.declaredFeeds.insert("ems");
  }
  truth.expectedSurgeCount = static_cast<int>(spec.surges.size());
  return out;
}

void writeScenarioFiles(const Scenario& scenario, const ScenarioSpec& spec,
                        const std::string& outDir) {
  namespace fs = std::filesystem;
  fs::create_directories(outDir);
  const auto& bundle = scenario.bundle;

  {
    json doc;
    doc["schemaVersion"] = "1.0";
    doc["siteId"] = bundle.inventory.siteId;
    doc["coordinates"] = {{"lat", bundle.inventory.lat}, {"lon", bundle.inventory.lon}};
    doc["paymentMethods"] = bundle.inventory.paymentMethods;
    json mix = json::array();
    for (const auto& [source, ratio] : bundle.inventory.energyMix) {
      mix.push_back({{"source", source}, {"ratio", ratio}});
    }
    doc["energyMix"] = mix;
    doc["hasBackupPower"] = bundle.inventory.hasBackupPower;
    json stations = json::array();
    for (const auto& st : bundle.inventory.stations) {
      json stj;
      stj["stationId"] = st.stationId;
      json rps = json::array();
      for (const auto& rp : st.refillPoints) {
        json rpj;
        rpj["refillPointId"] = rp.refillPointId;
        json cons = json::array();
        for (const auto& c : rp.connectors) {
          cons.push_back({{"connectorId", c.connectorId},
                          {"connectorType", c.connectorType},
                          {"maxPowerKw", c.maxPowerKw}});
        }
        rpj["connectors"] = cons;
        rps.push_back(rpj);
      }
      stj["refillPoints"] = rps;
      stations.push_back(stj);
    }
    doc["stations"] = stations;
    std::ofstream out(fs::path(outDir) / "inventory.json");
    out << doc.dump(2) << "\n";
  }

  {
    std::ofstream out(fs::path(outDir) / "status.jsonl");
    out << json{{"kind", "header"}, {"schemaVersion", "1.0"}}.dump() << "\n";
    for (const auto& ev : bundle.statusEvents) {
      out << json{{"kind", "status"},
                  {"componentId", ev.componentId},
                  {"timestamp", ev.timestamp},
                  {"status", statusLabel(ev.status)}}
                 .dump()
          << "\n";
    }
    for (const auto& [scope, series] : bundle.rates) {
      for (const auto& obs : series.observations) {
        out << json{{"kind", "rate"},
                    {"scope", scope},
                    {"timestamp", obs.timestamp},
                    {"rate", obs.rate},
                    {"currency", series.currency}}
                   .dump()
            << "\n";
      }
    }
    for (const auto& iv : bundle.stressors.gridOutages) {
      out << json{{"kind", "gridOutage"}, {"start", iv.start}, {"end", iv.end}}.dump() << "\n";
    }
    for (const auto& iv : bundle.stressors.commsOutages) {
      out << json{{"kind", "commsOutage"}, {"start", iv.start}, {"end", iv.end}}.dump() << "\n";
    }
    for (const auto& [t, kw] : bundle.stressors.powerSamples) {
      out << json{{"kind", "powerSample"}, {"timestamp", t}, {"availablePowerKw", kw}}.dump()
          << "\n";
    }
  }

  if (!bundle.queue.empty()) {
    std::ofstream out(fs::path(outDir) / "queue.jsonl");
    for (const auto& rec : bundle.queue) {
      json j{{"kind", "queue"}, {"vehicleId", rec.vehicleId}, {"tPlug", rec.tPlug}};
      if (rec.tJoin) j["tJoin"] = *rec.tJoin;
      out << j.dump() << "\n";
    }
  }

  if (bundle.cyber) {
    const auto& tel = *bundle.cyber;
    json doc;
    doc["schemaVersion"] = "1.0";
    doc["heartbeatsExpected"] = tel.heartbeatsExpected;
    doc["heartbeatsMissed"] = tel.heartbeatsMissed;
    doc["pingsExpected"] = tel.pingsExpected;
    doc["pingsMissed"] = tel.pingsMissed;
    doc["transactions"] = tel.transactions;
    doc["timeouts"] = tel.timeouts;
    doc["tlsAttempts"] = tel.tlsAttempts;
    doc["tlsSuccesses"] = tel.tlsSuccesses;
    std::ofstream out(fs::path(outDir) / "cyber.json");
    out << doc.dump(2) << "\n";
  }

  {
    json doc;
    doc["schemaVersion"] = "1.0";
    json points = json::array();
    for (const auto& dp : bundle.demand) {
      points.push_back({{"locationId", dp.locationId},
                        {"lat", dp.lat},
                        {"lon", dp.lon},
                        {"weight", dp.weight}});
    }
    doc["points"] = points;
    std::ofstream out(fs::path(outDir) / "demand.json");
    out << doc.dump(2) << "\n";
  }

  {
    const auto& truth = scenario.truth;
    json doc;
    doc["schemaVersion"] = "1.0";
    doc["seed"] = spec.seed;
    doc["window"] = {{"t0", spec.window.t0}, {"t1", spec.window.t1}};
    doc["uptimePerConnector"] = truth.uptimePerConnector;
    doc["availabilityOverall"] = truth.availabilityOverall;
    doc["faultRate"] = truth.faultRate;
    doc["rsite"] = truth.rsite;
    doc["hpShare1000"] = truth.hpShare1000;
    doc["hpShare750"] = truth.hpShare750;
    doc["gsr"] = truth.gsr;
    doc["uar"] = truth.uar;
    if (truth.hfr) doc["hfr"] = *truth.hfr;
    if (truth.pfr) doc["pfr"] = *truth.pfr;
    if (truth.lkfr) doc["lkfr"] = *truth.lkfr;
    if (truth.ctr) doc["ctr"] = *truth.ctr;
    if (truth.sses) doc["sses"] = *truth.sses;
    doc["constantPrice"] = truth.constantPrice;
    std::ofstream out(fs::path(outDir) / "groundtruth.json");
    out << doc.dump(2) << "\n";
  }
}

MmsEmpirical mmsSimulator(double lambdaPerHour, double muPerHour, int servers,
                          std::int64_t arrivals, std::uint64_t seed) {
  if (lambdaPerHour <= 0 || muPerHour <= 0 || servers < 1) {
    throw BadRates("mmsSimulator requires lambda, mu > 0 and s >= 1");
  }
  MmsEmpirical out;
  out.unstable = lambdaPerHour / (static_cast<double>(servers) * muPerHour) >= 1.0;

  std::mt19937_64 rng(seed);
  std::vector<double> serverFree(static_cast<std::size_t>(servers), 0.0);
  double clock = 0.0;
  double totalService = 0.0;
  double makespan = 0.0;

  const std::int64_t warmup = std::min<std::int64_t>(arrivals / 10, 10000);
  std::vector<double> waits;
  waits.reserve(static_cast<std::size_t>(arrivals - warmup));
  for (std::int64_t n = 0; n < arrivals; ++n) {
    clock += expDraw(rng, lambdaPerHour);
    auto it = std::min_element(serverFree.begin(), serverFree.end());
    const double start = std::max(clock, *it);
    const double service = expDraw(rng, muPerHour);
    *it = start + service;
    totalService += service;
    makespan = std::max(makespan, *it);
    if (n >= warmup) waits.push_back(start - clock);
  }
  out.utilization = totalService / (static_cast<double>(servers) * makespan);

  double sum = 0.0;
  for (double w : waits) sum += w;
  out.meanWaitHours = sum / static_cast<double>(waits.size());

  // Batch means to account for autocorrelation of consecutive waits.
  const std::size_t batches = 100;
  const std::size_t perBatch = waits.size() / batches;
  if (perBatch >= 2) {
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < perBatch; ++i) s += waits[b * perBatch + i];
      means[b] = s / static_cast<double>(perBatch);
    }
    double mbar = 0.0;
    for (double m : means) mbar += m;
    mbar /= static_cast<double>(batches);
    double ss = 0.0;
    for (double m : means) ss += (m - mbar) * (m - mbar);
    out.waitStdError = std::sqrt(ss / static_cast<double>(batches - 1)) /
                       std::sqrt(static_cast<double>(batches));
  }
  return out;
}

}  // namespace mcskpi
