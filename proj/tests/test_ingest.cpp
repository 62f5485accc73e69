#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "mcskpi/ingest.hpp"

using namespace mcskpi;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("ingest_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kMinimalInventory = R"({
  "schemaVersion": "1.0",
  "siteId": "site-1",
  "coordinates": {"lat": 52.0, "lon": 5.0},
  "paymentMethods": ["adhoc-card", "app"],
  "energyMix": [{"source": "solar", "ratio": 0.6},
                {"source": "wind", "ratio": 0.3},
                {"source": "gas", "ratio": 0.1}],
  "hasBackupPower": false,
  "stations": [{
    "stationId": "st-1",
    "refillPoints": [{
      "refillPointId": "rp-1",
      "connectors": [{"connectorId": "c-1", "connectorType": "MCS", "maxPowerKw": 1000}]
    }]
  }]
})";

}  // namespace

TEST_CASE("static feed: minimal tree parses to one connector") {
  TempFile f("min.json", kMinimalInventory);
  auto inv = parseStaticFeed(f.path);
  CHECK(inv.allConnectors().size() == 1);
  CHECK(inv.siteId == "site-1");
  CHECK(inv.paymentMethods.size() == 2);
}

TEST_CASE("static feed: energy mix ratios re-sum to 1.0") {
  TempFile f("mix.json", kMinimalInventory);
  auto inv = parseStaticFeed(f.path);
  double sum = 0.0;
  for (const auto& [src, ratio] : inv.energyMix) sum += ratio;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("static feed: duplicate connectorId rejected") {
  std::string dup = kMinimalInventory;
  const std::string one = R"({"connectorId": "c-1", "connectorType": "MCS", "maxPowerKw": 1000})";
  dup.replace(dup.find(one), one.size(), one + "," + one);
  TempFile f("dup.json", dup);
  CHECK_THROWS_AS(parseStaticFeed(f.path), SchemaViolation);
}

TEST_CASE("static feed: unknown top-level field warned, not fatal") {
  std::string extra = kMinimalInventory;
  extra.insert(extra.find("\"siteId\""), "\"futureField\": 1,\n  ");
  TempFile f("extra.json", extra);
  WarningSink warnings;
  CHECK_NOTHROW(parseStaticFeed(f.path, &warnings));
  bool mentioned = false;
  for (const auto& w : warnings) {
    if (w.find("futureField") != std::string::npos) mentioned = true;
  }
  CHECK(mentioned);
}

TEST_CASE("dynamic feed: empty file produces empty outputs") {
  TempFile f("empty.jsonl", "");
  auto feed = parseDynamicFeed(f.path, {0, 86400, 1});
  CHECK(feed.events.empty());
  CHECK(feed.rates.empty());
}

TEST_CASE("dynamic feed: two events stay ordered") {
  TempFile f("two.jsonl",
             R"({"kind":"status","componentId":"c-1","timestamp":0,"status":"available"}
{"kind":"status","componentId":"c-1","timestamp":3600,"status":"fault"}
)");
  auto feed = parseDynamicFeed(f.path, {0, 86400, 1});
  REQUIRE(feed.events.size() == 2);
  CHECK(feed.events[0].status == Status::Available);
  CHECK(feed.events[1].status == Status::Fault);
}

TEST_CASE("dynamic feed: out-of-order pair warns ClockSkew and matches reference sort") {
  TempFile f("skew.jsonl",
             R"({"kind":"status","componentId":"c-1","timestamp":3600,"status":"fault"}
{"kind":"status","componentId":"c-1","timestamp":0,"status":"available"}
)");
  WarningSink warnings;
  auto feed = parseDynamicFeed(f.path, {0, 86400, 1}, &warnings);
  bool skew = false;
  for (const auto& w : warnings) {
    if (w.find("ClockSkew") != std::string::npos) skew = true;
  }
  CHECK(skew);
  REQUIRE(feed.events.size() == 2);
  CHECK(feed.events[0].timestamp == 0);
  CHECK(feed.events[1].timestamp == 3600);
}

TEST_CASE("dynamic feed: ISO timestamps and record routing") {
  TempFile f("kinds.jsonl",
             R"({"kind":"header","schemaVersion":"1.0"}
{"kind":"status","componentId":"c-1","timestamp":"1970-01-01T01:00:00Z","status":"occupied"}
{"kind":"rate","scope":"site","timestamp":0,"rate":0.4}
{"kind":"gridOutage","start":100,"end":200}
{"kind":"commsOutage","start":300,"end":400}
{"kind":"maintenance","start":500,"end":600}
{"kind":"powerSample","timestamp":150,"availablePowerKw":250}
{"kind":"offlineSession","sessionId":"s1","settled":true}
{"kind":"interruption","start":700,"minRestore":800,"fullRestore":900}
)");
  auto feed = parseDynamicFeed(f.path, {0, 86400, 1});
  REQUIRE(feed.events.size() == 1);
  CHECK(feed.events[0].timestamp == 3600);
  CHECK(feed.rates.at("site").observations.size() == 1);
  CHECK(feed.stressors.gridOutages.size() == 1);
  CHECK(feed.stressors.commsOutages.size() == 1);
  CHECK(feed.stressors.plannedMaintenance.size() == 1);
  CHECK(feed.stressors.powerSamples.size() == 1);
  CHECK(feed.stressors.offlineSessions.size() == 1);
  CHECK(feed.stressors.interruptions.size() == 1);
}

TEST_CASE("queue feed: tJoin after tPlug rejected") {
  TempFile f("q.jsonl", R"({"kind":"queue","vehicleId":"v1","tJoin":100,"tPlug":50}
)");
  CHECK_THROWS_AS(parseQueueFeed(f.path), SchemaViolation);
}

TEST_CASE("timeline: no events with seed available gives one segment") {
  auto tl = buildTimeline({}, "c-1", {0, 86400, 1}, Status::Available);
  REQUIRE(tl.segments.size() == 1);
  CHECK(tl.segments[0].status == Status::Available);
  CHECK(tl.timeIn(Status::Available) == 86400);
  tl.validate();
}

TEST_CASE("timeline: fault at midpoint splits the window in half") {
  std::vector<StatusEvent> events = {{"c-1", 43200, Status::Fault}};
  auto tl = buildTimeline(events, "c-1", {0, 86400, 1}, Status::Available);
  REQUIRE(tl.segments.size() == 2);
  CHECK(tl.segments[0].end == 43200);
  CHECK(tl.timeIn(Status::Available) == 43200);
  CHECK(tl.timeIn(Status::Fault) == 43200);
}

TEST_CASE("timeline: random events match brute-force last-event lookup") {
  std::mt19937_64 rng(7);
  const AnalysisWindow w{0, 100000, 1};
  const Status all[] = {Status::Available, Status::Occupied, Status::OutOfService,
                        Status::Fault, Status::Unknown};
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<StatusEvent> events;
    for (int i = 0; i < 5; ++i) {
      events.push_back({"c-1", static_cast<Timestamp>(rng() % 100000), all[rng() % 5]});
    }
    std::sort(events.begin(), events.end(),
              [](const StatusEvent& a, const StatusEvent& b) { return a.timestamp < b.timestamp; });
    auto tl = buildTimeline(events, "c-1", w, Status::Available);
    tl.validate();
    for (int q = 0; q < 200; ++q) {
      const Timestamp t = static_cast<Timestamp>(rng() % 100000);
      Status expected = Status::Available;
      for (const auto& ev : events) {
        if (ev.timestamp <= t) expected = ev.status;
      }
      CHECK(tl.statusAt(t) == expected);
    }
  }
}

TEST_CASE("fault intervals: maintenance subtraction") {
  std::vector<StatusEvent> events = {{"c-1", 2 * 3600, Status::Fault},
                                     {"c-1", 4 * 3600, Status::Available}};
  auto tl = buildTimeline(events, "c-1", {0, 86400, 1}, Status::Available);
  auto faults = faultIntervals(tl, true, {{3 * 3600, 4 * 3600, false}});
  REQUIRE(faults.size() == 1);
  CHECK(faults[0].start == 2 * 3600);
  CHECK(faults[0].end == 3 * 3600);
  CHECK_FALSE(faults[0].censored);
}

TEST_CASE("fault intervals: still-open fault is censored at t1") {
  std::vector<StatusEvent> events = {{"c-1", 80000, Status::Fault}};
  auto tl = buildTimeline(events, "c-1", {0, 86400, 1}, Status::Available);
  auto faults = faultIntervals(tl, true);
  REQUIRE(faults.size() == 1);
  CHECK(faults[0].end == 86400);
  CHECK(faults[0].censored);
}

TEST_CASE("combine: parent is fault only when every child is") {
  std::vector<StatusEvent> events = {{"a", 100, Status::Fault}, {"b", 200, Status::Fault},
                                     {"b", 300, Status::Available}};
  auto ta = buildTimeline(events, "a", {0, 1000, 1}, Status::Available);
  auto tb = buildTimeline(events, "b", {0, 1000, 1}, Status::Available);
  auto parent = combineTimelines({ta, tb}, "p");
  parent.validate();
  CHECK(parent.statusAt(50) == Status::Available);
  CHECK(parent.statusAt(150) == Status::Available);
  CHECK(parent.statusAt(250) == Status::Fault);
  CHECK(parent.statusAt(500) == Status::Available);
}
