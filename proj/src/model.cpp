#include "mcskpi/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace mcskpi {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
std::int64_t daysFromCivil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civilFromDays(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

Timestamp parseIso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d%n", &y, &mo, &d, &h, &mi,
                  &consumed) != 5) {
    throw MalformedDocument("invalid ISO-8601 timestamp: " + text);
  }
  std::size_t pos = static_cast<std::size_t>(consumed);
  if (pos < text.size() && text[pos] == ':') {
    int n2 = 0;
    if (std::sscanf(text.c_str() + pos, ":%2d%n", &s, &n2) != 1) {
      throw MalformedDocument("invalid ISO-8601 timestamp: " + text);
    }
    pos += static_cast<std::size_t>(n2);
  }
  // Truncate fractional seconds.
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  std::int64_t offset = 0;
  if (pos < text.size()) {
    const char c = text[pos];
    if (c == 'Z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      int oh = 0, om = 0, n2 = 0;
      const char* rest = text.c_str() + pos + 1;
      if (std::sscanf(rest, "%2d:%2d%n", &oh, &om, &n2) == 2 ||
          std::sscanf(rest, "%2d%2d%n", &oh, &om, &n2) == 2) {
        pos += 1 + static_cast<std::size_t>(n2);
      } else if (std::sscanf(rest, "%2d%n", &oh, &n2) == 1) {
        pos += 1 + static_cast<std::size_t>(n2);
      } else {
        throw MalformedDocument("invalid ISO-8601 offset: " + text);
      }
      offset = (c == '+' ? 1 : -1) * (oh * 3600LL + om * 60LL);
    }
  }
  if (pos != text.size()) {
    throw MalformedDocument("trailing characters in timestamp: " + text);
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
    throw MalformedDocument("out-of-range timestamp field: " + text);
  }
  return daysFromCivil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s - offset;
}

std::string formatIso8601(Timestamp t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  int y, m, d;
  civilFromDays(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                static_cast<int>(sod % 60));
  return buf;
}

void AnalysisWindow::validate() const {
  if (t0 >= t1) throw BadSpec("analysis window requires t0 < t1");
  if (resolution <= 0 || resolution > t1 - t0) {
    throw BadSpec("analysis window resolution out of range");
  }
}

Status parseStatus(const std::string& label, bool* recognized) {
  if (recognized) *recognized = true;
  if (label == "available") return Status::Available;
  if (label == "occupied") return Status::Occupied;
  if (label == "outOfService") return Status::OutOfService;
  if (label == "fault") return Status::Fault;
  if (label == "unknown") return Status::Unknown;
  if (recognized) *recognized = false;
  return Status::Unknown;
}

std::string statusLabel(Status s) {
  switch (s) {
    case Status::Available: return "available";
    case Status::Occupied: return "occupied";
    case Status::OutOfService: return "outOfService";
    case Status::Fault: return "fault";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<const Connector*> SiteInventory::allConnectors() const {
  std::vector<const Connector*> out;
  for (const auto& st : stations)
    for (const auto& rp : st.refillPoints)
      for (const auto& c : rp.connectors) out.push_back(&c);
  return out;
}

std::vector<const RefillPoint*> SiteInventory::allRefillPoints() const {
  std::vector<const RefillPoint*> out;
  for (const auto& st : stations)
    for (const auto& rp : st.refillPoints) out.push_back(&rp);
  return out;
}

void SiteInventory::validate() const {
  std::set<std::string> ids;
  auto insert = [&ids](const std::string& id, const char* what) {
    if (id.empty()) throw SchemaViolation(std::string(what) + ": empty identifier");
    if (!ids.insert(id).second) {
      throw SchemaViolation(std::string("duplicate identifier '") + id + "' (" + what + ")");
    }
  };
  insert(siteId, "siteId");
  for (const auto& st : stations) {
    insert(st.stationId, "stationId");
    for (const auto& rp : st.refillPoints) {
      insert(rp.refillPointId, "refillPointId");
      if (rp.stationId != st.stationId) {
        throw SchemaViolation("refill point '" + rp.refillPointId +
                              "' does not reference its parent station");
      }
      for (const auto& c : rp.connectors) {
        insert(c.connectorId, "connectorId");
        if (c.refillPointId != rp.refillPointId) {
          throw SchemaViolation("connector '" + c.connectorId +
                                "' does not reference its parent refill point");
        }
        if (c.maxPowerKw < 0) {
          throw SchemaViolation("connector '" + c.connectorId + "': maxPowerKw < 0");
        }
        if (c.connectorType.empty()) {
          throw SchemaViolation("connector '" + c.connectorId + "': empty connectorType");
        }
      }
    }
  }
  double sum = 0.0;
  for (const auto& [label, ratio] : energyMix) {
    if (ratio < 0.0 || ratio > 1.0) {
      throw SchemaViolation("energyMix ratio for '" + label + "' outside [0,1]");
    }
    sum += ratio;
  }
  if (sum > 1.0 + 1e-9) throw SchemaViolation("energyMix ratios sum above 1");
}

Status StatusTimeline::statusAt(Timestamp t) const {
  for (const auto& seg : segments) {
    if (t >= seg.start && t < seg.end) return seg.status;
  }
  return Status::Unknown;
}

Duration StatusTimeline::timeIn(Status s) const {
  Duration total = 0;
  for (const auto& seg : segments) {
    if (seg.status == s) total += seg.end - seg.start;
  }
  return total;
}

void StatusTimeline::validate() const {
  if (segments.empty()) throw BadSpec("timeline has no segments");
  if (segments.front().start != t0 || segments.back().end != t1) {
    throw BadSpec("timeline does not tile the analysis window");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].start >= segments[i].end) throw BadSpec("empty timeline segment");
    if (i > 0 && segments[i].start != segments[i - 1].end) {
      throw BadSpec("timeline segments not contiguous");
    }
  }
}

void CyberTelemetry::validate() const {
  auto check = [](std::int64_t part, std::int64_t whole, const char* what) {
    if (part < 0 || whole < 0 || part > whole) {
      throw SchemaViolation(std::string("cyber telemetry count out of range: ") + what);
    }
  };
  check(heartbeatsMissed, heartbeatsExpected, "heartbeats");
  check(pingsMissed, pingsExpected, "pings");
  check(timeouts, transactions, "timeouts");
  check(tlsSuccesses, tlsAttempts, "tls");
  check(vulnsClosedInSlaCount, vulnsDueCount, "vulnerabilities");
  check(mfaPrivilegedCovered, mfaPrivilegedTotal, "mfa");
}

WeightConfig WeightConfig::defaults() {
  WeightConfig cfg;
  const std::vector<std::string> core = {"K1", "K2",  "K3",  "K4",  "K5",
                                         "K7", "K8",  "K9",  "K10", "K11",
                                         "K12", "K13", "K14"};
  const double cyberWeight = 0.05;
  const double coreShare = (1.0 - 2 * cyberWeight) / static_cast<double>(core.size());
  for (const auto& id : core) cfg.weights[id] = coreShare;
  cfg.weights["cyber_link"] = cyberWeight;
  cfg.weights["cyber_recovery"] = cyberWeight;

  for (const auto& id : core) cfg.normalization[id] = {NormKind::Identity, 0, 1};
  cfg.normalization["cyber_link"] = {NormKind::Identity, 0, 1};
  cfg.normalization["cyber_recovery"] = {NormKind::Identity, 0, 1};
  // Unbounded / "lower is better" KPIs get documented inverted ranges.
  cfg.normalization["K11"] = {NormKind::InvertedMinMax, 0.0, cfg.thresholds.irNormHiSeconds};
  cfg.normalization["K12"] = {NormKind::InvertedMinMax, 0.0, 1.0};
  cfg.normalization["K13"] = {NormKind::InvertedMinMax, 0.0, 1.0};
  cfg.normalization["K14"] = {NormKind::InvertedMinMax, 0.0, cfg.thresholds.waitNormHiMinutes};
  return cfg;
}

void WeightConfig::validate() const {
  double sum = 0.0;
  for (const auto& [id, w] : weights) {
    if (w < 0) throw BadSpec("negative weight for " + id);
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw BadSpec("weights must sum to 1");
  if (wFault < 0) throw BadSpec("wFault must be non-negative");
  for (const auto& [id, spec] : normalization) {
    if (spec.kind != NormKind::Identity && spec.lo >= spec.hi) {
      throw BadSpec("normalization range for " + id + " requires lo < hi");
    }
  }
}

double median(std::vector<double> values) {
  return percentileNearestRank(std::move(values), 0.5);
}

double percentileNearestRank(std::vector<double> values, double p) {
  if (values.empty()) throw BadSpec("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n));
  if (rank == 0) rank = 1;
  return values[rank - 1];
}

}  // namespace mcskpi
