#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcskpi/intervals.hpp"
#include "mcskpi/model.hpp"

namespace mcskpi {

// Feed-kind labels used for IRI tier declarations.
// "static" + "status" = Tier A, +"csms" = B, +"ems" = C, +"reservations" = D.
struct FeedBundle {
  SiteInventory inventory;
  std::vector<StatusEvent> statusEvents;
  std::map<std::string, RateSeries> rates;  // keyed by pricing scope
  StressorLog stressors;
  std::vector<QueueRecord> queue;
  std::optional<CyberTelemetry> cyber;
  std::vector<DemandPoint> demand;
  std::set<std::string> declaredFeeds;
};

using WarningSink = std::vector<std::string>;

SiteInventory parseStaticFeed(const std::string& path, WarningSink* warnings = nullptr);

struct DynamicFeed {
  std::vector<StatusEvent> events;
  std::map<std::string, RateSeries> rates;
  StressorLog stressors;
};

DynamicFeed parseDynamicFeed(const std::string& path, const AnalysisWindow& window,
                             WarningSink* warnings = nullptr);

std::vector<QueueRecord> parseQueueFeed(const std::string& path,
                                        WarningSink* warnings = nullptr);
CyberTelemetry parseCyberFeed(const std::string& path, WarningSink* warnings = nullptr);
std::vector<DemandPoint> parseDemandFeed(const std::string& path,
                                         WarningSink* warnings = nullptr);

// Piecewise-constant timeline over [t0, t1). Events must be sorted by
// timestamp for this component; at equal timestamps the later entry wins.
StatusTimeline buildTimeline(const std::vector<StatusEvent>& events,
                             const std::string& componentId,
                             const AnalysisWindow& window,
                             std::optional<Status> seedStatus = std::nullopt);

// Merged maximal fault intervals minus planned maintenance, clipped to the
// window. An interval still open at t1 is returned censored.
std::vector<Interval> faultIntervals(const StatusTimeline& timeline,
                                     bool treatOutOfServiceAsFault,
                                     const std::vector<Interval>& excludeMaintenance = {});

// Child-to-parent status combination: the highest-priority child status wins
// (available > occupied > unknown > outOfService > fault), so a parent is in
// fault only when every child is.
StatusTimeline combineTimelines(const std::vector<StatusTimeline>& children,
                                const std::string& parentId);

}  // namespace mcskpi
