#include "mcskpi/intervals.hpp"

#include <algorithm>

namespace mcskpi {

std::vector<Interval> mergeIntervals(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return iv.start >= iv.end; });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::vector<Interval> out;
  for (const auto& iv : intervals) {
    if (!out.empty() && iv.start <= out.back().end) {
      out.back().end = std::max(out.back().end, iv.end);
      out.back().censored = out.back().censored || iv.censored;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<Interval> clipIntervals(const std::vector<Interval>& intervals,
                                    const AnalysisWindow& window) {
  std::vector<Interval> out;
  for (const auto& iv : intervals) {
    const Timestamp s = std::max(iv.start, window.t0);
    const Timestamp e = std::min(iv.end, window.t1);
    if (s < e) out.push_back({s, e, iv.censored});
  }
  return mergeIntervals(out);
}

std::vector<Interval> subtractIntervals(const std::vector<Interval>& a,
                                        const std::vector<Interval>& b) {
  const auto minuend = mergeIntervals(a);
  const auto subtrahend = mergeIntervals(b);
  std::vector<Interval> out;
  for (const auto& iv : minuend) {
    Timestamp cursor = iv.start;
    for (const auto& cut : subtrahend) {
      if (cut.end <= cursor) continue;
      if (cut.start >= iv.end) break;
      if (cut.start > cursor) out.push_back({cursor, cut.start, iv.censored});
      cursor = std::max(cursor, cut.end);
      if (cursor >= iv.end) break;
    }
    if (cursor < iv.end) out.push_back({cursor, iv.end, iv.censored});
  }
  return out;
}

Duration totalDuration(const std::vector<Interval>& intervals) {
  Duration total = 0;
  for (const auto& iv : intervals) total += iv.end - iv.start;
  return total;
}

Duration intersectionMeasure(const std::vector<Interval>& a,
                             const std::vector<Interval>& b) {
  Duration total = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Timestamp s = std::max(a[i].start, b[j].start);
    const Timestamp e = std::min(a[i].end, b[j].end);
    if (s < e) total += e - s;
    if (a[i].end < b[j].end) ++i; else ++j;
  }
  return total;
}

}  // namespace mcskpi
