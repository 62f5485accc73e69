#pragma once

#include <vector>

#include "mcskpi/model.hpp"

namespace mcskpi {

// Interval set algebra on closed-open [start, end) intervals.
// All functions return sorted, non-overlapping results.

std::vector<Interval> mergeIntervals(std::vector<Interval> intervals);

// Clips every interval to [window.t0, window.t1); drops empty pieces.
std::vector<Interval> clipIntervals(const std::vector<Interval>& intervals,
                                    const AnalysisWindow& window);

// a \ b. Pieces inherit the censored flag of their source interval.
std::vector<Interval> subtractIntervals(const std::vector<Interval>& a,
                                        const std::vector<Interval>& b);

Duration totalDuration(const std::vector<Interval>& intervals);

// measure(a ∩ b) for already-merged input sets.
Duration intersectionMeasure(const std::vector<Interval>& a,
                             const std::vector<Interval>& b);

}  // namespace mcskpi
