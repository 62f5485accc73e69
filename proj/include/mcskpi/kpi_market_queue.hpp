#pragma once

#include <optional>
#include <vector>

#include "mcskpi/model.hpp"

namespace mcskpi {

// Price-dynamics KPIs K12-K13 and queueing/utilization KPI K14.

// K12 at one instant: coefficient of variation (unbiased sample std) of the
// observations in [t, t+W). Undefined when fewer than nmin samples or mean 0.
std::optional<double> priceInstability(const RateSeries& rates, Timestamp t, Duration window,
                                       int nmin);

struct PivPoint {
  Timestamp t = 0;
  std::optional<double> piv;
};

struct PivSeries {
  std::vector<PivPoint> points;
  std::optional<double> medianDefined;  // summary used for normalization
};

PivSeries priceInstabilitySeries(const RateSeries& rates, const AnalysisWindow& window,
                                 Duration w, Duration step, int nmin);

struct PsiResult {
  std::optional<double> psi;
  bool surge = false;
  std::vector<std::string> notes;
};

// K13: standardized score of the rate at t against a trailing baseline
// [t - baseline, t). Surge iff psi > tau (strict).
PsiResult priceSurgeIntensity(const RateSeries& rates, Timestamp t, Duration baseline,
                              double tau, int nmin);

struct WaitingStats {
  std::optional<double> medianSeconds;
  std::optional<double> p95Seconds;
  double joinCoverage = 0.0;  // fraction of records with a join signal
};

// K14 waits: tPlug - tJoin over records carrying a join signal.
WaitingStats waitingStats(const std::vector<QueueRecord>& records);

struct Utilization {
  double rho = 0.0;
  bool saturated = false;  // rho >= 1: queues will tend to grow at peak
};

Utilization utilization(double lambdaPerHour, double muPerHour, int servers);

struct MmsWait {
  std::optional<double> wqHours;  // undefined when rho >= 1
  double rho = 0.0;
  bool unstable = false;
  // Always labeled MODEL-PROXY: FIFO, infinite population, unlimited queue.
  std::string assumptions =
      "MODEL-PROXY Erlang-C: FIFO service, infinite calling population, unlimited waiting area";
};

// Erlang-C expected waiting time.
MmsWait mmsWaitProxy(double lambdaPerHour, double muPerHour, int servers);

}  // namespace mcskpi
