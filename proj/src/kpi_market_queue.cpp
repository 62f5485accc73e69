#include "mcskpi/kpi_market_queue.hpp"

#include <algorithm>
#include <cmath>

namespace mcskpi {

std::optional<double> priceInstability(const RateSeries& rates, Timestamp t, Duration window,
                                       int nmin) {
  if (window <= 0) throw BadSpec("priceInstability: window must be > 0");
  std::vector<double> sample;
  for (const auto& obs : rates.observations) {
    if (obs.timestamp >= t && obs.timestamp < t + window) sample.push_back(obs.rate);
  }
  const auto n = static_cast<std::int64_t>(sample.size());
  if (n < std::max<std::int64_t>(nmin, 2)) return std::nullopt;
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= static_cast<double>(n);
  if (mean == 0.0) return std::nullopt;
  double ss = 0.0;
  for (double x : sample) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd / mean;
}

PivSeries priceInstabilitySeries(const RateSeries& rates, const AnalysisWindow& window,
                                 Duration w, Duration step, int nmin) {
  if (step <= 0) throw BadSpec("priceInstabilitySeries: step must be > 0");
  PivSeries out;
  std::vector<double> defined;
  for (Timestamp t = window.t0; t < window.t1; t += step) {
    auto piv = priceInstability(rates, t, w, nmin);
    if (piv) defined.push_back(*piv);
    out.points.push_back({t, piv});
  }
  if (!defined.empty()) out.medianDefined = median(defined);
  return out;
}

PsiResult priceSurgeIntensity(const RateSeries& rates, Timestamp t, Duration baseline,
                              double tau, int nmin) {
  PsiResult out;
  if (baseline <= 0) throw BadSpec("priceSurgeIntensity: baseline must be > 0");

  std::optional<double> current;
  for (const auto& obs : rates.observations) {
    if (obs.timestamp <= t) current = obs.rate;  // most recent observation at or before t
  }
  if (!current) {
    out.notes.push_back("NoCurrentRate: no observation at or before t");
    return out;
  }
  std::vector<double> ref;
  for (const auto& obs : rates.observations) {
    if (obs.timestamp >= t - baseline && obs.timestamp < t) ref.push_back(obs.rate);
  }
  if (static_cast<int>(ref.size()) < std::max(nmin, 2)) {
    out.notes.push_back("undefined: fewer than nmin baseline observations");
    return out;
  }
  double mu = 0.0;
  for (double x : ref) mu += x;
  mu /= static_cast<double>(ref.size());
  double ss = 0.0;
  for (double x : ref) ss += (x - mu) * (x - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(ref.size() - 1));
  // Relative guard: summation noise on a constant baseline leaves a tiny
  // nonzero sigma that would otherwise explode the standardized score.
  if (sigma <= 1e-12 * std::max(std::abs(mu), 1.0)) {
    out.notes.push_back("undefined: constant baseline (sigma_ref = 0)");
    return out;
  }
  out.psi = (*current - mu) / sigma;
  out.surge = *out.psi > tau;
  return out;
}

WaitingStats waitingStats(const std::vector<QueueRecord>& records) {
  WaitingStats out;
  std::vector<double> waits;
  for (const auto& rec : records) {
    if (rec.tJoin) waits.push_back(static_cast<double>(rec.tPlug - *rec.tJoin));
  }
  if (!records.empty()) {
    out.joinCoverage = static_cast<double>(waits.size()) / static_cast<double>(records.size());
  }
  if (waits.empty()) return out;  // NoJoinSignals: statistics stay undefined
  out.medianSeconds = median(waits);
  out.p95Seconds = percentileNearestRank(waits, 0.95);
  return out;
}

Utilization utilization(double lambdaPerHour, double muPerHour, int servers) {
  if (muPerHour <= 0 || servers < 1) throw BadRates("utilization requires mu > 0 and s >= 1");
  if (lambdaPerHour < 0) throw BadRates("utilization requires lambda >= 0");
  Utilization u;
  u.rho = lambdaPerHour / (static_cast<double>(servers) * muPerHour);
  u.saturated = u.rho >= 1.0;
  return u;
}

MmsWait mmsWaitProxy(double lambdaPerHour, double muPerHour, int servers) {
  MmsWait out;
  const Utilization u = utilization(lambdaPerHour, muPerHour, servers);
  out.rho = u.rho;
  if (u.saturated) {
    out.unstable = true;
    return out;
  }
  if (lambdaPerHour == 0.0) {
    out.wqHours = 0.0;
    return out;
  }
  const double a = lambdaPerHour / muPerHour;  // offered load
  // Erlang-C probability of waiting via the stable term recurrence.
  double term = 1.0;  // a^0 / 0!
  double sum = 1.0;
  for (int k = 1; k < servers; ++k) {
    term *= a / static_cast<double>(k);
    sum += term;
  }
  const double termS = term * a / static_cast<double>(servers);  // a^s / s!
  const double tail = termS / (1.0 - u.rho);
  const double probWait = tail / (sum + tail);
  out.wqHours = probWait / (static_cast<double>(servers) * muPerHour - lambdaPerHour);
  return out;
}

}  // namespace mcskpi
