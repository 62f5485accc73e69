#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mcskpi/kpi_structural.hpp"

using namespace mcskpi;

namespace {

SiteInventory makeSite(int refillPoints, const std::vector<double>& connectorPowers) {
  SiteInventory inv;
  inv.siteId = "site-1";
  Station st;
  st.stationId = "st-1";
  int cid = 0;
  for (int i = 0; i < refillPoints; ++i) {
    RefillPoint rp;
    rp.refillPointId = "rp-" + std::to_string(i);
    rp.stationId = st.stationId;
    for (double kw : connectorPowers) {
      Connector c;
      c.connectorId = "c-" + std::to_string(cid++);
      c.connectorType = "MCS";
      c.maxPowerKw = kw;
      c.refillPointId = rp.refillPointId;
      rp.connectors.push_back(c);
    }
    st.refillPoints.push_back(rp);
  }
  inv.stations.push_back(st);
  return inv;
}

}  // namespace

TEST_CASE("K1 redundancy") {
  CHECK(*redundancyAtSite(makeSite(4, {1000}), 4).raw == doctest::Approx(1.0));
  CHECK(*redundancyAtSite(makeSite(2, {1000}), 4).raw == doctest::Approx(0.5));
  CHECK(*redundancyAtSite(makeSite(6, {1000}), 4).raw == doctest::Approx(1.0));
}

TEST_CASE("K2 high-power share tiers") {
  SiteInventory inv = makeSite(1, {350, 750, 1000, 1200});
  auto hp = highPowerShare(inv, 1000);
  CHECK(*hp.share750 == doctest::Approx(0.75));
  CHECK(*hp.share1000 == doctest::Approx(0.5));
  CHECK(*hp.value.raw == doctest::Approx(0.5));

  SiteInventory all = makeSite(1, {1000, 1000, 1000, 1000});
  CHECK(*highPowerShare(all, 1000).value.raw == doctest::Approx(1.0));

  SiteInventory empty;
  empty.siteId = "e";
  CHECK_FALSE(highPowerShare(empty, 1000).value.raw.has_value());
}

TEST_CASE("K2 monotone non-increasing in the threshold") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> kw;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) kw.push_back(static_cast<double>(rng() % 1500));
    SiteInventory inv = makeSite(1, kw);
    double prev = 1.0;
    for (double thr : {100.0, 400.0, 750.0, 1000.0, 1300.0}) {
      const double share = *highPowerShare(inv, thr).value.raw;
      CHECK(share <= prev + 1e-12);
      prev = share;
    }
  }
}

TEST_CASE("K3 static green supply ratio") {
  const std::set<std::string> renew = {"solar", "wind"};
  CHECK(*greenSupplyRatio({{"solar", 0.6}, {"wind", 0.3}, {"gas", 0.1}}, renew).raw ==
        doctest::Approx(0.9));
  CHECK(*greenSupplyRatio({{"solar", 1.0}}, renew).raw == doctest::Approx(1.0));
  CHECK(*greenSupplyRatio({}, renew).raw == doctest::Approx(0.0));
}

TEST_CASE("K3 dynamic green supply ratio") {
  const AnalysisWindow w{0, 7200, 1};
  auto constant = greenSupplyRatioDynamic({{0, 0.5}, {3600, 0.5}}, {{0, 30}, {3600, 10}}, w);
  CHECK(*constant.raw == doctest::Approx(0.5));
  auto weighted = greenSupplyRatioDynamic({{0, 1.0}, {3600, 0.0}}, {{0, 30}, {3600, 10}}, w);
  CHECK(*weighted.raw == doctest::Approx(0.75));
  auto zero = greenSupplyRatioDynamic({{0, 1.0}}, {{0, 0.0}}, w);
  CHECK_FALSE(zero.raw.has_value());
  CHECK_THROWS_AS(greenSupplyRatioDynamic({{0, 1.0}}, {{3600, 10.0}}, w), MisalignedSeries);
}

TEST_CASE("K4 user access resilience") {
  CHECK(*userAccessResilience(std::set<std::string>{"card", "app"}).raw == doctest::Approx(1.0));
  CHECK(*userAccessResilience(std::set<std::string>{"card", "app", "rfid"}).raw ==
        doctest::Approx(1.0));
  CHECK(*userAccessResilience(std::set<std::string>{"card"}).raw == doctest::Approx(0.0));
  CHECK(*userAccessResilience(std::map<std::string, double>{{"a", 1.0}, {"b", 0.0}}).raw ==
        doctest::Approx(0.0));
  CHECK(*userAccessResilience(std::map<std::string, double>{{"a", 0.8}, {"b", 0.2}}).raw ==
        doctest::Approx(0.721928).epsilon(1e-4));
  CHECK_THROWS_AS(userAccessResilience(std::map<std::string, double>{{"a", 0.5}, {"b", 0.1}}),
                  BadDistribution);
}

TEST_CASE("K4 maximal at the uniform distribution") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<double> raw(n);
    double sum = 0.0;
    for (auto& x : raw) {
      x = 0.01 + static_cast<double>(rng() % 1000);
      sum += x;
    }
    std::map<std::string, double> shares;
    for (int i = 0; i < n; ++i) shares["m" + std::to_string(i)] = raw[i] / sum;
    const double uar = *userAccessResilience(shares).raw;
    CHECK(uar <= 1.0 + 1e-12);
    std::map<std::string, double> uniform;
    for (int i = 0; i < n; ++i) uniform["m" + std::to_string(i)] = 1.0 / n;
    CHECK(uar <= *userAccessResilience(uniform).raw + 1e-9);
  }
}

TEST_CASE("haversine against an independent formula") {
  // Paris to London, reference value from the law-of-cosines formula.
  const double lat1 = 48.8566, lon1 = 2.3522, lat2 = 51.5074, lon2 = -0.1278;
  const double rad = M_PI / 180.0;
  const double ref = 6371.0 * std::acos(std::sin(lat1 * rad) * std::sin(lat2 * rad) +
                                        std::cos(lat1 * rad) * std::cos(lat2 * rad) *
                                            std::cos((lon2 - lon1) * rad));
  CHECK(haversineKm(lat1, lon1, lat2, lon2) == doctest::Approx(ref).epsilon(1e-6));
  CHECK(haversineKm(50, 6, 50, 6) == doctest::Approx(0.0));
}

TEST_CASE("K5 spatial coverage") {
  const std::vector<std::pair<double, double>> site = {{52.0, 5.0}};
  SUBCASE("co-located demand") {
    std::vector<DemandPoint> demand = {{"d1", 52.0, 5.0, 1.0}};
    CHECK(*spatialCoverage(demand, site, 50).value.raw == doctest::Approx(1.0));
  }
  SUBCASE("one inside, one at 2r") {
    // 1 degree of latitude is about 111.19 km on the R=6371 sphere.
    std::vector<DemandPoint> demand = {{"near", 52.0, 5.0, 1.0},
                                       {"far", 52.0 + 100.0 / 111.1949, 5.0, 1.0}};
    CHECK(*spatialCoverage(demand, site, 50).value.raw == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("no sites") {
    std::vector<DemandPoint> demand = {{"d1", 52.0, 5.0, 1.0}};
    CHECK(*spatialCoverage(demand, {}, 50).value.raw == doctest::Approx(0.0));
  }
  SUBCASE("no demand is undefined") {
    CHECK_FALSE(spatialCoverage({}, site, 50).value.raw.has_value());
  }
}

TEST_CASE("K5 monotone non-decreasing in the radius") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::pair<double, double>> sites;
    for (int i = 0; i < 3; ++i) {
      sites.emplace_back(45.0 + (rng() % 1000) / 100.0, (rng() % 1000) / 100.0);
    }
    std::vector<DemandPoint> demand;
    for (int i = 0; i < 10; ++i) {
      demand.push_back({"d" + std::to_string(i), 45.0 + (rng() % 1000) / 100.0,
                        (rng() % 1000) / 100.0, 1.0 + (rng() % 5)});
    }
    double prev = 0.0;
    for (double r : {10.0, 50.0, 150.0, 400.0, 1000.0}) {
      const double sc = *spatialCoverage(demand, sites, r).value.raw;
      CHECK(sc >= prev - 1e-12);
      prev = sc;
    }
  }
}
