#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcskpi/ingest.hpp"
#include "mcskpi/report.hpp"
#include "mcskpi/simharness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mcskpi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitUsage = 64;

struct FeedPaths {
  std::string inventory;
  std::string status;
  std::string queue;
  std::string cyber;
  std::string demand;
  std::string stressors;
};

void addFeedFlags(CLI::App* cmd, FeedPaths& paths, bool requireCore) {
  auto* inv = cmd->add_option("--inventory", paths.inventory, "static inventory JSON");
  auto* st = cmd->add_option("--status", paths.status, "dynamic status JSONL");
  if (requireCore) {
    inv->required();
    st->required();
  }
  cmd->add_option("--queue", paths.queue, "queue/reservation JSONL");
  cmd->add_option("--cyber", paths.cyber, "cyber telemetry JSON");
  cmd->add_option("--demand", paths.demand, "demand points JSON");
  cmd->add_option("--stressors", paths.stressors, "additional stressor JSONL");
}

AnalysisWindow parseWindowFlag(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw MalformedDocument("--window expects ISO-8601 interval start/end: " + text);
  }
  AnalysisWindow w;
  w.t0 = parseIso8601(text.substr(0, slash));
  w.t1 = parseIso8601(text.substr(slash + 1));
  w.validate();
  return w;
}

FeedBundle loadBundle(const FeedPaths& paths, const AnalysisWindow& window,
                      WarningSink* warnings) {
  FeedBundle bundle;
  bundle.inventory = parseStaticFeed(paths.inventory, warnings);
  auto dynamic = parseDynamicFeed(paths.status, window, warnings);
  bundle.statusEvents = std::move(dynamic.events);
  bundle.rates = std::move(dynamic.rates);
  bundle.stressors = std::move(dynamic.stressors);
  if (!paths.stressors.empty()) {
    auto extra = parseDynamicFeed(paths.stressors, window, warnings);
    auto& s = bundle.stressors;
    const auto& e = extra.stressors;
    s.gridOutages.insert(s.gridOutages.end(), e.gridOutages.begin(), e.gridOutages.end());
    s.commsOutages.insert(s.commsOutages.end(), e.commsOutages.begin(), e.commsOutages.end());
    s.interruptions.insert(s.interruptions.end(), e.interruptions.begin(), e.interruptions.end());
    s.plannedMaintenance.insert(s.plannedMaintenance.end(), e.plannedMaintenance.begin(),
                                e.plannedMaintenance.end());
    s.powerSamples.insert(s.powerSamples.end(), e.powerSamples.begin(), e.powerSamples.end());
    s.offlineSessions.insert(s.offlineSessions.end(), e.offlineSessions.begin(),
                             e.offlineSessions.end());
  }
  if (!paths.queue.empty()) bundle.queue = parseQueueFeed(paths.queue, warnings);
  if (!paths.cyber.empty()) bundle.cyber = parseCyberFeed(paths.cyber, warnings);
  if (!paths.demand.empty()) bundle.demand = parseDemandFeed(paths.demand, warnings);
  bundle.declaredFeeds = {"static", "status"};
  if (!paths.queue.empty()) bundle.declaredFeeds.insert("reservations");
  if (!paths.cyber.empty()) {
    bundle.declaredFeeds.insert("csms");
    bundle.declaredFeeds.insert("ems");
  }
  return bundle;
}

WeightConfig resolveConfig(const std::string& flagPath) {
  std::string path = flagPath;
  if (path.empty()) {
    if (const char* env = std::getenv("MCS_KPI_CONFIG")) path = env;
  }
  if (path.empty()) return WeightConfig::defaults();
  return parseConfigFile(path);
}

void writeFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int runCompute(const FeedPaths& paths, const std::string& windowText,
               const std::string& configPath, const std::string& level,
               const std::string& outDir) {
  const AnalysisWindow window = parseWindowFlag(windowText);
  const WeightConfig config = resolveConfig(configPath);
  WarningSink warnings;
  const FeedBundle bundle = loadBundle(paths, window, &warnings);
  const Report report = computeReport(bundle, window, config, level);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(outDir);
  writeFile(fs::path(outDir) / "report.json", report.document.dump(2) + "\n");
  writeFile(fs::path(outDir) / "report.csv", report.csv);
  writeFile(fs::path(outDir) / "radar.csv", report.radarCsv);
  // Generation time lives in a sidecar so report.json stays deterministic.
  const auto now = std::chrono::system_clock::now();
  const Timestamp nowSec =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  json sidecar{{"generatedAt", formatIso8601(nowSec)}, {"tool", "mcskpi"}};
  writeFile(fs::path(outDir) / "report.meta.json", sidecar.dump(2) + "\n");

  if (report.definedKpiCount == 0) {
    std::cerr << "insufficient data: all KPIs undefined\n";
    return kExitInsufficient;
  }
  std::cout << "wrote report.json, report.csv, radar.csv to " << outDir << "\n";
  return kExitOk;
}

int runValidate(const FeedPaths& paths, const std::string& windowText) {
  const AnalysisWindow window =
      windowText.empty() ? AnalysisWindow{0, 365LL * 86400 * 100, 1} : parseWindowFlag(windowText);
  WarningSink warnings;
  // Every violation is reported with the path of the offending file.
  auto check = [&](const std::string& path, auto&& fn) {
    if (path.empty()) return;
    try {
      fn();
    } catch (const std::exception& e) {
      std::string msg = e.what();
      if (msg.find(path) == std::string::npos) msg = path + ": " + msg;
      throw SchemaViolation(msg);
    }
    std::cout << "ok: " << path << "\n";
  };
  check(paths.inventory, [&] { parseStaticFeed(paths.inventory, &warnings).validate(); });
  check(paths.status, [&] { parseDynamicFeed(paths.status, window, &warnings); });
  check(paths.queue, [&] { parseQueueFeed(paths.queue, &warnings); });
  check(paths.cyber, [&] { parseCyberFeed(paths.cyber, &warnings).validate(); });
  check(paths.demand, [&] { parseDemandFeed(paths.demand, &warnings); });
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int runSimulate(const std::string& specPath, const std::string& outDir) {
  const ScenarioSpec spec = ScenarioSpec::fromJsonFile(specPath);
  const Scenario scenario = generateScenario(spec);
  fs::create_directories(outDir);
  writeScenarioFiles(scenario, spec, outDir);
  std::cout << "wrote scenario feeds to " << outDir << "\n";
  return kExitOk;
}

int runIri(const std::vector<std::string>& feeds) {
  std::set<std::string> declared(feeds.begin(), feeds.end());
  const IriResult iri = interoperabilityReadiness(declared);
  json doc;
  doc["percent"] = iri.percent;
  doc["computable"] = iri.computable;
  doc["total"] = iri.total;
  json perTier;
  for (const auto& [tier, counts] : iri.perTier) {
    perTier[std::string(1, tier)] = {{"computable", counts.first}, {"total", counts.second}};
  }
  doc["perTier"] = perTier;
  doc["computableKpis"] = iri.computableKpis;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int runExplain(const std::string& reportPath) {
  std::ifstream in(reportPath);
  if (!in) throw MalformedDocument("cannot open report: " + reportPath);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(reportPath + std::string(": ") + e.what());
  }
  const double recomputed = recomputeSrsFromReport(doc);
  std::cout.precision(17);
  const auto& srsNode = doc.at("srs").at("value");
  std::cout << "kpiId,raw,normalized,weight,effectiveWeight\n";
  for (const auto& [id, comp] : doc.at("srs").at("components").items()) {
    auto cell = [](const json& v) { return v.is_null() ? std::string("") : v.dump(); };
    std::cout << id << "," << cell(comp.at("raw")) << "," << cell(comp.at("normalized")) << ","
              << comp.at("weight").dump() << "," << comp.at("effectiveWeight").dump() << "\n";
  }
  std::cout << "faultRate," << doc.at("srs").at("faultRate").dump() << "\n";
  std::cout << "srs.recomputed," << recomputed << "\n";
  if (srsNode.is_null()) {
    std::cerr << "report has no defined SRS\n";
    return kExitInsufficient;
  }
  const double stored = srsNode.get<double>();
  if (std::abs(stored - recomputed) > 1e-9) {
    std::cerr << "self-audit failed: stored " << stored << " recomputed " << recomputed << "\n";
    return kExitSchema;
  }
  std::cout << "srs.stored," << stored << "\nself-audit,pass\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charging-site resilience KPI engine"};
  app.require_subcommand(1);

  FeedPaths computePaths;
  std::string computeWindow;
  std::string computeConfig;
  std::string computeLevel = "site";
  std::string computeOut = ".";
  auto* compute = app.add_subcommand("compute", "compute KPIs and write report files");
  addFeedFlags(compute, computePaths, true);
  compute->add_option("--window", computeWindow, "ISO-8601 interval start/end")->required();
  compute->add_option("--config", computeConfig, "weights/normalization config JSON");
  compute->add_option("--level", computeLevel, "breakdown granularity")
      ->check(CLI::IsMember({"connector", "point", "station", "pool", "site"}));
  compute->add_option("--out", computeOut, "output directory");

  FeedPaths validatePaths;
  std::string validateWindow;
  auto* validate = app.add_subcommand("validate", "schema-check feed files");
  addFeedFlags(validate, validatePaths, false);
  validate->add_option("--window", validateWindow, "ISO-8601 interval start/end");

  std::string simSpec;
  std::string simOut = ".";
  auto* simulate = app.add_subcommand("simulate", "generate synthetic feeds from a scenario");
  simulate->add_option("--spec", simSpec, "scenario spec JSON")->required();
  simulate->add_option("--out", simOut, "output directory");

  std::vector<std::string> iriFeeds;
  auto* iri = app.add_subcommand("iri", "interoperability readiness from declared feeds");
  iri->add_option("--feeds", iriFeeds, "declared feed kinds")->delimiter(',')->required();

  std::string explainReport;
  auto* explain = app.add_subcommand("explain", "per-KPI provenance and SRS self-audit");
  explain->add_option("--report", explainReport, "report.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) {
      return runCompute(computePaths, computeWindow, computeConfig, computeLevel, computeOut);
    }
    if (validate->parsed()) return runValidate(validatePaths, validateWindow);
    if (simulate->parsed()) return runSimulate(simSpec, simOut);
    if (iri->parsed()) return runIri(iriFeeds);
    if (explain->parsed()) return runExplain(explainReport);
  } catch (const MalformedDocument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const SchemaViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  }
  return kExitUsage;
}
