#include "ponpar/cli.hpp"

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ponpar/experiments.hpp"
#include "ponpar/report.hpp"

namespace ponpar {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUnwritable = 3;

void printLine(const ExperimentReport& rep) {
  int passed = 0;
  for (const Subclaim& s : rep.subclaims) passed += s.pass ? 1 : 0;
  std::printf("%-4s %-4s %d/%zu subclaims  dropped %ld/%ld", rep.id.c_str(),
              rep.pass() ? "PASS" : "FAIL", passed, rep.subclaims.size(), rep.dropped,
              rep.totalSamples);
  if (!rep.pass()) {
    for (const Subclaim& s : rep.subclaims)
      if (!s.pass) std::printf("  [%s rms=%.3g max=%.3g thr=%.3g]", s.name.c_str(), s.rms, s.max,
                               s.threshold);
  }
  std::printf("\n");
  std::fflush(stdout);
}

}  // namespace

int runCli(int argc, const char* const* argv) {
  CLI::App app{"Poncelet parabola experiment runner"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool jsonOnly = false;
  bool svgFlag = false;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "family sweep grid size (>= 16)");
    sub->add_option("--anchors", cfg.anchors, "anchor grid size (>= 4)");
    sub->add_option("--tol", cfg.tolScale, "scale factor applied to every threshold");
    sub->add_option("--seed-preset", cfg.preset, "seed triangle: scalene-A, scalene-B, equilateral")
        ->check(CLI::IsMember({"scalene-A", "scalene-B", "equilateral"}));
    sub->add_option("--out", cfg.outDir, "directory for report/CSV/SVG artifacts");
    sub->add_flag("--json-only", jsonOnly, "write only the JSON report");
    sub->add_flag("--svg", svgFlag, "write the SVG plot even with --json-only");
  };

  CLI::App* list = app.add_subcommand("list", "list all experiments");

  std::vector<std::string> ids;
  CLI::App* run = app.add_subcommand("run", "run experiments and print one verdict line each");
  run->add_option("ids", ids, "experiment ids, or 'all'")->required();
  addCommon(run);

  int challenge = 0;
  std::string family;
  CLI::App* dump = app.add_subcommand("dump", "print raw sweep data as CSV");
  dump->add_option("--challenge", challenge, "challenge number (1..6)")->required();
  dump->add_option("--family", family,
                   "family: inellipse, bicentric, macbeath, brocard, homothetic, circum-inconic");
  addCommon(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // parse failures share the unknown-id exit code; --help stays 0
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (jsonOnly) {
    cfg.writeCsv = false;
    cfg.writeSvg = svgFlag;
  }

  if (list->parsed()) {
    for (const ExperimentInfo& e : experimentRegistry())
      std::printf("%-4s %s (samples=%d anchors=%d)\n", e.id.c_str(), e.title.c_str(),
                  e.defaultSamples, e.defaultAnchors);
    return kExitPass;
  }

  if (run->parsed()) {
    if (ids.size() == 1 && ids.front() == "all") {
      ids.clear();
      for (const ExperimentInfo& e : experimentRegistry()) ids.push_back(e.id);
    }
    for (const std::string& id : ids)
      if (!findExperiment(id)) {
        std::fprintf(stderr, "unknown experiment id: %s\n", id.c_str());
        return kExitUnknown;
      }
    if (!cfg.outDir.empty() && !directoryWritable(cfg.outDir)) {
      std::fprintf(stderr, "output directory not writable: %s\n", cfg.outDir.c_str());
      return kExitUnwritable;
    }
    bool allPass = true;
    for (const std::string& id : ids) {
      try {
        const ExperimentReport rep = runExperiment(id, cfg);
        printLine(rep);
        allPass = allPass && rep.pass();
      } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "%s: %s\n", id.c_str(), e.what());
        return kExitUnwritable;
      }
    }
    return allPass ? kExitPass : kExitFail;
  }

  // dump
  try {
    const CsvTable table = challengeDump(challenge, family, cfg);
    std::fputs(table.str().c_str(), stdout);
    std::fflush(stdout);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUnknown;
  }
  return kExitPass;
}

int runCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("ponpar");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return runCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ponpar
