#include <filesystem>
#include <set>

#include "doctest.h"
#include "ponpar/experiments.hpp"

using namespace ponpar;
namespace fs = std::filesystem;

TEST_CASE("registry lists 23 distinct experiments") {
  const auto& reg = experimentRegistry();
  CHECK(reg.size() == 23);
  std::set<std::string> ids;
  for (const ExperimentInfo& e : reg) {
    ids.insert(e.id);
    CHECK(!e.title.empty());
    CHECK(!e.claim.empty());
    CHECK(e.defaultSamples >= 16);
    CHECK(e.defaultAnchors >= 4);
  }
  CHECK(ids.size() == reg.size());
  CHECK(findExperiment("E1") != nullptr);
  CHECK(findExperiment("E23") != nullptr);
  CHECK(findExperiment("E24") == nullptr);
  CHECK(findExperiment("") == nullptr);
}

TEST_CASE("preset triangles are normalized to the unit circumcircle") {
  for (const char* name : {"scalene-A", "scalene-B", "equilateral"}) {
    const Triangle t = presetTriangle(name);
    const HPoint o = triangleCenter(t, CenterId::X3);
    CHECK(distance(o, HPoint(0, 0)) < 1e-12);
    for (const HPoint& v : t.vertices())
      CHECK(distance(o, v) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(presetTriangle("nonagon"), std::invalid_argument);
}

TEST_CASE("run configuration is validated") {
  CHECK_THROWS_AS(runExperiment("E99", RunConfig{}), std::invalid_argument);
  RunConfig small;
  small.samples = 8;
  CHECK_THROWS_AS(runExperiment("E1", small), std::invalid_argument);
  RunConfig few;
  few.anchors = 2;
  CHECK_THROWS_AS(runExperiment("E1", few), std::invalid_argument);
}

TEST_CASE("a coarse run reports the expected structure and passes") {
  RunConfig cfg;
  cfg.samples = 48;
  cfg.anchors = 4;
  const ExperimentReport rep = runExperiment("E1", cfg);
  CHECK(rep.id == "E1");
  CHECK(!rep.title.empty());
  REQUIRE(rep.subclaims.size() == 1);
  CHECK(rep.subclaims[0].name == "focus_locus_line_worst_anchor");
  CHECK(rep.subclaims[0].model == "line");
  CHECK(rep.subclaims[0].pass);
  CHECK(rep.totalSamples == 4 * 48);
  CHECK(rep.pass());
  CHECK(rep.config["samples"] == 48);
  CHECK(rep.config["anchors"] == 4);
}

TEST_CASE("runs are deterministic") {
  RunConfig cfg;
  cfg.samples = 48;
  cfg.anchors = 4;
  const std::string a = runExperiment("E1", cfg).toJson().dump(2);
  const std::string b = runExperiment("E1", cfg).toJson().dump(2);
  CHECK(a == b);
}

TEST_CASE("halving the grids keeps residuals bounded") {
  RunConfig full;
  full.samples = 96;
  full.anchors = 8;
  const ExperimentReport fullRep = runExperiment("E14", full);
  RunConfig half = full;
  half.anchors = 4;
  const ExperimentReport halfRep = runExperiment("E14", half);
  REQUIRE(fullRep.subclaims.size() == halfRep.subclaims.size());
  for (size_t i = 0; i < fullRep.subclaims.size(); ++i) {
    const double bound =
        std::max(4.0 * fullRep.subclaims[i].rms, fullRep.subclaims[i].threshold);
    CHECK(halfRep.subclaims[i].rms <= bound);
  }
  RunConfig sparse = full;
  sparse.samples = 48;
  const ExperimentReport sparseRep = runExperiment("E14", sparse);
  for (size_t i = 0; i < fullRep.subclaims.size(); ++i) {
    const double bound =
        std::max(4.0 * fullRep.subclaims[i].rms, fullRep.subclaims[i].threshold);
    CHECK(sparseRep.subclaims[i].rms <= bound);
  }
}

TEST_CASE("threshold scaling loosens every subclaim") {
  RunConfig cfg;
  cfg.samples = 48;
  cfg.anchors = 4;
  cfg.tolScale = 10.0;
  const ExperimentReport rep = runExperiment("E1", cfg);
  CHECK(rep.subclaims[0].threshold == doctest::Approx(1e-6));
}

TEST_CASE("artifacts are written where requested") {
  const fs::path dir = fs::temp_directory_path() / "ponpar_test_artifacts";
  fs::remove_all(dir);
  RunConfig cfg;
  cfg.outDir = dir.string();
  const ExperimentReport rep = runExperiment("E12", cfg);
  CHECK(rep.pass());
  REQUIRE(!rep.artifacts.empty());
  for (const std::string& name : rep.artifacts) CHECK(fs::exists(dir / name));
  CHECK(fs::exists(dir / "E12.json"));
  CHECK(fs::exists(dir / "E12.svg"));

  const fs::path jdir = fs::temp_directory_path() / "ponpar_test_artifacts_json";
  fs::remove_all(jdir);
  RunConfig jcfg;
  jcfg.outDir = jdir.string();
  jcfg.writeCsv = false;
  jcfg.writeSvg = false;
  const ExperimentReport jrep = runExperiment("E12", jcfg);
  CHECK(jrep.artifacts.size() == 1);
  CHECK(fs::exists(jdir / "E12.json"));
  CHECK(!fs::exists(jdir / "E12.svg"));
}

TEST_CASE("challenge dumps have the documented shapes") {
  RunConfig cfg;
  cfg.samples = 48;
  cfg.anchors = 6;
  const std::string t1 = challengeDump(1, "", cfg).str();
  CHECK(t1.rfind("q,l,m,n\n", 0) == 0);
  CHECK(std::count(t1.begin(), t1.end(), '\n') == 7);  // header + 6 anchors
  const std::string t5 = challengeDump(5, "bicentric", cfg).str();
  CHECK(t5.rfind("t,directrix_l,directrix_m,directrix_n,simson_l,simson_m,simson_n\n", 0) == 0);
  CHECK_THROWS_AS(challengeDump(0, "", cfg), std::invalid_argument);
  CHECK_THROWS_AS(challengeDump(7, "", cfg), std::invalid_argument);
  CHECK_THROWS_AS(challengeDump(1, "dodecagon", cfg), std::invalid_argument);
}
