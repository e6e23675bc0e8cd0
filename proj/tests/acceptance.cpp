// Acceptance gate: ten go/no-go checks over the whole pipeline, one verdict
// line each, exit 0 only when every one holds. Criteria 1 and 2 probe the
// geometric foundations directly; 3..9 read the reports written by a full
// CLI run; 10 is the full-suite runtime and reproducibility check itself.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ponpar/cli.hpp"
#include "ponpar/experiments.hpp"
#include "ponpar/poncelet.hpp"
#include "ponpar/triconics.hpp"

using namespace ponpar;
using nlohmann::json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json loadReport(const fs::path& dir, const std::string& id) {
  std::ifstream f(dir / (id + ".json"));
  if (!f) throw std::runtime_error("missing report for " + id);
  return json::parse(f);
}

json findSub(const json& rep, const std::string& name) {
  for (const json& s : rep.at("subclaims"))
    if (s.at("name") == name) return s;
  throw std::runtime_error("missing subclaim " + name);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// criterion 1: conjugation involutions, pole/polar and parabola round-trips
Verdict foundations() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> w(0.02, 1.0), box(-3.0, 3.0), ang(0.0, 2.0 * pi);
  const std::vector<Triangle> tris = {presetTriangle("scalene-A"), presetTriangle("scalene-B"),
                                      presetTriangle("equilateral")};
  double worstConj = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Triangle& t = tris[i % tris.size()];
    const HPoint p = barycentricToPoint(t, Eigen::Vector3d(w(rng), w(rng), w(rng)));
    for (ConjugationKind kind : {ConjugationKind::Isogonal, ConjugationKind::Isotomic}) {
      const HPoint back = conjugate(t, conjugate(t, p, kind), kind);
      worstConj = std::max(worstConj, distance(back, p));
    }
  }
  double worstPole = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = 0.5 + 2.0 * w(rng);
    const Conic c = conicFromCenterAxes(HPoint(box(rng), box(rng)), a, 0.3 + 0.5 * a, ang(rng));
    const HPoint center = centralConicElements(c).center;
    const HPoint p(box(rng), box(rng));
    if (distance(p, center) < 0.1) continue;
    worstPole = std::max(worstPole, distance(pole(c, polar(c, p)), p));
  }
  double worstPar = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const HPoint f(box(rng), box(rng));
    const double th = ang(rng), d = 0.5 + 2.0 * w(rng);
    const HPoint q(f.x() + d * std::cos(th), f.y() + d * std::sin(th));
    const HLine dir = join(q, HPoint(q.x() - std::sin(th), q.y() + std::cos(th)));
    const ParabolaElements el = parabolaElements(parabolaFromFocusDirectrix(f, dir));
    worstPar = std::max(worstPar, distance(el.focus, f));
    worstPar = std::max(worstPar, std::abs(std::abs(el.directrix.eval(f)) - d));
    worstPar = std::max(worstPar, std::abs(el.directrix.eval(q)));
  }
  const double secs = seconds(t0);
  Verdict v;
  v.pass = worstConj < 1e-10 && worstPole < 1e-10 && worstPar < 1e-10 && secs < 1.0;
  v.detail = fmt("involution %.2e, pole/polar %.2e, parabola %.2e", worstConj, worstPole,
                 worstPar) +
             fmt(", %.2f s", secs);
  return v;
}

// criterion 2: closure and per-family conserved quantities on a 360 grid
Verdict closureAndConservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const Triangle seed = presetTriangle("scalene-A");
  struct Case {
    const char* name;
    FamilySpec spec;
  };
  const std::vector<Case> cases = {{"inellipse", FamilySpec::inellipse(1.0, 0.6)},
                                   {"bicentric", FamilySpec::bicentric(1.0, 0.35)},
                                   {"macbeath", FamilySpec::macbeath(seed)},
                                   {"brocard", FamilySpec::brocard(seed)},
                                   {"homothetic", FamilySpec::homothetic(seed)}};
  double worstClosure = 0.0, worstCons = 0.0;
  bool allOk = true;
  for (const Case& cs : cases) {
    const Family fam = buildFamily(cs.spec);
    std::vector<Triangle> members;
    for (int i = 0; i < 360; ++i) {
      const TriangleSample s = triangleAt(fam, 2.0 * pi * (i + 0.17) / 360);
      if (!s.ok()) {
        allOk = false;
        continue;
      }
      worstClosure = std::max(worstClosure, s.closureResidual);
      members.push_back(*s.tri);
    }
    auto track = [&](const std::function<double(const Triangle&)>& q) {
      const double first = q(members.front());
      for (const Triangle& m : members)
        worstCons = std::max(worstCons, std::abs(q(m) - first));
    };
    auto trackPt = [&](const std::function<HPoint(const Triangle&)>& q) {
      const HPoint first = q(members.front());
      for (const Triangle& m : members) worstCons = std::max(worstCons, distance(q(m), first));
    };
    const std::string name = cs.name;
    if (name == "homothetic") {
      track([](const Triangle& m) { return std::abs(m.signedArea2) / 2.0; });
      trackPt([](const Triangle& m) { return triangleCenter(m, CenterId::X2); });
    } else if (name == "bicentric") {
      track([](const Triangle& m) {
        return std::abs(m.signedArea2) / (m.a + m.b + m.c);  // inradius
      });
      trackPt([](const Triangle& m) { return triangleCenter(m, CenterId::X1); });
    } else if (name == "brocard") {
      track([](const Triangle& m) {  // Brocard angle
        return std::atan2(std::abs(m.signedArea2) * 2.0,
                          m.a * m.a + m.b * m.b + m.c * m.c);
      });
    } else if (name == "macbeath") {
      trackPt([](const Triangle& m) { return triangleCenter(m, CenterId::X3); });
      trackPt([](const Triangle& m) { return triangleCenter(m, CenterId::X4); });
    }
  }
  const double secs = seconds(t0);
  Verdict v;
  v.pass = allOk && worstClosure < 1e-8 && worstCons < 1e-8 && secs < 5.0;
  v.detail = fmt("closure %.2e, conservation %.2e, %.2f s", worstClosure, worstCons, secs);
  return v;
}

}  // namespace

int main() {
  std::vector<std::pair<int, Verdict>> results;
  auto add = [&](int id, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    results.emplace_back(id, v);
  };

  add(1, foundations);
  add(2, closureAndConservation);

  // one full CLI run, timed, then a second run for byte reproducibility
  const fs::path dirA = fs::temp_directory_path() / "ponpar_acceptance_a";
  const fs::path dirB = fs::temp_directory_path() / "ponpar_acceptance_b";
  fs::remove_all(dirA);
  fs::remove_all(dirB);
  const auto t0 = std::chrono::steady_clock::now();
  const int rcA = runCli({"run", "all", "--out", dirA.string()});
  const double fullSecs = seconds(t0);
  const int rcB = runCli({"run", "all", "--out", dirB.string()});

  add(3, [&] {
    const json e1 = loadReport(dirA, "E1"), e2 = loadReport(dirA, "E2");
    const json line = findSub(e1, "focus_locus_line_worst_anchor");
    const json cent = findSub(e2, "tangent_triangle_centroid_line_worst_anchor");
    const json par = findSub(e2, "centroid_line_parallel_focus_line");
    Verdict v;
    v.pass = line.at("model") == "line" && line.at("rms").get<double>() < 1e-7 &&
             cent.at("model") == "line" && cent.at("rms").get<double>() < 1e-7 &&
             par.at("max").get<double>() < 1e-7;
    v.detail = fmt("focus-line rms %.2e, centroid-line rms %.2e, parallel %.2e",
                   line.at("rms").get<double>(), cent.at("rms").get<double>(),
                   par.at("max").get<double>());
    return v;
  });

  add(4, [&] {
    const json e21 = loadReport(dirA, "E21");
    const double oracleErr = findSub(e21, "vertex_formula_max_error").at("max").get<double>();
    const double centerErr =
        findSub(e21, "vertex_circle_center_prediction").at("max").get<double>();
    const double radiusErr =
        findSub(e21, "vertex_circle_radius_prediction").at("max").get<double>();
    const double diam = findSub(e21, "concentric_simson_meets_stationary").at("max").get<double>();
    const double at =
        findSub(e21, "concentric_simson_point_at_half_focus").at("max").get<double>();
    Verdict v;
    v.pass = oracleErr < 1e-9 && centerErr < 1e-8 && radiusErr < 1e-8 && diam < 1e-9 && at < 1e-9;
    v.detail = fmt("formula %.2e, circle center %.2e radius %.2e", oracleErr, centerErr,
                   radiusErr) +
               fmt(", concentric diameter %.2e at-F/2 %.2e", diam, at);
    return v;
  });

  add(5, [&] {
    const json e21 = loadReport(dirA, "E21");
    const json line = findSub(e21, "isogonal_vertex_line_worst_anchor");
    const json touch = findSub(e21, "isogonal_vertex_line_touches_antipode");
    Verdict v;
    v.pass = line.at("model") == "line" && line.at("rms").get<double>() < 1e-7 &&
             touch.at("max").get<double>() < 1e-7;
    v.detail = fmt("conjugate-line rms %.2e, antipode touch %.2e", line.at("rms").get<double>(),
                   touch.at("max").get<double>());
    return v;
  });

  add(6, [&] {
    double worstRms = 0.0;
    const json e3 = loadReport(dirA, "E3");
    worstRms = std::max(worstRms,
                        findSub(e3, "directrix_envelope_parabola_worst_anchor").at("rms").get<double>());
    worstRms = std::max(worstRms, findSub(loadReport(dirA, "E4"),
                                          "directrix_envelope_parabola_worst_anchor")
                                      .at("rms")
                                      .get<double>());
    const json e5 = loadReport(dirA, "E5");
    for (const char* n : {"macbeath_directrix_envelope_parabola",
                          "brocard_directrix_envelope_parabola",
                          "circum-inconic_directrix_envelope_parabola"})
      worstRms = std::max(worstRms, findSub(e5, n).at("rms").get<double>());
    const json e9 = loadReport(dirA, "E9");
    worstRms = std::max(worstRms,
                        findSub(e9, "directrix_envelope_parabola_worst_anchor").at("rms").get<double>());
    const double focusErr = findSub(e3, "envelope_focus_at_caustic_center").at("max").get<double>();
    const double parErr =
        findSub(e9, "envelope_directrix_parallel_anchor_tangent").at("max").get<double>();
    Verdict v;
    v.pass = worstRms < 1e-4 && focusErr < 1e-4 && parErr < 1e-4;
    v.detail = fmt("envelope rms %.2e, focus-at-X1 %.2e, parallel %.2e", worstRms, focusErr,
                   parErr);
    return v;
  });

  add(7, [&] {
    const json e16 = loadReport(dirA, "E16");
    const json e19 = loadReport(dirA, "E19");
    const json e21 = loadReport(dirA, "E21");
    double worst = 0.0;
    for (const json& s : {findSub(e16, "directrix_pencil_point_worst_anchor"),
                          findSub(e16, "simson_pencil_point_worst_anchor"),
                          findSub(e19, "directrix_pencil_point_worst_anchor"),
                          findSub(e21, "simson_pencil_point_worst_anchor")})
      worst = std::max(worst, s.at("max").get<double>());
    const double atX4 = findSub(e19, "directrix_pencil_at_far_focus").at("max").get<double>();
    Verdict v;
    v.pass = worst < 1e-5 && atX4 < 1e-5;
    v.detail = fmt("pencil max %.2e, at-X4 %.2e", worst, atX4);
    return v;
  });

  add(8, [&] {
    bool all = true;
    double worstRms = 0.0;
    std::string failing;
    for (const char* id : {"E6", "E7", "E14", "E15", "E17", "E18", "E20", "E22"}) {
      const json rep = loadReport(dirA, id);
      if (!rep.at("pass").get<bool>()) {
        all = false;
        failing += std::string(" ") + id;
      }
      for (const json& s : rep.at("subclaims"))
        if (s.at("model") != "value") worstRms = std::max(worstRms, s.at("rms").get<double>());
    }
    const json e19 = loadReport(dirA, "E19");
    for (const char* n : {"vertex_center_circle_center", "antipode_circle_center_at_caustic_center",
                          "antipode_circle_radius_caustic_semimajor"})
      if (!findSub(e19, n).at("pass").get<bool>()) {
        all = false;
        failing += std::string(" E19:") + n;
      }
    Verdict v;
    v.pass = all;
    v.detail = fmt("worst model rms %.2e", worstRms) + (failing.empty() ? "" : ", failing:" + failing);
    return v;
  });

  add(9, [&] {
    const double tangency =
        findSub(loadReport(dirA, "E8"), "member_tangent_to_reflected_line").at("max").get<double>();
    const json e11 = loadReport(dirA, "E11");
    const double diam = findSub(e11, "perspector_stationary_diameter").at("max").get<double>();
    const double onCaustic = findSub(e11, "perspector_on_caustic").at("max").get<double>();
    const double area = findSub(loadReport(dirA, "E12"), "tangency_points_collinear_with_x99")
                            .at("max")
                            .get<double>();
    const double kiepert = findSub(loadReport(dirA, "E13"), "conjugate_of_preimage_meet_on_kiepert")
                               .at("rms")
                               .get<double>();
    const bool e10 = loadReport(dirA, "E10").at("pass").get<bool>();
    const bool e23 = loadReport(dirA, "E23").at("pass").get<bool>();
    Verdict v;
    v.pass = tangency < 1e-7 && diam < 1e-7 && onCaustic < 1e-8 && area < 1e-9 &&
             kiepert < 1e-7 && e10 && e23;
    v.detail = fmt("tangency %.2e, diameter %.2e, on-caustic %.2e", tangency, diam, onCaustic) +
               fmt(", collinear area %.2e, kiepert rms %.2e", area, kiepert);
    return v;
  });

  add(10, [&] {
    Verdict v;
    bool identical = true;
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dirA)) {
      const fs::path other = dirB / entry.path().filename();
      if (!fs::exists(other)) {
        identical = false;
        break;
      }
      std::ifstream fa(entry.path(), std::ios::binary), fb(other, std::ios::binary);
      const std::string ca((std::istreambuf_iterator<char>(fa)),
                           std::istreambuf_iterator<char>());
      const std::string cb((std::istreambuf_iterator<char>(fb)),
                           std::istreambuf_iterator<char>());
      if (ca != cb) {
        identical = false;
        break;
      }
      ++compared;
    }
    v.pass = rcA == 0 && rcB == 0 && fullSecs < 60.0 && identical && compared > 0;
    v.detail = fmt("exit %.0f, %.1f s, ", double(rcA), fullSecs) +
               (identical && compared > 0
                    ? fmt("%.0f artifacts byte-identical", double(compared))
                    : std::string("reruns differ"));
    return v;
  });

  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool all = true;
  for (const auto& [id, v] : results) {
    std::printf("criterion %2d %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
