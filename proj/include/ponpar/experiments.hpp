#pragma once

#include <string>
#include <vector>

#include "ponpar/poncelet.hpp"
#include "ponpar/report.hpp"

namespace ponpar {

struct ExperimentInfo {
  std::string id;
  std::string title;
  std::string claim;  // the verified statement, in plain words
  int defaultSamples; // inner sweep N_t
  int defaultAnchors; // outer anchor count N_a
};

/// E1..E23, sorted by id.
const std::vector<ExperimentInfo>& experimentRegistry();

const ExperimentInfo* findExperiment(const std::string& id);

/// Named seed triangles, normalized to circumcenter (0,0) and circumradius 1.
Triangle presetTriangle(const std::string& name);

/// Barycentrics of the caustic perspector used by the generic
/// circle-inscribed family preset.
Eigen::Vector3d genericCausticPerspector();

ExperimentReport runExperiment(const std::string& id, const RunConfig& cfg);

/// Raw locus dumps for the exploratory CLI mode (no verdicts).
/// challenge in 1..6; familyName selects the family where applicable.
CsvTable challengeDump(int challenge, const std::string& familyName, const RunConfig& cfg);

}  // namespace ponpar
