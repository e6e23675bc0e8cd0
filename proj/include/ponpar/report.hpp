#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ponpar/fit.hpp"

namespace ponpar {

using OrderedJson = nlohmann::ordered_json;

/// Knobs shared by every experiment run. Zero sample/anchor counts mean
/// "use the registry default for that experiment".
struct RunConfig {
  int samples = 0;
  int anchors = 0;
  double tolScale = 1.0;
  std::string preset = "scalene-A";
  std::string outDir;
  bool writeJson = true;
  bool writeCsv = true;
  bool writeSvg = true;
};

struct Subclaim {
  std::string name;
  std::string model;
  OrderedJson params = OrderedJson::object();
  double rms = 0.0;
  double max = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// A fitted-model subclaim: passes when the fit produced the expected model
/// kind and its rms is under threshold.
Subclaim fitSubclaim(const std::string& name, const FitReport& fit, ModelKind expected,
                     double threshold);

/// A scalar-residual subclaim (predicates, parameter matches).
Subclaim valueSubclaim(const std::string& name, double residual, double threshold);

struct ExperimentReport {
  std::string id;
  std::string title;
  std::string claim; // the verified statement, restated; serialized as "paper_ref"
  OrderedJson config = OrderedJson::object();
  std::vector<Subclaim> subclaims;
  long dropped = 0;
  long totalSamples = 0;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;

  bool pass() const;
  OrderedJson toJson() const;
};

/// Deterministic CSV table: fixed column set, %.17g cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void addRow(const std::vector<double>& row);
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

void writeTextFile(const std::string& path, const std::string& content);
bool directoryWritable(const std::string& dir);

}  // namespace ponpar
