#include "ponpar/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ponpar {

namespace {

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

OrderedJson fitParams(const FitReport& fit) {
  OrderedJson p = OrderedJson::object();
  switch (fit.model) {
    case ModelKind::Point:
      p["x"] = fit.point.x();
      p["y"] = fit.point.y();
      break;
    case ModelKind::Line:
      p["l"] = fit.line.v.x();
      p["m"] = fit.line.v.y();
      p["n"] = fit.line.v.z();
      break;
    case ModelKind::Circle:
      p["cx"] = fit.point.x();
      p["cy"] = fit.point.y();
      p["radius"] = fit.radius;
      break;
    case ModelKind::Ellipse:
    case ModelKind::Parabola:
    case ModelKind::Hyperbola: {
      if (fit.conic) {
        const auto& m = fit.conic->M;
        p["matrix"] = {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
        if (fit.model == ModelKind::Parabola) {
          const ParabolaElements el = parabolaElements(*fit.conic);
          p["focus"] = {el.focus.x(), el.focus.y()};
          p["vertex"] = {el.vertex.x(), el.vertex.y()};
        } else if (fit.model == ModelKind::Ellipse) {
          const CentralConicElements el = centralConicElements(*fit.conic);
          p["center"] = {el.center.x(), el.center.y()};
          p["semi_major"] = el.semiMajor;
          p["semi_minor"] = el.semiMinor;
          p["major_dir"] = {el.majorDir.x(), el.majorDir.y()};
        }
      }
      break;
    }
    case ModelKind::None:
      break;
  }
  p["n_samples"] = fit.nSamples;
  return p;
}

}  // namespace

Subclaim fitSubclaim(const std::string& name, const FitReport& fit, ModelKind expected,
                     double threshold) {
  Subclaim s;
  s.name = name;
  s.model = modelName(fit.model);
  s.params = fitParams(fit);
  s.rms = fit.rms;
  s.max = fit.maxResidual;
  s.threshold = threshold;
  s.pass = fit.model == expected && fit.rms < threshold;
  return s;
}

Subclaim valueSubclaim(const std::string& name, double residual, double threshold) {
  Subclaim s;
  s.name = name;
  s.model = "value";
  s.rms = residual;
  s.max = residual;
  s.threshold = threshold;
  s.pass = residual < threshold;
  return s;
}

bool ExperimentReport::pass() const {
  for (const Subclaim& s : subclaims)
    if (!s.pass) return false;
  if (totalSamples > 0 && dropped >= 0.05 * static_cast<double>(totalSamples)) return false;
  return true;
}

OrderedJson ExperimentReport::toJson() const {
  OrderedJson j = OrderedJson::object();
  j["id"] = id;
  j["title"] = title;
  j["paper_ref"] = claim;
  j["config"] = config;
  OrderedJson subs = OrderedJson::array();
  for (const Subclaim& s : subclaims) {
    OrderedJson e = OrderedJson::object();
    e["name"] = s.name;
    e["model"] = s.model;
    e["params"] = s.params;
    e["rms"] = s.rms;
    e["max"] = s.max;
    e["threshold"] = s.threshold;
    e["pass"] = s.pass;
    subs.push_back(e);
  }
  j["subclaims"] = subs;
  j["dropped"] = dropped;
  j["total_samples"] = totalSamples;
  j["artifacts"] = artifacts;
  j["notes"] = notes;
  j["pass"] = pass();
  return j;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::addRow(const std::vector<double>& row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f.good()) throw std::runtime_error("write failed: " + path);
}

bool directoryWritable(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir, ec)) return false;
  const fs::path probe = fs::path(dir) / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) return false;
  }
  fs::remove(probe, ec);
  return true;
}

}  // namespace ponpar
