#include "hoflow/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace hoflow {

namespace {

void require_same_size(const FlowField& est, const FlowField& gt) {
  if (!est.same_size(gt)) {
    throw ShapeError("flow dimensions differ: estimate " + std::to_string(est.width) +
                     "x" + std::to_string(est.height) + " vs ground truth " +
                     std::to_string(gt.width) + "x" + std::to_string(gt.height));
  }
}

}  // namespace

std::optional<double> average_endpoint_error(const FlowField& est,
                                             const GroundTruth& gt) {
  require_same_size(est, gt.flow);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < est.pixel_count(); ++i) {
    if (!est.valid[i] || !gt.flow.valid[i]) continue;
    const double du = est.u[i] - gt.flow.u[i];
    const double dv = est.v[i] - gt.flow.v[i];
    sum += std::sqrt(du * du + dv * dv);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::optional<double> percentage_erroneous_pixels(const FlowField& est,
                                                  const GroundTruth& gt,
                                                  double threshold) {
  if (!(threshold > 0.0)) {
    throw ParameterError("pep threshold must be > 0, got " + std::to_string(threshold));
  }
  require_same_size(est, gt.flow);
  std::size_t erroneous = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < est.pixel_count(); ++i) {
    if (!est.valid[i] || !gt.flow.valid[i]) continue;
    const double du = est.u[i] - gt.flow.u[i];
    const double dv = est.v[i] - gt.flow.v[i];
    if (std::sqrt(du * du + dv * dv) > threshold) ++erroneous;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return 100.0 * static_cast<double>(erroneous) / static_cast<double>(count);
}

EvaluationReport evaluate_pair(const FlowField& est, const GroundTruth& gt,
                               const std::vector<double>& thresholds,
                               std::string scene_id) {
  require_same_size(est, gt.flow);
  EvaluationReport report;
  report.scene_id = std::move(scene_id);
  report.total_pixels = est.pixel_count();
  for (std::size_t i = 0; i < est.pixel_count(); ++i) {
    report.evaluated_pixels += est.valid[i] && gt.flow.valid[i];
  }
  report.aee = average_endpoint_error(est, gt);
  for (const double t : thresholds) {
    report.pep[t] = percentage_erroneous_pixels(est, gt, t);
  }
  return report;
}

GrayImage endpoint_error_map(const FlowField& est, const GroundTruth& gt) {
  require_same_size(est, gt.flow);
  GrayImage map(est.width, est.height);
  for (std::size_t i = 0; i < est.pixel_count(); ++i) {
    if (!est.valid[i] || !gt.flow.valid[i]) continue;
    const double du = est.u[i] - gt.flow.u[i];
    const double dv = est.v[i] - gt.flow.v[i];
    map.data[i] = std::sqrt(du * du + dv * dv);
  }
  return map;
}

std::string format_threshold(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

std::string format_metric(const std::optional<double>& value) {
  if (!value) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", *value);
  return buf;
}

std::string serialize_report(const EvaluationReport& report) {
  std::string out;
  out += "scene_id=" + report.scene_id + "\n";
  out += "aee=" + format_metric(report.aee) + "\n";
  for (const auto& [threshold, pct] : report.pep) {
    out += "pep_" + format_threshold(threshold) + "=" + format_metric(pct) + "\n";
  }
  out += "evaluated=" + std::to_string(report.evaluated_pixels) + "\n";
  out += "total=" + std::to_string(report.total_pixels) + "\n";
  return out;
}

}  // namespace hoflow
