#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoflow/flow_io.hpp"
#include "hoflow/solver.hpp"

namespace hoflow {

/// One estimated-vs-ground-truth comparison. Evaluation runs over the
/// intersection of the two validity masks; aee and pep are empty when that
/// intersection is empty.
struct EvaluationReport {
  std::string scene_id;
  std::optional<double> aee;
  std::map<double, std::optional<double>> pep;  // threshold (px) -> percentage
  std::size_t evaluated_pixels = 0;
  std::size_t total_pixels = 0;
};

/// Mean Euclidean endpoint distance over pixels valid in both masks.
/// Empty optional = no overlap (distinguishable from 0).
std::optional<double> average_endpoint_error(const FlowField& est, const GroundTruth& gt);

/// 100 * |{p : endpoint_error(p) > threshold}| / |evaluated|, strict inequality.
std::optional<double> percentage_erroneous_pixels(const FlowField& est,
                                                  const GroundTruth& gt,
                                                  double threshold);

EvaluationReport evaluate_pair(const FlowField& est, const GroundTruth& gt,
                               const std::vector<double>& thresholds,
                               std::string scene_id);

/// Per-pixel endpoint error over the mask intersection, 0 elsewhere.
GrayImage endpoint_error_map(const FlowField& est, const GroundTruth& gt);

/// Flat key=value lines: scene_id, aee, pep_<t>..., evaluated, total.
std::string serialize_report(const EvaluationReport& report);

/// Threshold label as used in report keys and table headers (1.0 -> "1").
std::string format_threshold(double t);

/// Fixed 6-decimal notation used in reports and tables; empty values print "nan".
std::string format_metric(const std::optional<double>& value);

}  // namespace hoflow
