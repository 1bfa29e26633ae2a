#include "commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoflow/constraint.hpp"
#include "hoflow/errors.hpp"
#include "hoflow/flow_io.hpp"
#include "hoflow/image_io.hpp"
#include "hoflow/metrics.hpp"
#include "hoflow/solver.hpp"
#include "hoflow/synthetic.hpp"
#include "hoflow/viz.hpp"

namespace fs = std::filesystem;

namespace flowcli {
namespace {

using namespace hoflow;

void ensure_parent_dir(const fs::path& p) {
  const fs::path dir = p.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
}

void write_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  ensure_parent_dir(path);
  write_file(path, bytes);
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                              text.size()));
}

// Accept either container for flow inputs: .flo bytes or a 3-channel flow png.
FlowField load_flow_any(const fs::path& path) {
  return load_ground_truth(path).flow;
}

std::optional<double> positive_or_auto(double v) {
  if (v > 0.0) return v;
  return std::nullopt;
}

void check_thresholds(const std::vector<double>& thresholds) {
  for (double t : thresholds)
    if (!(t > 0.0) || !std::isfinite(t))
      throw ParameterError("pep threshold must be a positive finite pixel count");
}

}  // namespace

SolverConfig SolverFlags::to_config() const {
  SolverConfig cfg;
  cfg.order = order == "first" ? ConstraintOrder::first : ConstraintOrder::second;
  cfg.window_radius = window_radius;
  cfg.alpha = alpha;
  cfg.delta = delta;
  cfg.sigma = sigma;
  cfg.window_weighting = window_weighting == "gaussian" ? WindowWeighting::gaussian
                                                        : WindowWeighting::uniform;
  cfg.average_spatial = average_spatial;
  cfg.validate();
  return cfg;
}

int run_compute(const ComputeOptions& o) {
  const SolverConfig cfg = o.solver.to_config();
  const GrayImage f0 = load_gray(o.frame0);
  const GrayImage f1 = load_gray(o.frame1);
  std::optional<GrayImage> f2;
  if (!o.frame2.empty()) f2 = load_gray(o.frame2);

  const auto start = std::chrono::steady_clock::now();
  const FlowField flow = compute_flow(f0, f1, f2 ? &*f2 : nullptr, cfg);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  write_bytes(o.output, write_flo(flow));
  std::printf("flow %dx%d, %s order, %.1f ms, valid %.2f%% (%zu/%zu)\n",
              flow.width, flow.height, o.solver.order.c_str(), ms,
              100.0 * flow.valid_fraction(), flow.count_valid(),
              flow.pixel_count());
  std::printf("wrote %s\n", o.output.c_str());

  if (!o.color_path.empty()) {
    write_bytes(o.color_path,
                encode_png(flow_to_color(flow, positive_or_auto(o.max_magnitude))));
    std::printf("wrote %s\n", o.color_path.c_str());
  }
  if (!o.quiver_path.empty()) {
    write_bytes(o.quiver_path,
                encode_png(flow_to_quiver(f0, flow, o.quiver_stride, o.quiver_scale)));
    std::printf("wrote %s\n", o.quiver_path.c_str());
  }
  return 0;
}

int run_evaluate(const EvaluateOptions& o) {
  check_thresholds(o.thresholds);
  const FlowField est = load_flow_any(o.estimate);
  const GroundTruth gt = load_ground_truth(o.ground_truth);
  const std::string scene =
      o.scene_id.empty() ? fs::path(o.estimate).stem().string() : o.scene_id;

  const EvaluationReport report = evaluate_pair(est, gt, o.thresholds, scene);
  const std::string text = serialize_report(report);
  std::fputs(text.c_str(), stdout);

  const fs::path report_path = o.report_path.empty()
                                   ? fs::path(o.estimate).replace_extension(".report")
                                   : fs::path(o.report_path);
  write_text(report_path, text);
  std::printf("wrote %s\n", report_path.string().c_str());

  if (!o.error_map_path.empty()) {
    GrayImage em = endpoint_error_map(est, gt);
    const double peak = *std::max_element(em.data.begin(), em.data.end());
    if (peak > 0.0)
      for (double& v : em.data) v /= peak;
    write_bytes(o.error_map_path, encode_gray_png(em, 8));
    std::printf("wrote %s (peak error %.6f px)\n", o.error_map_path.c_str(), peak);
  }
  return 0;
}

int run_visualize(const VisualizeOptions& o) {
  if (o.color_path.empty() && o.quiver_path.empty())
    throw ParameterError("visualize: nothing to do, pass --color and/or --quiver");
  const FlowField f = load_flow_any(o.flow_path);
  if (!o.color_path.empty()) {
    write_bytes(o.color_path,
                encode_png(flow_to_color(f, positive_or_auto(o.max_magnitude))));
    std::printf("wrote %s\n", o.color_path.c_str());
  }
  if (!o.quiver_path.empty()) {
    const GrayImage base = load_gray(o.base_path);
    write_bytes(o.quiver_path, encode_png(flow_to_quiver(base, f, o.stride, o.scale)));
    std::printf("wrote %s\n", o.quiver_path.c_str());
  }
  return 0;
}

int run_synthesize(const SynthesizeOptions& o) {
  SyntheticSpec spec;
  spec.texture = o.texture == "quadratic-bowl" ? TextureKind::quadratic_bowl
                 : o.texture == "random-smooth" ? TextureKind::random_smooth
                                                : TextureKind::sinusoid_grid;
  spec.seed = o.seed;
  spec.motion = o.motion == "rotate" ? MotionKind::rotate
                : o.motion == "zoom" ? MotionKind::zoom
                                     : MotionKind::translate;
  spec.translate_u = o.tu;
  spec.translate_v = o.tv;
  spec.rotate_deg = o.angle;
  spec.zoom_factor = o.zoom;
  spec.width = o.width;
  spec.height = o.height;
  spec.validate();

  const SyntheticScene scene = generate_synthetic(spec);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "frame0.png", encode_gray_png(scene.frame0, 16));
  write_file(dir / "frame1.png", encode_gray_png(scene.frame1, 16));
  write_file(dir / "gt.flo", write_flo(scene.ground_truth));
  std::printf("wrote %s, %s, %s in %s\n", "frame0.png", "frame1.png", "gt.flo",
              dir.string().c_str());
  return 0;
}

namespace {

// Accumulates a mean that skips absent values ("nan" cells stay out of means).
struct MeanAcc {
  double sum = 0.0;
  std::size_t n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

std::string csv_header(const std::vector<double>& thresholds) {
  std::string h = "scene_id,aee_first,aee_second";
  for (double t : thresholds) {
    const std::string label = format_threshold(t);
    h += ",pep_" + label + "_first,pep_" + label + "_second";
  }
  h += ",evaluated_first,evaluated_second,total\n";
  return h;
}

EvaluationReport unevaluated_report(std::string scene,
                                    const std::vector<double>& thresholds,
                                    std::size_t total) {
  EvaluationReport r;
  r.scene_id = std::move(scene);
  for (double t : thresholds) r.pep[t] = std::nullopt;
  r.evaluated_pixels = 0;
  r.total_pixels = total;
  return r;
}

std::string bench_config_text(const BenchOptions& o) {
  char buf[128];
  std::string s;
  s += "dataset_kind=" + o.kind + "\n";
  if (o.kind == "kitti") s += "gt_kind=" + o.gt_kind + "\n";
  std::snprintf(buf, sizeof buf, "window_radius=%d\n", o.solver.window_radius);
  s += buf;
  std::snprintf(buf, sizeof buf, "alpha=%g\n", o.solver.alpha);
  s += buf;
  std::snprintf(buf, sizeof buf, "delta=%g\n", o.solver.delta);
  s += buf;
  std::snprintf(buf, sizeof buf, "sigma=%g\n", o.solver.sigma);
  s += buf;
  s += "window_weighting=" + o.solver.window_weighting + "\n";
  s += std::string("average_spatial=") + (o.solver.average_spatial ? "1" : "0") + "\n";
  s += "thresholds=";
  for (std::size_t i = 0; i < o.thresholds.size(); ++i) {
    if (i) s += ",";
    s += format_threshold(o.thresholds[i]);
  }
  s += "\n";
  return s;
}

}  // namespace

int run_bench(const BenchOptions& o) {
  check_thresholds(o.thresholds);
  const SolverConfig base = o.solver.to_config();
  const DatasetKind kind =
      o.kind == "middlebury" ? DatasetKind::middlebury : DatasetKind::kitti;
  const KittiGtKind gtk = o.gt_kind == "noc" ? KittiGtKind::noc : KittiGtKind::occ;
  const std::vector<DatasetPair> pairs = enumerate_pairs(o.dataset_root, kind, gtk);
  std::printf("%zu scene(s) under %s\n", pairs.size(), o.dataset_root.c_str());

  const fs::path out(o.out_dir);
  fs::create_directories(out);
  write_text(out / "config.txt", bench_config_text(o));

  static constexpr const char* kOrderNames[2] = {"first", "second"};
  static constexpr ConstraintOrder kOrders[2] = {ConstraintOrder::first,
                                                 ConstraintOrder::second};

  std::string csv = csv_header(o.thresholds);
  MeanAcc aee_acc[2];
  std::vector<std::array<MeanAcc, 2>> pep_acc(o.thresholds.size());

  for (const DatasetPair& pair : pairs) {
    const GrayImage f0 = load_gray(pair.frame0);
    const GrayImage f1 = load_gray(pair.frame1);
    std::optional<GroundTruth> gt;
    if (pair.gt) gt = load_ground_truth(*pair.gt);

    EvaluationReport reports[2];
    std::size_t total = 0;
    for (int i = 0; i < 2; ++i) {
      SolverConfig cfg = base;
      cfg.order = kOrders[i];
      const FlowField flow = compute_flow(f0, f1, nullptr, cfg);
      total = flow.pixel_count();
      const std::string stem = pair.scene_id + "_" + kOrderNames[i];
      write_file(out / (stem + ".flo"), write_flo(flow));
      if (gt) {
        reports[i] = evaluate_pair(flow, *gt, o.thresholds, pair.scene_id);
        write_text(out / (stem + ".report"), serialize_report(reports[i]));
      } else {
        reports[i] = unevaluated_report(pair.scene_id, o.thresholds, total);
      }
    }

    std::string line = pair.scene_id;
    line += "," + format_metric(reports[0].aee) + "," + format_metric(reports[1].aee);
    for (double t : o.thresholds)
      line += "," + format_metric(reports[0].pep.at(t)) + "," +
              format_metric(reports[1].pep.at(t));
    line += "," + std::to_string(reports[0].evaluated_pixels) + "," +
            std::to_string(reports[1].evaluated_pixels) + "," + std::to_string(total);
    csv += line + "\n";

    aee_acc[0].add(reports[0].aee);
    aee_acc[1].add(reports[1].aee);
    for (std::size_t k = 0; k < o.thresholds.size(); ++k) {
      pep_acc[k][0].add(reports[0].pep.at(o.thresholds[k]));
      pep_acc[k][1].add(reports[1].pep.at(o.thresholds[k]));
    }
    std::printf("%s: aee first=%s second=%s\n", pair.scene_id.c_str(),
                format_metric(reports[0].aee).c_str(),
                format_metric(reports[1].aee).c_str());
  }

  if (!pairs.empty()) {
    std::string line = "mean";
    line += "," + format_metric(aee_acc[0].mean()) + "," + format_metric(aee_acc[1].mean());
    for (std::size_t k = 0; k < o.thresholds.size(); ++k)
      line += "," + format_metric(pep_acc[k][0].mean()) + "," +
              format_metric(pep_acc[k][1].mean());
    line += ",,,";
    csv += line + "\n";
  }
  write_text(out / "comparison.csv", csv);
  std::printf("wrote %s\n", (out / "comparison.csv").string().c_str());
  return 0;
}

}  // namespace flowcli
