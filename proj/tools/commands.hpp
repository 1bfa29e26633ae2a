#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hoflow/solver.hpp"

namespace flowcli {

// Mirror of hoflow::SolverConfig with flag-friendly string fields.
struct SolverFlags {
  std::string order = "second";
  int window_radius = 7;
  double alpha = 1e-3;
  double delta = 1e-4;
  double sigma = 1.4;
  std::string window_weighting = "uniform";
  bool average_spatial = false;

  hoflow::SolverConfig to_config() const;
};

struct ComputeOptions {
  SolverFlags solver;
  std::string frame0;
  std::string frame1;
  std::string frame2;  // empty = two-frame mode
  std::string output;
  std::string color_path;
  std::string quiver_path;
  int quiver_stride = 16;
  double quiver_scale = 1.0;
  double max_magnitude = 0.0;  // <= 0: normalize by the 99th percentile
};

struct EvaluateOptions {
  std::string estimate;
  std::string ground_truth;
  std::string scene_id;     // empty: estimate filename stem
  std::string report_path;  // empty: estimate path with .report extension
  std::string error_map_path;
  std::vector<double> thresholds{1.0, 2.0, 3.0};
};

struct VisualizeOptions {
  std::string flow_path;
  std::string color_path;
  std::string quiver_path;
  std::string base_path;
  int stride = 16;
  double scale = 1.0;
  double max_magnitude = 0.0;
};

struct SynthesizeOptions {
  std::string texture = "sinusoid-grid";
  std::uint32_t seed = 0;
  std::string motion = "translate";
  double tu = 0.0;
  double tv = 0.0;
  double angle = 0.0;
  double zoom = 1.0;
  int width = 256;
  int height = 256;
  std::string out_dir;
};

struct BenchOptions {
  SolverFlags solver;  // order is ignored; bench always runs both
  std::string dataset_root;
  std::string kind = "kitti";
  std::string gt_kind = "occ";
  std::string out_dir;
  std::vector<double> thresholds{1.0, 2.0, 3.0};
};

int run_compute(const ComputeOptions& o);
int run_evaluate(const EvaluateOptions& o);
int run_visualize(const VisualizeOptions& o);
int run_synthesize(const SynthesizeOptions& o);
int run_bench(const BenchOptions& o);

}  // namespace flowcli
