#include <cstdio>
#include <exception>
#include <functional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hoflow/errors.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, flowcli::SolverFlags& s, bool with_order) {
  if (with_order)
    cmd->add_option("--order", s.order, "constraint order")
        ->check(CLI::IsMember({"first", "second"}))
        ->capture_default_str();
  cmd->add_option("--window-radius", s.window_radius, "window half-width in px")
      ->capture_default_str();
  cmd->add_option("--alpha", s.alpha, "normal-matrix damping")->capture_default_str();
  cmd->add_option("--delta", s.delta, "minimum-eigenvalue validity threshold")
      ->capture_default_str();
  cmd->add_option("--sigma", s.sigma, "pre-blur standard deviation in px")
      ->capture_default_str();
  cmd->add_option("--window-weighting", s.window_weighting, "window weights")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();
  cmd->add_flag("--average-spatial", s.average_spatial,
                "take spatial derivatives on the frame average instead of the second frame");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense optical flow: first- and second-order constraints behind a "
               "windowed least-squares solver"};
  app.require_subcommand(1);

  std::function<int()> action;

  flowcli::ComputeOptions co;
  CLI::App* compute =
      app.add_subcommand("compute", "estimate flow for a frame pair, write a .flo file");
  compute->add_option("--frame0", co.frame0, "first frame (png or pgm)")->required();
  compute->add_option("--frame1", co.frame1, "second frame")->required();
  compute->add_option("--three-frame", co.frame2,
                      "third frame; enables the temporal second-difference plane");
  compute->add_option("-o,--output", co.output, "output .flo path")->required();
  add_solver_flags(compute, co.solver, true);
  compute->add_option("--color", co.color_path, "also write a color-wheel png");
  compute->add_option("--max-magnitude", co.max_magnitude,
                      "fixed color normalization (default: 99th-percentile magnitude)");
  compute->add_option("--quiver", co.quiver_path,
                      "also write an arrow overlay png on frame0");
  compute->add_option("--quiver-stride", co.quiver_stride, "arrow grid spacing in px")
      ->capture_default_str();
  compute->add_option("--quiver-scale", co.quiver_scale, "arrow length multiplier")
      ->capture_default_str();
  compute->callback([&] { action = [&co] { return flowcli::run_compute(co); }; });

  flowcli::EvaluateOptions eo;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "compare an estimate against ground truth");
  evaluate->add_option("--estimate", eo.estimate, "estimated flow (.flo or flow png)")
      ->required();
  evaluate->add_option("--ground-truth", eo.ground_truth, "reference flow (.flo or flow png)")
      ->required();
  evaluate->add_option("--scene-id", eo.scene_id,
                       "report label (default: estimate filename stem)");
  evaluate->add_option("--thresholds", eo.thresholds, "pep thresholds in px")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--report", eo.report_path,
                       "report path (default: estimate with a .report extension)");
  evaluate->add_option("--error-map", eo.error_map_path,
                       "write a peak-normalized endpoint-error png");
  evaluate->callback([&] { action = [&eo] { return flowcli::run_evaluate(eo); }; });

  flowcli::VisualizeOptions vo;
  CLI::App* visualize = app.add_subcommand("visualize", "render a stored flow field");
  visualize->add_option("--flow", vo.flow_path, "flow field (.flo or flow png)")
      ->required();
  visualize->add_option("--color", vo.color_path, "color-wheel png output");
  visualize->add_option("--max-magnitude", vo.max_magnitude,
                        "fixed color normalization (default: 99th-percentile magnitude)");
  CLI::Option* quiver_opt =
      visualize->add_option("--quiver", vo.quiver_path, "arrow overlay png output");
  CLI::Option* base_opt =
      visualize->add_option("--base", vo.base_path, "background frame for --quiver");
  quiver_opt->needs(base_opt);
  visualize->add_option("--stride", vo.stride, "arrow grid spacing in px")
      ->capture_default_str();
  visualize->add_option("--scale", vo.scale, "arrow length multiplier")
      ->capture_default_str();
  visualize->callback([&] { action = [&vo] { return flowcli::run_visualize(vo); }; });

  flowcli::SynthesizeOptions so;
  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "generate a frame pair with exact ground truth");
  synthesize->add_option("--texture", so.texture, "scene texture")
      ->check(CLI::IsMember({"quadratic-bowl", "sinusoid-grid", "random-smooth"}))
      ->capture_default_str();
  synthesize->add_option("--seed", so.seed, "random-smooth seed")->capture_default_str();
  synthesize->add_option("--motion", so.motion, "imposed motion")
      ->check(CLI::IsMember({"translate", "rotate", "zoom"}))
      ->capture_default_str();
  synthesize->add_option("--tu", so.tu, "translation x component in px")
      ->capture_default_str();
  synthesize->add_option("--tv", so.tv, "translation y component in px")
      ->capture_default_str();
  synthesize->add_option("--angle", so.angle, "rotation in degrees about the center")
      ->capture_default_str();
  synthesize->add_option("--zoom", so.zoom, "zoom factor about the center")
      ->capture_default_str();
  synthesize->add_option("--width", so.width, "frame width")->capture_default_str();
  synthesize->add_option("--height", so.height, "frame height")->capture_default_str();
  synthesize->add_option("--out", so.out_dir, "output directory")->required();
  synthesize->callback([&] { action = [&so] { return flowcli::run_synthesize(so); }; });

  flowcli::BenchOptions bo;
  CLI::App* bench = app.add_subcommand(
      "bench", "run both constraint orders over a dataset and tabulate AEE/PEP");
  bench->add_option("--dataset", bo.dataset_root, "dataset root directory")->required();
  bench->add_option("--kind", bo.kind, "dataset layout")
      ->check(CLI::IsMember({"kitti", "middlebury"}))
      ->capture_default_str();
  bench->add_option("--gt-kind", bo.gt_kind, "kitti ground-truth flavor")
      ->check(CLI::IsMember({"occ", "noc"}))
      ->capture_default_str();
  bench->add_option("--out", bo.out_dir, "output directory")->required();
  add_solver_flags(bench, bo.solver, false);
  bench->add_option("--thresholds", bo.thresholds, "pep thresholds in px")
      ->delimiter(',')
      ->capture_default_str();
  bench->callback([&] { action = [&bo] { return flowcli::run_bench(bo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!action) {
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }

  try {
    return action();
  } catch (const hoflow::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
