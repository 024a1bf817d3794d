#include "mft/pipeline.hpp"

#include <fstream>
#include <ostream>

#include "mft/io.hpp"

namespace mft {

RunResult run_tracking(std::span<const Frame> frames, const TrackerConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  Engine engine(cfg);
  const auto start = Clock::now();
  for (const Frame& frame : frames) engine.step(frame.frame_id, frame.detections);
  engine.finish();
  const auto stop = Clock::now();

  RunResult result;
  if (!frames.empty()) result.frames = frames.back().frame_id - frames.front().frame_id + 1;
  result.elapsed = stop - start;
  result.trajectories = engine.trajectories();
  result.tracks = engine.tracks();
  return result;
}

int exit_code(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::input:
    case ErrorKind::shape:
    case ErrorKind::sequencing:
      return 2;
    case ErrorKind::config:
      return 3;
    default:
      return 1;
  }
}

int run_pipeline(const PipelineOptions& options, std::ostream& diag) {
  try {
    const TrackerConfig cfg = options.config ? load_config(*options.config) : TrackerConfig{};
    const std::vector<Frame> frames = load_detections(options.detections, cfg.histogram_bins);
    std::optional<std::vector<GroundTruthObject>> gt;
    if (options.ground_truth) {
      std::ifstream in(*options.ground_truth);
      if (!in) throw Error(ErrorKind::input, "cannot open ground truth " + options.ground_truth->string());
      gt = read_ground_truth(in);
    }

    const RunResult run = run_tracking(frames, cfg);

    std::ofstream out(options.out);
    if (!out) throw Error(ErrorKind::input, "cannot write " + options.out.string());
    write_trajectories(out, run.trajectories);

    if (gt) {
      EvalReport report = evaluate(*gt, run.trajectories, cfg.eval_iou_threshold, cfg.eval_association);
      report.frames = run.frames;
      if (run.elapsed.count() > 0.0) report.fps = throughput(run.frames, run.elapsed);
      const auto path = options.report.value_or(options.out.string() + ".report.json");
      std::ofstream rep(path);
      if (!rep) throw Error(ErrorKind::input, "cannot write " + path.string());
      rep << report_json(report, cfg);
    }
    return 0;
  } catch (const Error& e) {
    diag << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e);
  }
}

std::vector<BenchCase> standard_bench_suite(std::uint64_t seed) {
  return {
      {"lanes", presets::perfect(5, 500, seed)},
      {"clutter", presets::clutter(seed)},
      {"crowd", presets::bench(5, 5000, 5.0, seed)},
  };
}

BenchResult run_bench_case(const BenchCase& bench, const TrackerConfig& cfg, int repeats) {
  const Scenario scenario = generate(bench.spec);
  BenchResult result;
  result.name = bench.name;
  for (const Frame& f : scenario.frames) {
    result.detections += static_cast<std::int64_t>(f.detections.size());
  }

  std::chrono::duration<double> best{0.0};
  RunResult run;
  for (int i = 0; i < std::max(1, repeats); ++i) {
    run = run_tracking(scenario.frames, cfg);
    if (i == 0 || run.elapsed < best) best = run.elapsed;
  }
  result.frames = run.frames;
  result.tracks_created = run.tracks.size();
  result.valid_trajectories = run.trajectories.size();
  result.fps = throughput(run.frames, best);
  result.eval = evaluate(scenario.ground_truth, run.trajectories, cfg.eval_iou_threshold,
                         cfg.eval_association);
  result.eval.frames = run.frames;
  result.eval.fps = result.fps;
  return result;
}

}  // namespace mft
