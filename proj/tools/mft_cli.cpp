// mft: command-line front end.
//
//   mft track    --detections D --out T [--config C] [--ground-truth G] [--report R]
//   mft evaluate --ground-truth G --trajectories T [--config C] [--out R]
//   mft simulate --scenario S --out D [--seed N] [--ground-truth G] [--emit-gt-template]
//   mft bench    [--config C] [--seed N] [--repeats K]
//
// Exit codes: 0 success, 2 input error, 3 config error, 1 anything else.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "mft/io.hpp"
#include "mft/pipeline.hpp"
#include "mft/simd/kernels.hpp"

namespace {

using mft::Error;
using mft::ErrorKind;

std::optional<std::filesystem::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

mft::TrackerConfig config_or_default(const std::string& path) {
  return path.empty() ? mft::TrackerConfig{} : mft::load_config(path);
}

mft::ScenarioSpec resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) {
    std::ifstream in(name_or_path);
    return mft::parse_scenario(in);
  }
  if (name_or_path == "lanes") return mft::presets::perfect();
  if (name_or_path == "clutter") return mft::presets::clutter();
  if (name_or_path == "crowd") return mft::presets::bench();
  throw Error(ErrorKind::input, "scenario '" + name_or_path +
                                    "' is neither a file nor a preset (lanes, clutter, crowd)");
}

void write_file(const std::filesystem::path& path, auto&& writer) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::input, "cannot write " + path.string());
  writer(out);
}

int evaluate_cmd(const std::string& gt_path, const std::string& traj_path,
                 const std::string& config_path, const std::string& out_path) {
  const mft::TrackerConfig cfg = config_or_default(config_path);
  std::ifstream gt_in(gt_path);
  if (!gt_in) throw Error(ErrorKind::input, "cannot open ground truth " + gt_path);
  std::ifstream traj_in(traj_path);
  if (!traj_in) throw Error(ErrorKind::input, "cannot open trajectories " + traj_path);
  const auto gt = mft::read_ground_truth(gt_in);
  const auto trajectories = mft::read_trajectories(traj_in);
  const mft::EvalReport report =
      mft::evaluate(gt, trajectories, cfg.eval_iou_threshold, cfg.eval_association);
  const std::string json = mft::report_json(report, cfg);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    write_file(out_path, [&](std::ostream& o) { o << json; });
  }
  return 0;
}

int simulate_cmd(const std::string& scenario, std::optional<std::uint64_t> seed,
                 const std::string& out_path, std::string gt_path, bool gt_template) {
  mft::ScenarioSpec spec = resolve_scenario(scenario);
  if (seed) spec.seed = *seed;
  const mft::Scenario generated = mft::generate(spec);
  write_file(out_path, [&](std::ostream& o) { mft::write_detections(o, generated.frames); });
  if (gt_path.empty() && gt_template) gt_path = out_path + ".gt.csv";
  if (!gt_path.empty()) {
    write_file(gt_path, [&](std::ostream& o) { mft::write_ground_truth(o, generated.ground_truth); });
  }
  return 0;
}

int bench_cmd(const std::string& config_path, std::uint64_t seed, int repeats) {
  const mft::TrackerConfig cfg = config_or_default(config_path);
  std::cout << "kernels: " << mft::simd::to_string(mft::simd::active().isa) << '\n';
  std::cout << std::left << std::setw(10) << "scenario" << std::right << std::setw(8) << "frames"
            << std::setw(12) << "detections" << std::setw(8) << "tracks" << std::setw(8)
            << "valid" << std::setw(8) << "M_bar" << std::setw(14) << "fps" << '\n';
  for (const mft::BenchCase& bench : mft::standard_bench_suite(seed)) {
    const mft::BenchResult r = mft::run_bench_case(bench, cfg, repeats);
    std::cout << std::left << std::setw(10) << r.name << std::right << std::setw(8) << r.frames
              << std::setw(12) << r.detections << std::setw(8) << r.tracks_created
              << std::setw(8) << r.valid_trajectories << std::setw(8) << std::fixed
              << std::setprecision(3) << r.eval.m_bar << std::setw(14) << std::setprecision(1)
              << r.fps << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-feature detection-stream tracker"};
  app.require_subcommand(1);

  std::string detections, config, out, ground_truth, report, trajectories, scenario;
  std::uint64_t seed = 7;
  int repeats = 3;
  bool gt_template = false;

  auto* track = app.add_subcommand("track", "Track a detection file");
  track->add_option("--detections", detections, "Detection CSV")->required();
  track->add_option("--out", out, "Trajectory CSV to write")->required();
  track->add_option("--config", config, "Tracker config (key = value)");
  track->add_option("--ground-truth", ground_truth, "Ground-truth CSV; enables the report");
  track->add_option("--report", report, "Report path (default <out>.report.json)");

  auto* evaluate = app.add_subcommand("evaluate", "Score trajectories against ground truth");
  evaluate->add_option("--ground-truth", ground_truth, "Ground-truth CSV")->required();
  evaluate->add_option("--trajectories", trajectories, "Trajectory CSV")->required();
  evaluate->add_option("--config", config, "Tracker config (IoU threshold, association)");
  evaluate->add_option("--out", out, "Report path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic detection stream");
  simulate->add_option("--scenario", scenario, "Scenario JSON or preset (lanes, clutter, crowd)")
      ->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--out", out, "Detection CSV to write")->required();
  simulate->add_option("--ground-truth", ground_truth, "Ground-truth CSV to write");
  simulate->add_flag("--emit-gt-template", gt_template,
                     "Write ground truth next to --out when --ground-truth is not given");

  auto* bench = app.add_subcommand("bench", "Run the standard throughput suite");
  bench->add_option("--config", config, "Tracker config");
  bench->add_option("--seed", seed, "Scenario seed");
  bench->add_option("--repeats", repeats, "Timed runs per scenario (best is reported)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*track) {
      mft::PipelineOptions options{detections, opt_path(config), out, opt_path(ground_truth),
                                   opt_path(report)};
      return mft::run_pipeline(options, std::cerr);
    }
    if (*evaluate) return evaluate_cmd(ground_truth, trajectories, config, out);
    if (*simulate) {
      std::optional<std::uint64_t> s;
      if (seed_opt->count() > 0) s = seed;
      return simulate_cmd(scenario, s, out, ground_truth, gt_template);
    }
    if (*bench) return bench_cmd(config, seed, repeats);
  } catch (const Error& e) {
    std::cerr << "error: " << mft::to_string(e.kind()) << ": " << e.what() << '\n';
    return mft::exit_code(e);
  }
  return 1;
}
