#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mft/frame_tracker.hpp"
#include "mft/metrics.hpp"
#include "mft/scenario.hpp"

namespace mft {

struct RunResult {
  std::vector<Track> tracks;             // every track, noise included
  std::vector<Trajectory> trajectories;  // valid output
  std::int64_t frames = 0;               // frames processed, skipped ids included
  std::chrono::duration<double> elapsed{0.0};  // engine time only
};

/// Runs the engine over the frames (sorted by frame id) and ends the stream.
RunResult run_tracking(std::span<const Frame> frames, const TrackerConfig& cfg);

struct PipelineOptions {
  std::filesystem::path detections;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  std::optional<std::filesystem::path> ground_truth;
  std::optional<std::filesystem::path> report;  // defaults to <out>.report.json
};

/// Process exit code for an error: 2 for input problems, 3 for
/// configuration problems, 1 otherwise.
int exit_code(const Error& error);

/// track subcommand: detections in, trajectories out, plus an evaluation
/// report when ground truth is given. Diagnostics go to `diag`.
int run_pipeline(const PipelineOptions& options, std::ostream& diag);

struct BenchCase {
  std::string name;
  ScenarioSpec spec;
};

/// Fixed workloads of the bench subcommand; "crowd" is the throughput
/// reference (5 targets, 5000 frames, 5 clutter detections per frame).
std::vector<BenchCase> standard_bench_suite(std::uint64_t seed = 7);

struct BenchResult {
  std::string name;
  std::int64_t frames = 0;
  std::int64_t detections = 0;
  std::size_t tracks_created = 0;
  std::size_t valid_trajectories = 0;
  double fps = 0.0;
  EvalReport eval;
};

/// Generates the scenario, then times tracking alone (best of `repeats`).
BenchResult run_bench_case(const BenchCase& bench, const TrackerConfig& cfg, int repeats = 3);

}  // namespace mft
