#pragma once

// Text formats. All are line-oriented, comma-separated, one record per line;
// blank lines and lines starting with '#' are ignored. Numbers are written
// in the shortest form that reads back to the same double.
//
//   detections:   frame_id,detection_id,x,y,l,h[,c_1,...,c_k]
//                 k = 0 (no histogram: all-zero), k = n (configured bins)
//                 or k = 768 (raw 3 x 256 counts, rebinned to n on load)
//   ground truth: gt_id,frame_id,x,y,l,h
//   trajectories: track_id,frame_id,x,y,l,h,status_flag
//                 status_flag 0 = matched detection, 1 = held (waiting)
//   config:       key = value, keys named as TrackerConfig fields

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mft/core_types.hpp"
#include "mft/global_tracker.hpp"
#include "mft/metrics.hpp"
#include "mft/scenario.hpp"

namespace mft {

/// Sums consecutive groups of raw bins within each of the three 256-bin
/// channel blocks. `bins` must be 3 * b with b dividing 256, otherwise
/// ErrorKind::config.
ColorHistogram rebin(std::span<const double> raw, std::size_t bins);

/// Parses detections and groups them into frames sorted by frame id (rows
/// may come in any order). Errors carry the 1-based line number.
std::vector<Frame> read_detections(std::istream& in, std::size_t bins);
std::vector<Frame> load_detections(const std::filesystem::path& path, std::size_t bins);
void write_detections(std::ostream& out, std::span<const Frame> frames);

std::vector<GroundTruthObject> read_ground_truth(std::istream& in);
void write_ground_truth(std::ostream& out, std::span<const GroundTruthObject> gt);

std::vector<Trajectory> read_trajectories(std::istream& in);
void write_trajectories(std::ostream& out, std::span<const Trajectory> trajectories);

/// Unknown keys and malformed values are ErrorKind::config. The result is
/// validated.
TrackerConfig parse_config(std::istream& in);
TrackerConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const TrackerConfig& cfg);

/// JSON report with the four scores, breakdowns and fps when present.
std::string report_json(const EvalReport& report, const TrackerConfig& cfg);

/// Scenario specs are stored as JSON mirroring ScenarioSpec.
ScenarioSpec parse_scenario(std::istream& in);
std::string scenario_json(const ScenarioSpec& spec);

std::string format_number(double v);

}  // namespace mft
