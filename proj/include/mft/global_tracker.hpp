#pragma once

#include <span>
#include <vector>

#include "mft/core_types.hpp"

namespace mft {

/// Termination rule: the track ends once its last match is more than
/// min(match_count, max_waiting) frames behind the current frame. More
/// reliable tracks may wait longer, never beyond max_waiting.
bool should_terminate(const Track& track, FrameId current, std::int64_t max_waiting);

/// Noise rules over the trajectory so far, with T = track.span():
///   T < min_trajectory_frames                      (only when at_end_of_life)
///   spatial_extent < min_spatial_extent and T >= min_trajectory_frames
///   waiting/T >= max_waiting_ratio        and T >= min_trajectory_frames
bool is_noise(const Track& track, bool at_end_of_life, const TrackerConfig& cfg);

struct LifecycleReport {
  std::vector<TrackId> terminated;  // ended and kept as valid trajectories
  std::vector<TrackId> noise;       // flagged noise (at end of life or mid-life)

  bool empty() const noexcept { return terminated.empty() && noise.empty(); }
};

/// Per-frame lifecycle pass, run after the engine step for frame `current`.
/// Waiting tracks past the termination rule end their life and are checked
/// against all noise rules; live tracks at least min_trajectory_frames long
/// are checked against the spatial and waiting-ratio rules.
LifecycleReport sweep(std::span<Track> tracks, FrameId current, const TrackerConfig& cfg);

/// The sweep rules applied to a single track; outcomes go to `report`.
void sweep_track(Track& track, FrameId current, const TrackerConfig& cfg,
                 LifecycleReport& report);

/// End of stream: every remaining live track ends its life here.
LifecycleReport finalize(std::span<Track> tracks, const TrackerConfig& cfg);

struct Trajectory {
  TrackId id = 0;
  std::vector<TrackSample> samples;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Valid output trajectories, ordered by track id. Noise tracks are
/// excluded, and the held states after a track's last match are dropped
/// since the object has left by then.
std::vector<Trajectory> emit_trajectories(std::span<const Track> tracks);

}  // namespace mft
