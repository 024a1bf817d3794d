#include "mft/global_tracker.hpp"

#include <algorithm>

namespace mft {

bool should_terminate(const Track& track, FrameId current, std::int64_t max_waiting) {
  return track.last_match_frame < current - std::min(track.match_count, max_waiting);
}

bool is_noise(const Track& track, bool at_end_of_life, const TrackerConfig& cfg) {
  const std::int64_t length = track.span();
  if (length < cfg.min_trajectory_frames) return at_end_of_life;
  if (track.spatial_extent < cfg.min_spatial_extent) return true;
  const double ratio = static_cast<double>(track.waiting_frames) / static_cast<double>(length);
  return ratio >= cfg.max_waiting_ratio;
}

namespace {

void end_life(Track& track, const TrackerConfig& cfg, LifecycleReport& report) {
  if (is_noise(track, /*at_end_of_life=*/true, cfg)) {
    track.status = TrackStatus::noise;
    report.noise.push_back(track.id);
  } else {
    track.status = TrackStatus::terminated;
    report.terminated.push_back(track.id);
  }
}

}  // namespace

void sweep_track(Track& track, FrameId current, const TrackerConfig& cfg,
                 LifecycleReport& report) {
  if (!track.live()) return;
  if (track.status == TrackStatus::waiting &&
      should_terminate(track, current, cfg.max_waiting_frames)) {
    end_life(track, cfg, report);
  } else if (track.span() >= cfg.min_trajectory_frames &&
             is_noise(track, /*at_end_of_life=*/false, cfg)) {
    track.status = TrackStatus::noise;
    report.noise.push_back(track.id);
  }
}

LifecycleReport sweep(std::span<Track> tracks, FrameId current, const TrackerConfig& cfg) {
  LifecycleReport report;
  for (Track& track : tracks) sweep_track(track, current, cfg, report);
  return report;
}

LifecycleReport finalize(std::span<Track> tracks, const TrackerConfig& cfg) {
  LifecycleReport report;
  for (Track& track : tracks) {
    if (track.live()) end_life(track, cfg, report);
  }
  return report;
}

std::vector<Trajectory> emit_trajectories(std::span<const Track> tracks) {
  std::vector<Trajectory> out;
  for (const Track& track : tracks) {
    if (track.status == TrackStatus::noise || track.samples.empty()) continue;
    Trajectory traj{track.id, {}};
    for (const TrackSample& s : track.samples) {
      if (s.frame > track.last_match_frame) break;
      traj.samples.push_back(s);
    }
    out.push_back(std::move(traj));
  }
  std::sort(out.begin(), out.end(),
            [](const Trajectory& a, const Trajectory& b) { return a.id < b.id; });
  return out;
}

}  // namespace mft
