#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mft/core_types.hpp"
#include "mft/global_tracker.hpp"
#include "mft/kalman.hpp"

namespace mft {

struct MatchPair {
  TrackId track = 0;
  DetectionId detection = 0;
  double score = 0.0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct MatchResult {
  std::vector<MatchPair> pairs;               // sorted by track id
  std::vector<TrackId> unmatched_tracks;      // ascending
  std::vector<DetectionId> unmatched_detections;  // ascending
};

/// Measurement step for one frame. Each live track is compared against every
/// detection through its current Kalman estimate; D_max is half the diagonal
/// of the track's last corrected box and the frame gap is frames elapsed
/// since its last match. Pairs scoring below the match threshold are never
/// accepted. greedy_global takes pairs one-to-one by descending score (ties:
/// lower track id, then lower detection id); per_track lets each track take
/// its own best detection, possibly shared.
///
/// Throws ErrorKind::input when detections carry a frame id other than
/// `frame`.
MatchResult match_frame(std::span<const Track* const> tracks,
                        std::span<const Detection> detections, FrameId frame,
                        const TrackerConfig& cfg);

struct FrameReport {
  FrameId frame = 0;
  std::vector<TrackId> spawned;
  std::vector<MatchPair> matches;
  std::vector<TrackId> entered_waiting;  // were active, now waiting
  std::vector<TrackId> resumed;          // were waiting, matched again
  LifecycleReport lifecycle;
};

/// Single-session tracking engine. Frames must arrive in strictly increasing
/// order; skipped frame ids are processed as frames without detections.
class Engine {
 public:
  explicit Engine(TrackerConfig cfg);

  FrameReport step(FrameId frame, std::span<const Detection> detections);

  /// Ends the stream; all live tracks end their life.
  LifecycleReport finish();

  const TrackerConfig& config() const noexcept { return cfg_; }
  const std::vector<Track>& tracks() const noexcept { return tracks_; }
  std::optional<FrameId> last_frame() const noexcept { return last_frame_; }
  std::size_t live_count() const noexcept { return live_.size(); }

  /// Valid trajectories so far (see emit_trajectories).
  std::vector<Trajectory> trajectories() const;

  /// Throws std::logic_error if a live track breaks its bookkeeping
  /// invariants (one sample per frame, waiting + matched == span).
  void check_invariants() const;

 private:
  void process(FrameId frame, std::span<const Detection> detections, FrameReport& report);
  void spawn(const Detection& det, FrameId frame);

  TrackerConfig cfg_;
  KalmanNoise noise_;
  std::vector<Track> tracks_;
  std::vector<std::size_t> live_;  // indices into tracks_, ascending id
  std::optional<FrameId> last_frame_;
  TrackId next_id_ = 1;
};

}  // namespace mft
