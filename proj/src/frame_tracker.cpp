#include "mft/frame_tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mft/similarity.hpp"

namespace mft {
namespace {

struct Candidate {
  double score;
  std::size_t track;      // index into the track list
  std::size_t detection;  // index into the detection list
};

// Accepted (track index, detection index, score) triples for one frame.
std::vector<Candidate> assign(std::span<const Track* const> tracks,
                              std::span<const Detection> detections, FrameId frame,
                              const TrackerConfig& cfg) {
  for (const Detection& det : detections) {
    if (det.frame_id != frame) {
      throw Error(ErrorKind::input, "detection " + std::to_string(det.detection_id) +
                                        " has frame id " + std::to_string(det.frame_id) +
                                        ", expected " + std::to_string(frame));
    }
  }

  std::vector<Candidate> candidates;
  for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
    const Track& track = *tracks[ti];
    const double reach = diagonal_half(track.last_state());
    const double gap = static_cast<double>(std::max<FrameId>(1, frame - track.last_match_frame));
    for (std::size_t di = 0; di < detections.size(); ++di) {
      const Detection& det = detections[di];
      LocalSimilarities ls;
      ls.distance = distance_similarity(track.estimate, det.state, reach, gap);
      if (ls.distance <= 0.0) continue;  // score is 0 regardless of the rest
      ls.area = area_similarity(track.estimate, det.state);
      ls.shape = shape_similarity(track.estimate, det.state);
      ls.color = color_similarity(track.last_histogram, det.histogram);
      const double score = global_similarity(ls, cfg.feature_weights);
      if (score >= cfg.match_threshold) candidates.push_back({score, ti, di});
    }
  }

  auto track_id = [&](const Candidate& c) { return tracks[c.track]->id; };
  auto det_id = [&](const Candidate& c) { return detections[c.detection].detection_id; };
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (track_id(a) != track_id(b)) return track_id(a) < track_id(b);
    return det_id(a) < det_id(b);
  };
  std::sort(candidates.begin(), candidates.end(), better);

  std::vector<Candidate> accepted;
  std::vector<bool> track_taken(tracks.size(), false);
  std::vector<bool> det_taken(detections.size(), false);
  for (const Candidate& c : candidates) {
    if (track_taken[c.track]) continue;
    if (cfg.assignment_policy == AssignmentPolicy::greedy_global && det_taken[c.detection]) {
      continue;
    }
    track_taken[c.track] = true;
    det_taken[c.detection] = true;
    accepted.push_back(c);
  }
  return accepted;
}

}  // namespace

MatchResult match_frame(std::span<const Track* const> tracks,
                        std::span<const Detection> detections, FrameId frame,
                        const TrackerConfig& cfg) {
  const std::vector<Candidate> accepted = assign(tracks, detections, frame, cfg);

  MatchResult result;
  std::vector<bool> track_matched(tracks.size(), false);
  std::vector<bool> det_matched(detections.size(), false);
  for (const Candidate& c : accepted) {
    result.pairs.push_back({tracks[c.track]->id, detections[c.detection].detection_id, c.score});
    track_matched[c.track] = true;
    det_matched[c.detection] = true;
  }
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (!track_matched[i]) result.unmatched_tracks.push_back(tracks[i]->id);
  }
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (!det_matched[i]) result.unmatched_detections.push_back(detections[i].detection_id);
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.track < b.track; });
  std::sort(result.unmatched_tracks.begin(), result.unmatched_tracks.end());
  std::sort(result.unmatched_detections.begin(), result.unmatched_detections.end());
  return result;
}

Engine::Engine(TrackerConfig cfg) : cfg_(std::move(cfg)), noise_(KalmanNoise::from(cfg_)) {
  cfg_.validate();
}

FrameReport Engine::step(FrameId frame, std::span<const Detection> detections) {
  if (frame < 0) {
    throw Error(ErrorKind::input, "frame ids must be non-negative");
  }
  if (last_frame_ && frame <= *last_frame_) {
    throw Error(ErrorKind::sequencing, "frame " + std::to_string(frame) +
                                           " arrived after frame " +
                                           std::to_string(*last_frame_));
  }

  // Detections sorted by id; validated before any state changes.
  std::vector<Detection> sorted(detections.begin(), detections.end());
  std::sort(sorted.begin(), sorted.end(), [](const Detection& a, const Detection& b) {
    return a.detection_id < b.detection_id;
  });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Detection& det = sorted[i];
    validate(det.state);
    if (det.histogram.size() != cfg_.histogram_bins) {
      throw Error(ErrorKind::shape, "detection " + std::to_string(det.detection_id) +
                                        " has " + std::to_string(det.histogram.size()) +
                                        " histogram bins, expected " +
                                        std::to_string(cfg_.histogram_bins));
    }
    if (i > 0 && sorted[i - 1].detection_id == det.detection_id) {
      throw Error(ErrorKind::input, "duplicate detection id " +
                                        std::to_string(det.detection_id) + " in frame " +
                                        std::to_string(frame));
    }
  }

  FrameReport report;
  report.frame = frame;
  if (last_frame_) {
    for (FrameId skipped = *last_frame_ + 1; skipped < frame; ++skipped) {
      process(skipped, {}, report);
    }
  }
  process(frame, sorted, report);
  last_frame_ = frame;
  return report;
}

void Engine::process(FrameId frame, std::span<const Detection> detections,
                     FrameReport& report) {
  std::vector<const Track*> live_tracks;
  live_tracks.reserve(live_.size());
  for (std::size_t idx : live_) {
    Track& track = tracks_[idx];
    Prediction p = predict(track.filter);
    track.filter = std::move(p.filter);
    track.estimate = p.estimate;
    live_tracks.push_back(&track);
  }

  const std::vector<Candidate> accepted = assign(live_tracks, detections, frame, cfg_);
  std::vector<const Detection*> measured(live_.size(), nullptr);
  std::vector<bool> det_used(detections.size(), false);
  for (const Candidate& c : accepted) {
    measured[c.track] = &detections[c.detection];
    det_used[c.detection] = true;
    report.matches.push_back({live_tracks[c.track]->id, detections[c.detection].detection_id,
                              c.score});
  }
  std::sort(report.matches.begin(), report.matches.end(),
            [](const MatchPair& a, const MatchPair& b) {
              return a.track < b.track;
            });

  for (std::size_t i = 0; i < live_.size(); ++i) {
    Track& track = tracks_[live_[i]];
    const Detection* det = measured[i];
    std::optional<ObjectState> ms;
    if (det != nullptr) ms = det->state;

    Correction c =
        correct(track.filter, track.estimate, ms, track.last_state(), cfg_.measurement_weight);
    track.filter = std::move(c.filter);

    if (det != nullptr) {
      if (track.status == TrackStatus::waiting) report.resumed.push_back(track.id);
      track.samples.push_back({frame, c.corrected, det->detection_id});
      track.last_match_frame = frame;
      ++track.match_count;
      track.last_histogram = det->histogram;
      track.status = TrackStatus::active;
      track.record_center(c.corrected.x, c.corrected.y);
    } else {
      if (track.status == TrackStatus::active) report.entered_waiting.push_back(track.id);
      track.samples.push_back({frame, c.corrected, std::nullopt});
      ++track.waiting_frames;
      track.status = TrackStatus::waiting;
    }
  }

  for (std::size_t di = 0; di < detections.size(); ++di) {
    if (det_used[di]) continue;
    spawn(detections[di], frame);
    report.spawned.push_back(tracks_.back().id);
  }

  std::vector<std::size_t> still_live;
  still_live.reserve(live_.size());
  for (std::size_t idx : live_) {
    sweep_track(tracks_[idx], frame, cfg_, report.lifecycle);
    if (tracks_[idx].live()) still_live.push_back(idx);
  }
  live_ = std::move(still_live);
}

void Engine::spawn(const Detection& det, FrameId frame) {
  Track track;
  track.id = next_id_++;
  track.samples.push_back({frame, det.state, det.detection_id});
  track.last_histogram = det.histogram;
  track.birth_frame = frame;
  track.last_match_frame = frame;
  track.match_count = 1;
  track.status = TrackStatus::active;
  track.filter = make_kalman_state(det.state, cfg_.motion_model, noise_);
  track.estimate = det.state;
  track.record_center(det.state.x, det.state.y);
  tracks_.push_back(std::move(track));
  live_.push_back(tracks_.size() - 1);
}

LifecycleReport Engine::finish() {
  LifecycleReport report;
  for (std::size_t idx : live_) {
    Track& track = tracks_[idx];
    LifecycleReport one = finalize(std::span<Track>(&track, 1), cfg_);
    report.terminated.insert(report.terminated.end(), one.terminated.begin(),
                             one.terminated.end());
    report.noise.insert(report.noise.end(), one.noise.begin(), one.noise.end());
  }
  live_.clear();
  return report;
}

std::vector<Trajectory> Engine::trajectories() const { return emit_trajectories(tracks_); }

void Engine::check_invariants() const {
  auto fail = [](const Track& t, const std::string& what) {
    throw std::logic_error("track " + std::to_string(t.id) + ": " + what);
  };
  for (const Track& t : tracks_) {
    if (t.samples.empty()) fail(t, "no samples");
    if (t.match_count < 1) fail(t, "match count below 1");
    if (t.last_match_frame < t.birth_frame) fail(t, "last match precedes birth");
    if (t.waiting_frames + t.match_count != t.span()) fail(t, "waiting + matched != span");
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      if (t.samples[i].frame != t.birth_frame + static_cast<FrameId>(i)) {
        fail(t, "samples are not one per frame");
      }
    }
    if (t.live() && last_frame_ && t.last_frame() != *last_frame_) {
      fail(t, "live track is missing the latest frame");
    }
  }
}

}  // namespace mft
