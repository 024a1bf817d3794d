#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mft/core_types.hpp"
#include "mft/global_tracker.hpp"

namespace mft {

struct GroundTruthObject {
  std::int64_t id = 0;
  std::map<FrameId, ObjectState> states;

  friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

/// Intersection over union of two center-format boxes.
double iou(const ObjectState& a, const ObjectState& b);

struct Link {
  std::int64_t gt_id = 0;
  TrackId track_id = 0;
  double iou = 0.0;
};

/// Per-frame one-to-one links between ground truth and output boxes.
using Correspondence = std::map<FrameId, std::vector<Link>>;

/// Links ground-truth boxes to trajectory boxes frame by frame, accepting
/// pairs with IoU >= iou_threshold. greedy takes pairs by descending IoU
/// (ties: lower gt id, then lower track id); hungarian maximises the summed
/// IoU of accepted pairs.
Correspondence associate(std::span<const GroundTruthObject> gt,
                         std::span<const Trajectory> tracks, double iou_threshold,
                         AssociationMethod method = AssociationMethod::greedy);

/// Tracking time: mean over GT objects of matched frames / lifetime frames.
/// Throws ErrorKind::metric for empty ground truth.
double m1(const Correspondence& corr, std::span<const GroundTruthObject> gt);

/// ID persistence: mean over GT objects with at least one match of
/// 1 / (distinct track ids matched to it). 0 when nothing is matched.
double m2(const Correspondence& corr, std::span<const GroundTruthObject> gt);

/// ID confusion: mean over trajectories with at least one match of
/// 1 / (distinct GT ids matched to it). 0 when nothing is matched.
double m3(const Correspondence& corr, std::span<const Trajectory> tracks);

struct GtBreakdown {
  std::int64_t gt_id = 0;
  std::int64_t lifetime = 0;
  std::int64_t matched_frames = 0;
  std::int64_t distinct_tracks = 0;
};

struct TrackBreakdown {
  TrackId track_id = 0;
  std::int64_t length = 0;
  std::int64_t matched_frames = 0;
  std::int64_t distinct_gt = 0;
};

struct EvalReport {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m_bar = 0.0;  // (m1 + m2 + m3) / 3
  std::vector<GtBreakdown> gt_objects;
  std::vector<TrackBreakdown> tracks;
  std::int64_t frames = 0;       // processed frames
  std::optional<double> fps;     // tracking-only speed
};

EvalReport evaluate(std::span<const GroundTruthObject> gt, std::span<const Trajectory> tracks,
                    double iou_threshold, AssociationMethod method = AssociationMethod::greedy);

/// Frames per second of the tracking task. Throws ErrorKind::metric when
/// no time elapsed.
double throughput(std::int64_t frames, std::chrono::duration<double> elapsed);

}  // namespace mft
