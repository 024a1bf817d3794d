#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mft/errors.hpp"

namespace mft {

using FrameId = std::int64_t;
using TrackId = std::int64_t;
using DetectionId = std::int64_t;

/// Box of one object at one frame: center (x, y), width l and height h, in
/// continuous pixel coordinates.
struct ObjectState {
  double x = 0.0;
  double y = 0.0;
  double l = 1.0;
  double h = 1.0;

  bool valid() const noexcept;
  double area() const noexcept { return l * h; }
  double aspect() const noexcept { return l / h; }

  friend bool operator==(const ObjectState&, const ObjectState&) = default;
};

/// Throws ErrorKind::input when the state has a non-positive or non-finite
/// component.
void validate(const ObjectState& state);

/// Half the length of the box diagonal, used as the per-frame displacement
/// bound of a tracked object.
double diagonal_half(const ObjectState& state) noexcept;

inline constexpr std::size_t kRawHistogramBins = 768;

/// Pixel-count histogram over n bins, 1 <= n <= 768. An empty (default)
/// histogram has zero bins and is only a placeholder.
class ColorHistogram {
 public:
  ColorHistogram() = default;
  explicit ColorHistogram(std::size_t bins);
  explicit ColorHistogram(std::vector<double> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  std::span<const double> counts() const noexcept { return counts_; }
  double operator[](std::size_t k) const { return counts_[k]; }

  friend bool operator==(const ColorHistogram&, const ColorHistogram&) = default;

 private:
  std::vector<double> counts_;
};

struct Detection {
  FrameId frame_id = 0;
  DetectionId detection_id = 0;
  ObjectState state;
  ColorHistogram histogram;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// All detections of one frame, sorted by detection id.
struct Frame {
  FrameId frame_id = 0;
  std::vector<Detection> detections;

  friend bool operator==(const Frame&, const Frame&) = default;
};

enum class TrackStatus { active, waiting, terminated, noise };
enum class AssignmentPolicy { greedy_global, per_track };
enum class MotionModel { constant_velocity, identity };
enum class AssociationMethod { greedy, hungarian };

const char* to_string(TrackStatus status);
const char* to_string(AssignmentPolicy policy);
const char* to_string(MotionModel model);
const char* to_string(AssociationMethod method);

/// Linear-Gaussian filter state. The first four mean components are always
/// [x, y, l, h]; the constant-velocity model appends their rates.
struct KalmanState {
  MotionModel model = MotionModel::constant_velocity;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd transition;
  Eigen::MatrixXd process_noise;
  Eigen::MatrixXd measurement_noise;
};

/// One corrected state of a track. `detection` is empty for frames spent in
/// the waiting state, where the state is held from the previous frame.
struct TrackSample {
  FrameId frame = 0;
  ObjectState state;
  std::optional<DetectionId> detection;

  bool held() const noexcept { return !detection.has_value(); }

  friend bool operator==(const TrackSample&, const TrackSample&) = default;
};

struct Track {
  TrackId id = 0;
  std::vector<TrackSample> samples;  // one per frame since birth
  ColorHistogram last_histogram;
  FrameId birth_frame = 0;
  FrameId last_match_frame = 0;      // frame of the latest matched detection
  std::int64_t match_count = 0;      // frames with a matched detection
  std::int64_t waiting_frames = 0;   // frames spent waiting
  TrackStatus status = TrackStatus::active;
  KalmanState filter;
  ObjectState estimate;              // Kalman prediction for the current frame

  // Running spatial extent: max pairwise distance between centers.
  double spatial_extent = 0.0;
  std::vector<double> center_x;
  std::vector<double> center_y;
  std::array<double, 4> envelope{};  // min x, min y, max x, max y

  bool live() const noexcept {
    return status == TrackStatus::active || status == TrackStatus::waiting;
  }
  FrameId last_frame() const noexcept { return samples.back().frame; }
  /// Trajectory time length in frames, waiting time included.
  std::int64_t span() const noexcept {
    return static_cast<std::int64_t>(samples.size());
  }
  const ObjectState& last_state() const noexcept { return samples.back().state; }

  /// Adds a matched center to the spatial-extent bookkeeping.
  void record_center(double x, double y);
};

struct TrackerConfig {
  double measurement_weight = 0.7;
  std::array<double, 4> feature_weights{1.0, 1.0, 1.0, 1.0};  // distance, area, shape, color
  double match_threshold = 0.8;
  std::int64_t max_waiting_frames = 20;
  std::int64_t min_trajectory_frames = 20;
  double min_spatial_extent = 5.0;
  double max_waiting_ratio = 0.40;
  std::size_t histogram_bins = 96;
  AssignmentPolicy assignment_policy = AssignmentPolicy::greedy_global;
  double eval_iou_threshold = 0.5;
  AssociationMethod eval_association = AssociationMethod::greedy;

  MotionModel motion_model = MotionModel::constant_velocity;
  double process_noise_position = 1.0;
  double process_noise_velocity = 0.01;
  double measurement_noise = 1.0;
  double initial_variance_position = 1.0;
  double initial_variance_velocity = 10.0;

  /// Throws ErrorKind::config naming the first offending field.
  void validate() const;

  friend bool operator==(const TrackerConfig&, const TrackerConfig&) = default;
};

}  // namespace mft
