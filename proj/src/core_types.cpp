#include "mft/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mft/simd/kernels.hpp"

namespace mft {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::config: return "configuration error";
    case ErrorKind::shape: return "histogram-shape error";
    case ErrorKind::numeric: return "numeric-overflow error";
    case ErrorKind::sequencing: return "sequencing error";
    case ErrorKind::metric: return "undefined-metric error";
  }
  return "error";
}

const char* to_string(TrackStatus status) {
  switch (status) {
    case TrackStatus::active: return "active";
    case TrackStatus::waiting: return "waiting";
    case TrackStatus::terminated: return "terminated";
    case TrackStatus::noise: return "noise";
  }
  return "?";
}

const char* to_string(AssignmentPolicy policy) {
  return policy == AssignmentPolicy::greedy_global ? "greedy_global" : "per_track";
}

const char* to_string(MotionModel model) {
  return model == MotionModel::constant_velocity ? "constant_velocity" : "identity";
}

const char* to_string(AssociationMethod method) {
  return method == AssociationMethod::greedy ? "greedy" : "hungarian";
}

bool ObjectState::valid() const noexcept {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(l) &&
         std::isfinite(h) && l > 0.0 && h > 0.0;
}

void validate(const ObjectState& state) {
  if (!state.valid()) {
    throw Error(ErrorKind::input,
                "invalid object state: box must be finite with positive width and height");
  }
}

double diagonal_half(const ObjectState& state) noexcept {
  return std::hypot(state.l, state.h) / 2.0;
}

ColorHistogram::ColorHistogram(std::size_t bins) : counts_(bins, 0.0) {
  if (bins == 0 || bins > kRawHistogramBins) {
    throw Error(ErrorKind::shape, "histogram bin count must be in 1..768, got " +
                                      std::to_string(bins));
  }
}

ColorHistogram::ColorHistogram(std::vector<double> counts) : counts_(std::move(counts)) {
  if (counts_.empty() || counts_.size() > kRawHistogramBins) {
    throw Error(ErrorKind::shape, "histogram bin count must be in 1..768, got " +
                                      std::to_string(counts_.size()));
  }
  for (double c : counts_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorKind::input, "histogram counts must be finite and non-negative");
    }
  }
}

void Track::record_center(double x, double y) {
  if (center_x.empty()) {
    envelope = {x, y, x, y};
    center_x.push_back(x);
    center_y.push_back(y);
    return;
  }
  // Every stored center lies inside the envelope, so the farthest envelope
  // corner bounds the distance from (x, y) to any of them.
  const double fx = std::max(std::abs(x - envelope[0]), std::abs(x - envelope[2]));
  const double fy = std::max(std::abs(y - envelope[1]), std::abs(y - envelope[3]));
  const double bound_sq = fx * fx + fy * fy;
  if (bound_sq > spatial_extent * spatial_extent) {
    const double d_sq = simd::max_sq_distance(x, y, center_x, center_y);
    spatial_extent = std::max(spatial_extent, std::sqrt(d_sq));
  }
  if (center_x.back() != x || center_y.back() != y) {
    center_x.push_back(x);
    center_y.push_back(y);
  }
  envelope = {std::min(envelope[0], x), std::min(envelope[1], y),
              std::max(envelope[2], x), std::max(envelope[3], y)};
}

void TrackerConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::config, what); };
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };

  if (!in_unit(measurement_weight)) fail("measurement_weight must be in [0, 1]");
  bool any_positive = false;
  for (double wt : feature_weights) {
    if (!std::isfinite(wt) || wt < 0.0) fail("feature weights must be non-negative");
    any_positive = any_positive || wt > 0.0;
  }
  if (!any_positive) fail("at least one feature weight must be positive");
  if (!in_unit(match_threshold)) fail("match_threshold must be in [0, 1]");
  if (max_waiting_frames < 1) fail("max_waiting_frames must be a positive integer");
  if (min_trajectory_frames < 0) fail("min_trajectory_frames must be non-negative");
  if (!std::isfinite(min_spatial_extent) || min_spatial_extent < 0.0) {
    fail("min_spatial_extent must be non-negative");
  }
  if (!in_unit(max_waiting_ratio)) fail("max_waiting_ratio must be in [0, 1]");
  if (histogram_bins < 1 || histogram_bins > kRawHistogramBins) {
    fail("histogram_bins must be in 1..768");
  }
  if (!std::isfinite(eval_iou_threshold) || eval_iou_threshold <= 0.0 ||
      eval_iou_threshold > 1.0) {
    fail("eval_iou_threshold must be in (0, 1]");
  }
  for (double v : {process_noise_position, process_noise_velocity, measurement_noise,
                   initial_variance_position, initial_variance_velocity}) {
    if (!std::isfinite(v) || v < 0.0) fail("noise variances must be non-negative");
  }
  if (measurement_noise <= 0.0) fail("measurement_noise must be positive");
}

}  // namespace mft
