#pragma once

#include <array>

#include "mft/core_types.hpp"

namespace mft {

/// max(0, 1 - d / (max_displacement * frame_gap)) with d the Euclidean
/// distance between box centers. Requires max_displacement > 0 and
/// frame_gap >= 1.
double distance_similarity(const ObjectState& a, const ObjectState& b,
                           double max_displacement, double frame_gap);

/// Smaller area over larger area.
double area_similarity(const ObjectState& a, const ObjectState& b);

/// Smaller width/height ratio over larger one.
double shape_similarity(const ObjectState& a, const ObjectState& b);

/// Mean over bins of min/max count; a bin empty in both histograms counts
/// as identical. Throws ErrorKind::shape when lengths differ.
double color_similarity(const ColorHistogram& a, const ColorHistogram& b);

struct LocalSimilarities {
  double distance = 0.0;
  double area = 0.0;
  double shape = 0.0;
  double color = 0.0;
};

/// Weighted mean of the local similarities, forced to 0 whenever the
/// distance similarity is 0. Throws ErrorKind::config if all weights are 0.
double global_similarity(const LocalSimilarities& ls, const std::array<double, 4>& weights);

}  // namespace mft
