#include "mft/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mft/simd/kernels.hpp"

namespace mft {

double distance_similarity(const ObjectState& a, const ObjectState& b,
                           double max_displacement, double frame_gap) {
  if (!(max_displacement > 0.0) || !(frame_gap >= 1.0)) {
    throw Error(ErrorKind::input,
                "distance similarity needs a positive displacement bound and a frame gap >= 1");
  }
  const double d = std::hypot(a.x - b.x, a.y - b.y);
  return std::max(0.0, 1.0 - d / (max_displacement * frame_gap));
}

double area_similarity(const ObjectState& a, const ObjectState& b) {
  const double sa = a.area();
  const double sb = b.area();
  return std::min(sa, sb) / std::max(sa, sb);
}

double shape_similarity(const ObjectState& a, const ObjectState& b) {
  const double ra = a.aspect();
  const double rb = b.aspect();
  return std::min(ra, rb) / std::max(ra, rb);
}

double color_similarity(const ColorHistogram& a, const ColorHistogram& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw Error(ErrorKind::shape, "histogram length mismatch: " + std::to_string(a.size()) +
                                      " vs " + std::to_string(b.size()));
  }
  return simd::histogram_rate_sum(a.counts(), b.counts()) / static_cast<double>(a.size());
}

double global_similarity(const LocalSimilarities& ls, const std::array<double, 4>& weights) {
  const double total = weights[0] + weights[1] + weights[2] + weights[3];
  if (!(total > 0.0)) {
    throw Error(ErrorKind::config, "global similarity needs at least one positive weight");
  }
  if (!(ls.distance > 0.0)) return 0.0;
  const double weighted = weights[0] * ls.distance + weights[1] * ls.area +
                          weights[2] * ls.shape + weights[3] * ls.color;
  return weighted / total;
}

}  // namespace mft
