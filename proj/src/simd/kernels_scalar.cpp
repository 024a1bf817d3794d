#include <algorithm>

#include "kernels_impl.hpp"

namespace mft::simd::scalar {

double histogram_rate_sum(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double hi = std::max(a[k], b[k]);
    const double lo = std::min(a[k], b[k]);
    sum += hi > 0.0 ? lo / hi : 1.0;
  }
  return sum;
}

double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    best = std::max(best, dx * dx + dy * dy);
  }
  return best;
}

}  // namespace mft::simd::scalar
