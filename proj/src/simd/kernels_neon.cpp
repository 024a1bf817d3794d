#include <arm_neon.h>

#include <algorithm>

#include "kernels_impl.hpp"

namespace mft::simd::neon {

double histogram_rate_sum(const double* a, const double* b, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = vdupq_n_f64(0.0);

  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t va = vld1q_f64(a + k);
    const float64x2_t vb = vld1q_f64(b + k);
    const float64x2_t hi = vmaxq_f64(va, vb);
    const float64x2_t lo = vminq_f64(va, vb);
    const float64x2_t ratio = vdivq_f64(lo, hi);
    const uint64x2_t nonempty = vcgtq_f64(hi, zero);
    acc = vaddq_f64(acc, vbslq_f64(nonempty, ratio, one));
  }

  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; k < n; ++k) {
    const double hi = std::max(a[k], b[k]);
    const double lo = std::min(a[k], b[k]);
    sum += hi > 0.0 ? lo / hi : 1.0;
  }
  return sum;
}

double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n) {
  const float64x2_t vx = vdupq_n_f64(px);
  const float64x2_t vy = vdupq_n_f64(py);
  float64x2_t best = vdupq_n_f64(0.0);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vy);
    const float64x2_t d = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    best = vmaxq_f64(best, d);
  }

  double result = std::max(vgetq_lane_f64(best, 0), vgetq_lane_f64(best, 1));
  for (; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    result = std::max(result, dx * dx + dy * dy);
  }
  return result;
}

}  // namespace mft::simd::neon
