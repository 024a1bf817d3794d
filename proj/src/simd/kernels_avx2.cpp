#include <immintrin.h>

#include <algorithm>

#include "kernels_impl.hpp"

namespace mft::simd::avx2 {

double histogram_rate_sum(const double* a, const double* b, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d va = _mm256_loadu_pd(a + k);
    const __m256d vb = _mm256_loadu_pd(b + k);
    const __m256d hi = _mm256_max_pd(va, vb);
    const __m256d lo = _mm256_min_pd(va, vb);
    const __m256d ratio = _mm256_div_pd(lo, hi);
    // 0/0 lanes are NaN here; the mask replaces them with 1.
    const __m256d nonempty = _mm256_cmp_pd(hi, zero, _CMP_GT_OQ);
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(one, ratio, nonempty));
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

  for (; k < n; ++k) {
    const double hi = std::max(a[k], b[k]);
    const double lo = std::min(a[k], b[k]);
    sum += hi > 0.0 ? lo / hi : 1.0;
  }
  return sum;
}

double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n) {
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  __m256d best = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
    const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    best = _mm256_max_pd(best, d);
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));

  for (; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    result = std::max(result, dx * dx + dy * dy);
  }
  return result;
}

}  // namespace mft::simd::avx2
