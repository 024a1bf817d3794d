#pragma once

#include <cstddef>

namespace mft::simd {

namespace scalar {
double histogram_rate_sum(const double* a, const double* b, std::size_t n);
double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n);
}  // namespace scalar

#if defined(MFT_HAVE_AVX2)
namespace avx2 {
double histogram_rate_sum(const double* a, const double* b, std::size_t n);
double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n);
}  // namespace avx2
#endif

#if defined(MFT_HAVE_NEON)
namespace neon {
double histogram_rate_sum(const double* a, const double* b, std::size_t n);
double max_sq_distance(double px, double py, const double* xs, const double* ys,
                       std::size_t n);
}  // namespace neon
#endif

}  // namespace mft::simd
