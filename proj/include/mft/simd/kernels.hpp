#pragma once

// Data-parallel inner loops of the tracker. Each kernel has a scalar
// reference implementation and ISA-specific variants (AVX2 on x86-64, NEON
// on AArch64). The variant is chosen once at runtime from CPU support; the
// MFT_SIMD environment variable (scalar | avx2 | neon) forces a choice.

#include <cstddef>
#include <span>
#include <vector>

namespace mft::simd {

enum class Isa { scalar, avx2, neon };

const char* to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // Sum over k of min(a[k], b[k]) / max(a[k], b[k]); a bin where both
  // counts are zero contributes 1.
  double (*histogram_rate_sum)(const double* a, const double* b, std::size_t n);
  // Max over i of (xs[i] - px)^2 + (ys[i] - py)^2; 0 for n == 0.
  double (*max_sq_distance)(double px, double py, const double* xs, const double* ys,
                            std::size_t n);
};

/// Kernels selected for this process.
const KernelTable& active();

/// Variants that are compiled in and supported by this CPU, scalar first.
std::vector<Isa> available();

/// Kernel table for a specific variant; nullptr when unavailable.
const KernelTable* table_for(Isa isa);

inline double histogram_rate_sum(std::span<const double> a, std::span<const double> b) {
  return active().histogram_rate_sum(a.data(), b.data(), a.size());
}

inline double max_sq_distance(double px, double py, std::span<const double> xs,
                              std::span<const double> ys) {
  return active().max_sq_distance(px, py, xs.data(), ys.data(), xs.size());
}

}  // namespace mft::simd
