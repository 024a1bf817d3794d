#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "mft/simd/kernels.hpp"

namespace mft::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::histogram_rate_sum,
                              &scalar::max_sq_distance};
#if defined(MFT_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::histogram_rate_sum, &avx2::max_sq_distance};
#endif
#if defined(MFT_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, &neon::histogram_rate_sum, &neon::max_sq_distance};
#endif

const KernelTable& select() {
  const KernelTable* best = &kScalar;
  for (Isa isa : available()) best = table_for(isa);

  if (const char* forced = std::getenv("MFT_SIMD")) {
    const std::string_view name(forced);
    for (Isa isa : available()) {
      if (name == to_string(isa)) return *table_for(isa);
    }
  }
  return *best;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
#if defined(MFT_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) out.push_back(Isa::avx2);
#endif
#if defined(MFT_HAVE_NEON)
  out.push_back(Isa::neon);  // baseline on AArch64
#endif
  return out;
}

const KernelTable* table_for(Isa isa) {
  for (Isa supported : available()) {
    if (supported != isa) continue;
    switch (isa) {
      case Isa::scalar: return &kScalar;
#if defined(MFT_HAVE_AVX2)
      case Isa::avx2: return &kAvx2;
#endif
#if defined(MFT_HAVE_NEON)
      case Isa::neon: return &kNeon;
#endif
      default: return nullptr;
    }
  }
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace mft::simd
