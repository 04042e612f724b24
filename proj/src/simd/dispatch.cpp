#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "fairsim/simd/count_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define FAIRSIM_HAVE_AVX2_KERNELS 1
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
#define FAIRSIM_HAVE_NEON_KERNELS 1
#endif

namespace fairsim::simd {

#ifdef FAIRSIM_HAVE_AVX2_KERNELS
namespace avx2 {
std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n);
std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n);
}  // namespace avx2
#endif
#ifdef FAIRSIM_HAVE_NEON_KERNELS
namespace neon {
std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n);
std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr Kernels kScalar{Isa::scalar, &scalar::count_less, &scalar::count_less_masked};
#ifdef FAIRSIM_HAVE_AVX2_KERNELS
constexpr Kernels kAvx2{Isa::avx2, &avx2::count_less, &avx2::count_less_masked};
#endif
#ifdef FAIRSIM_HAVE_NEON_KERNELS
constexpr Kernels kNeon{Isa::neon, &neon::count_less, &neon::count_less_masked};
#endif

// -1 means automatic selection.
std::atomic<int> g_forced{-1};

const Kernels& best_available() {
#ifdef FAIRSIM_HAVE_AVX2_KERNELS
  if (isa_available(Isa::avx2)) {
    return kAvx2;
  }
#endif
#ifdef FAIRSIM_HAVE_NEON_KERNELS
  return kNeon;
#else
  return kScalar;
#endif
}

const Kernels& automatic() {
  static const Kernels& chosen = [] () -> const Kernels& {
    if (const char* env = std::getenv("FAIRSIM_SIMD")) {
      const std::string want = env;
      for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (want == to_string(isa) && isa_available(isa)) {
          return kernels_for(isa);
        }
      }
    }
    return best_available();
  }();
  return chosen;
}

}  // namespace

std::string to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#ifdef FAIRSIM_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#ifdef FAIRSIM_HAVE_NEON_KERNELS
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("SIMD variant not available: " + to_string(isa));
  }
  switch (isa) {
#ifdef FAIRSIM_HAVE_AVX2_KERNELS
    case Isa::avx2: return kAvx2;
#endif
#ifdef FAIRSIM_HAVE_NEON_KERNELS
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const Kernels& active_kernels() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) {
    return kernels_for(static_cast<Isa>(forced));
  }
  return automatic();
}

void force_isa(std::optional<Isa> isa) {
  if (isa) {
    kernels_for(*isa);
  }
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::size_t count_less(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("count_less: length mismatch");
  }
  return active_kernels().count_less(a.data(), b.data(), a.size());
}

std::size_t count_less_masked(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                              std::span<const std::int32_t> mask) {
  if (a.size() != b.size() || a.size() != mask.size()) {
    throw std::invalid_argument("count_less_masked: length mismatch");
  }
  return active_kernels().count_less_masked(a.data(), b.data(), mask.data(), a.size());
}

}  // namespace fairsim::simd
