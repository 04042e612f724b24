#include "fairsim/simd/count_kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)
#include <arm_neon.h>

namespace fairsim::simd::neon {

std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  std::size_t i = 0;
  // Comparison lanes are all-ones (-1) when true, so subtracting accumulates.
  int32x4_t acc = vdupq_n_s32(0);
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t lt = vcltq_s32(vld1q_s32(a + i), vld1q_s32(b + i));
    acc = vsubq_s32(acc, vreinterpretq_s32_u32(lt));
  }
  return static_cast<std::size_t>(vaddvq_s32(acc)) + scalar::count_less(a + i, b + i, n - i);
}

std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n) {
  std::size_t i = 0;
  int32x4_t acc = vdupq_n_s32(0);
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t lt = vcltq_s32(vld1q_s32(a + i), vld1q_s32(b + i));
    const uint32x4_t hit = vandq_u32(lt, vreinterpretq_u32_s32(vld1q_s32(mask + i)));
    acc = vsubq_s32(acc, vreinterpretq_s32_u32(hit));
  }
  return static_cast<std::size_t>(vaddvq_s32(acc)) + scalar::count_less_masked(a + i, b + i, mask + i, n - i);
}

}  // namespace fairsim::simd::neon

#endif
