// Built with -mavx2 on x86-64; only reached after a runtime CPU check.
#include "fairsim/simd/count_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace fairsim::simd::avx2 {

std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  std::size_t i = 0;
  std::size_t count = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i lt = _mm256_cmpgt_epi32(vb, va);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_ps(_mm256_castsi256_ps(lt))));
  }
  return count + scalar::count_less(a + i, b + i, n - i);
}

std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n) {
  std::size_t i = 0;
  std::size_t count = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i vm = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    const __m256i lt = _mm256_and_si256(_mm256_cmpgt_epi32(vb, va), vm);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_ps(_mm256_castsi256_ps(lt))));
  }
  return count + scalar::count_less_masked(a + i, b + i, mask + i, n - i);
}

}  // namespace fairsim::simd::avx2

#endif
