#include "fairsim/simd/count_kernels.hpp"

namespace fairsim::simd::scalar {

std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += a[i] < b[i] ? 1 : 0;
  }
  return count;
}

std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += (mask[i] != 0 && a[i] < b[i]) ? 1 : 0;
  }
  return count;
}

}  // namespace fairsim::simd::scalar
