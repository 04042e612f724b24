#include <doctest.h>

#include <stdexcept>

#include <cstdlib>
#include <random>
#include <vector>

#include "fairsim/simd/count_kernels.hpp"

using namespace fairsim::simd;

namespace {

std::vector<std::int32_t> random_ranks(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::int32_t> v(n);
  for (auto& x : v) {
    const auto r = rng() % 10;
    x = r == 0 ? kAbsentRank : r == 1 ? 0 : static_cast<std::int32_t>(rng() % 50);
  }
  return v;
}

std::size_t naive(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b,
                  const std::vector<std::int32_t>* mask) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] && (!mask || (*mask)[i] != 0)) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("scalar kernel matches a plain loop") {
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n < 70; ++n) {
    auto a = random_ranks(rng, n);
    auto b = random_ranks(rng, n);
    std::vector<std::int32_t> m(n);
    for (auto& x : m) x = rng() % 2 ? -1 : 0;
    CHECK(scalar::count_less(a.data(), b.data(), n) == naive(a, b, nullptr));
    CHECK(scalar::count_less_masked(a.data(), b.data(), m.data(), n) == naive(a, b, &m));
  }
}

TEST_CASE("every available variant equals the scalar reference") {
  std::mt19937_64 rng(2);
  int variants = 0;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) {
      CHECK_THROWS_AS(kernels_for(isa), std::invalid_argument);
      continue;
    }
    ++variants;
    const Kernels& k = kernels_for(isa);
    CHECK(k.isa == isa);
    for (int trial = 0; trial < 3000; ++trial) {
      const std::size_t n = rng() % 130;
      auto a = random_ranks(rng, n);
      auto b = random_ranks(rng, n);
      std::vector<std::int32_t> m(n);
      for (auto& x : m) x = rng() % 3 ? -1 : 0;
      // unaligned views too
      const std::size_t off = n > 0 ? rng() % (n + 1) : 0;
      CHECK(k.count_less(a.data() + off, b.data() + off, n - off) ==
            scalar::count_less(a.data() + off, b.data() + off, n - off));
      CHECK(k.count_less_masked(a.data(), b.data(), m.data(), n) ==
            scalar::count_less_masked(a.data(), b.data(), m.data(), n));
    }
  }
  MESSAGE("SIMD variants tested: " << variants);
}

TEST_CASE("extreme values compare correctly") {
  const std::vector<std::int32_t> a = {kAbsentRank, 0, kAbsentRank, -5, 0, 7, 7, kAbsentRank - 1, 1};
  const std::vector<std::int32_t> b = {kAbsentRank, kAbsentRank, 0, 0, 0, 6, 8, kAbsentRank, 1};
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) continue;
    CHECK(kernels_for(isa).count_less(a.data(), b.data(), a.size()) == 4);
  }
}

TEST_CASE("dispatch can be pinned") {
  force_isa(Isa::scalar);
  CHECK(active_kernels().isa == Isa::scalar);
  force_isa(std::nullopt);
  CHECK(isa_available(active_kernels().isa));
  const std::vector<std::int32_t> a = {1, 2}, b = {2, 1}, m = {0, -1};
  CHECK_THROWS(count_less(std::span<const std::int32_t>(a), std::span<const std::int32_t>(b.data(), 1)));
  CHECK(count_less_masked(a, b, m) == 0);
}
