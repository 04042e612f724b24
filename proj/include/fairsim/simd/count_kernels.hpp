#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

// Compare-and-count kernels behind the order-fairness counters. A row holds
// one transaction's reception rank at every node of a role (kAbsentRank when
// the node never received it), so counting nodes that saw t before t' is
// counting lanes where row_t < row_t'.

namespace fairsim::simd {

inline constexpr std::int32_t kAbsentRank = INT32_MAX;

enum class Isa : std::uint8_t { scalar, avx2, neon };

std::string to_string(Isa isa);

/// Lanes i with a[i] < b[i]. Spans must have equal length.
using CountLessFn = std::size_t (*)(const std::int32_t* a, const std::int32_t* b, std::size_t n);
/// Lanes i with a[i] < b[i] and mask[i] != 0. Mask lanes are 0 or -1.
using CountLessMaskedFn = std::size_t (*)(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask,
                                          std::size_t n);

struct Kernels {
  Isa isa;
  CountLessFn count_less;
  CountLessMaskedFn count_less_masked;
};

namespace scalar {
std::size_t count_less(const std::int32_t* a, const std::int32_t* b, std::size_t n);
std::size_t count_less_masked(const std::int32_t* a, const std::int32_t* b, const std::int32_t* mask, std::size_t n);
}  // namespace scalar

/// Whether the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Kernel table for `isa`; throws std::invalid_argument if unavailable.
const Kernels& kernels_for(Isa isa);

/// Best available variant, unless overridden by force_isa() or the
/// FAIRSIM_SIMD environment variable ("scalar", "avx2", "neon").
const Kernels& active_kernels();

/// Pins dispatch to one variant (nullopt restores automatic selection).
void force_isa(std::optional<Isa> isa);

std::size_t count_less(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
std::size_t count_less_masked(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                              std::span<const std::int32_t> mask);

}  // namespace fairsim::simd
