#pragma once

#include <cstdint>

namespace fairsim::fairness {

/// Probability that a transaction collects at least `m_p` endorsements
/// before some deadline when `b_p` of the `n_p` peers are sabotaged and each
/// honest peer independently answers in time with probability `x`:
///
///   Y = sum_{k=m_p}^{n_p-b_p} C(n_p-b_p, k) x^k (1-x)^(n_p-b_p-k)
///
/// The sum is empty (Y = 0) when n_p - b_p < m_p. Throws
/// std::invalid_argument for x outside [0, 1] or b_p > n_p.
double endorsement_success_probability(std::uint32_t n_p, std::uint32_t m_p, std::uint32_t b_p, double x);

}  // namespace fairsim::fairness
