#include "fairsim/fairness/endorsement_probability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsim::fairness {

namespace {

double binomial_pmf(std::uint32_t n, std::uint32_t k, double x) {
  if (x == 0.0) {
    return k == 0 ? 1.0 : 0.0;
  }
  if (x == 1.0) {
    return k == n ? 1.0 : 0.0;
  }
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_choose + k * std::log(x) + (n - k) * std::log1p(-x));
}

}  // namespace

double endorsement_success_probability(std::uint32_t n_p, std::uint32_t m_p, std::uint32_t b_p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("probability x must lie in [0, 1]");
  }
  if (b_p > n_p) {
    throw std::invalid_argument("more sabotaged peers than peers");
  }
  const std::uint32_t honest = n_p - b_p;
  double y = 0.0;
  for (std::uint32_t k = m_p; k <= honest; ++k) {
    y += binomial_pmf(honest, k, x);
  }
  return std::clamp(y, 0.0, 1.0);
}

}  // namespace fairsim::fairness
