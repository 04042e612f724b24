#include "fairsim/adversary/budget.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsim::adversary {

BudgetVector::BudgetVector(std::initializer_list<std::int64_t> components) : BudgetVector(std::vector(components)) {}

BudgetVector::BudgetVector(std::vector<std::int64_t> components) : c_(std::move(components)) {
  if (std::any_of(c_.begin(), c_.end(), [](std::int64_t x) { return x < 0; })) {
    throw std::invalid_argument("budget components must be non-negative");
  }
}

bool BudgetVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

void BudgetVector::require_same_dims(const BudgetVector& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("budget dimension mismatch: " + std::to_string(size()) + " vs " +
                                std::to_string(other.size()));
  }
}

BudgetVector BudgetVector::hadamard(const BudgetVector& other) const {
  require_same_dims(other);
  std::vector<std::int64_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = c_[i] * other.c_[i];
  }
  return BudgetVector(std::move(out));
}

BudgetVector BudgetVector::minus(const BudgetVector& other) const {
  require_same_dims(other);
  if (!other.fits_within(*this)) {
    throw std::invalid_argument("budget subtraction would go negative");
  }
  std::vector<std::int64_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = c_[i] - other.c_[i];
  }
  return BudgetVector(std::move(out));
}

bool BudgetVector::fits_within(const BudgetVector& other) const {
  require_same_dims(other);
  for (std::size_t i = 0; i < size(); ++i) {
    if (c_[i] > other.c_[i]) {
      return false;
    }
  }
  return true;
}

std::string to_string(const BudgetVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) {
      out += ",";
    }
    out += std::to_string(v[i]);
  }
  return out + ")";
}

BudgetVector ProtectionLevels::at(NodeId node) const {
  auto it = levels_.find(node);
  return it == levels_.end() ? BudgetVector::ones(dims_) : it->second;
}

void ProtectionLevels::set(NodeId node, BudgetVector level) {
  if (level.size() != dims_) {
    throw std::invalid_argument("protection level has wrong dimension");
  }
  levels_[node] = std::move(level);
}

}  // namespace fairsim::adversary
