#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "fairsim/core/ids.hpp"

namespace fairsim::adversary {

/// Element of the resource space the adversary's budget lives in. Components
/// are non-negative; `<=` is the component-wise partial order.
class BudgetVector {
 public:
  BudgetVector() = default;
  BudgetVector(std::initializer_list<std::int64_t> components);
  explicit BudgetVector(std::vector<std::int64_t> components);

  static BudgetVector zeros(std::size_t dims) { return BudgetVector(std::vector<std::int64_t>(dims, 0)); }
  static BudgetVector ones(std::size_t dims) { return BudgetVector(std::vector<std::int64_t>(dims, 1)); }

  std::size_t size() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<std::int64_t>& components() const { return c_; }

  bool is_zero() const;

  /// Component-wise product.
  BudgetVector hadamard(const BudgetVector& other) const;
  /// Component-wise difference; throws if any component would go negative.
  BudgetVector minus(const BudgetVector& other) const;
  /// Component-wise `<=`. Not a total order: both a <= b and b <= a may fail.
  bool fits_within(const BudgetVector& other) const;

  friend bool operator==(const BudgetVector&, const BudgetVector&) = default;

 private:
  void require_same_dims(const BudgetVector& other) const;

  std::vector<std::int64_t> c_;
};

std::string to_string(const BudgetVector& v);

/// Resource dimensions used by the default cost policy.
inline constexpr std::size_t kPeerDimension = 0;
inline constexpr std::size_t kOrdererDimension = 1;
inline constexpr std::size_t kDefaultDimensions = 2;

/// Per-node protection level. Nodes never touched sit at all-ones.
class ProtectionLevels {
 public:
  explicit ProtectionLevels(std::size_t dims = kDefaultDimensions) : dims_(dims) {}

  BudgetVector at(NodeId node) const;
  void set(NodeId node, BudgetVector level);
  std::size_t dims() const { return dims_; }
  const std::map<NodeId, BudgetVector>& overrides() const { return levels_; }

 private:
  std::size_t dims_;
  std::map<NodeId, BudgetVector> levels_;
};

}  // namespace fairsim::adversary
