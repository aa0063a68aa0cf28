#pragma once

#include <cstddef>
#include <vector>

#include "tanglesim/types.hpp"

namespace tanglesim {

/// Positive per-node reputations with a cached total.
class ReputationVector {
 public:
  ReputationVector() = default;
  /// Throws std::invalid_argument if any entry is not strictly positive.
  explicit ReputationVector(std::vector<double> values);

  [[nodiscard]] double operator[](NodeId id) const { return values_.at(id.index); }
  [[nodiscard]] double total() const noexcept { return total_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  double total_ = 0.0;
};

/// Zipf law over reputation ranks: node r (0-based) gets (r+1)^-exponent,
/// normalized so the entries sum to n. No sampling noise.
ReputationVector sample_reputations(std::size_t n, double exponent);

/// Fair share of a scheduler running at `nu` blocks/s: nu * rep_m / sum(rep).
double guaranteed_rate(const ReputationVector& rep, NodeId m, double nu);

}  // namespace tanglesim
