#pragma once

#include <cstddef>

namespace tanglesim {

struct AimdParams {
  double update_period_s = 0.1;
  /// Additive step per tick as a fraction of the guaranteed rate.
  double alpha_fraction = 0.01;
  double beta = 0.7;
  std::size_t congestion_threshold = 10;
  /// Multiplicative decrease never goes below floor_fraction * guaranteed rate.
  double floor_fraction = 0.5;
};

/// Additive-increase / multiplicative-decrease issue rate driven by the length
/// of the node's own queue in its own inbox.
class RateSetter {
 public:
  RateSetter(double guaranteed_rate, AimdParams params);

  /// One update step; returns the new rate.
  double tick(std::size_t own_queue_len);

  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] double guaranteed() const noexcept { return guaranteed_; }
  [[nodiscard]] double alpha() const noexcept { return params_.alpha_fraction * guaranteed_; }
  [[nodiscard]] double floor() const noexcept { return params_.floor_fraction * guaranteed_; }
  [[nodiscard]] const AimdParams& params() const noexcept { return params_; }

 private:
  double guaranteed_;
  AimdParams params_;
  double lambda_;
};

}  // namespace tanglesim
