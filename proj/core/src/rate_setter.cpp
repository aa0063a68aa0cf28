#include "tanglesim/rate_setter.hpp"

#include <algorithm>
#include <stdexcept>

namespace tanglesim {

RateSetter::RateSetter(double guaranteed_rate, AimdParams params)
    : guaranteed_(guaranteed_rate), params_(params), lambda_(guaranteed_rate) {
  if (guaranteed_ < 0.0) throw std::invalid_argument("RateSetter: negative guaranteed rate");
  if (!(params_.beta > 0.0 && params_.beta < 1.0)) {
    throw std::invalid_argument("RateSetter: beta must be in (0, 1)");
  }
}

double RateSetter::tick(std::size_t own_queue_len) {
  if (own_queue_len <= params_.congestion_threshold) {
    lambda_ += alpha();
  } else {
    lambda_ = std::max(floor(), params_.beta * lambda_);
  }
  return lambda_;
}

}  // namespace tanglesim
