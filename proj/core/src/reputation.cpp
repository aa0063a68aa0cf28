#include "tanglesim/reputation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tanglesim {

ReputationVector::ReputationVector(std::vector<double> values) : values_(std::move(values)) {
  for (const double v : values_) {
    if (!(v > 0.0)) throw std::invalid_argument("reputation values must be positive");
  }
  total_ = std::accumulate(values_.begin(), values_.end(), 0.0);
}

ReputationVector sample_reputations(std::size_t n, double exponent) {
  if (n == 0) throw std::invalid_argument("sample_reputations: n must be at least 1");
  if (exponent < 0.0) throw std::invalid_argument("sample_reputations: exponent must be >= 0");
  std::vector<double> raw(n);
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    raw[r] = std::pow(static_cast<double>(r + 1), -exponent);
    sum += raw[r];
  }
  const double scale = static_cast<double>(n) / sum;
  for (double& v : raw) v *= scale;
  return ReputationVector(std::move(raw));
}

double guaranteed_rate(const ReputationVector& rep, NodeId m, double nu) {
  return nu * rep[m] / rep.total();
}

}  // namespace tanglesim
