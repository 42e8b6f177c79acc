#include "fdrt/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "fdrt/gauss.hpp"

namespace fdrt {

FdrBoundary::FdrBoundary(std::size_t n, double q, double noise_scale)
    : n_(n), q_(q), sigma_(noise_scale) {
  if (n == 0) throw std::domain_error("FdrBoundary: n must be positive");
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("FdrBoundary: q must lie in (0,1)");
  if (!(noise_scale > 0.0)) throw std::domain_error("FdrBoundary: noise scale must be positive");
  t_.resize(n);
  const double step = q / (2.0 * static_cast<double>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    t_[k - 1] = sigma_ * quantile(static_cast<double>(k) * step);
  }
}

double FdrBoundary::threshold(std::size_t k) const {
  if (k < 1 || k > n_) throw std::domain_error("threshold: rank out of range");
  return t_[k - 1];
}

double FdrBoundary::threshold_at(double k) const {
  if (!(k > 0.0 && k <= static_cast<double>(n_))) {
    throw std::domain_error("threshold_at: rank must lie in (0, n]");
  }
  return sigma_ * quantile(q_ * k / (2.0 * static_cast<double>(n_)));
}

double FdrBoundary::threshold_derivative(double k) const {
  const double t = threshold_at(k);
  return -sigma_ * q_ / (2.0 * static_cast<double>(n_) * phi(t / sigma_));
}

double FdrBoundary::penalty_sum(std::size_t k, double r) const {
  if (k > n_) throw std::domain_error("penalty_sum: rank out of range");
  if (!(r > 0.0 && r <= 2.0)) throw std::domain_error("penalty_sum: exponent must lie in (0, 2]");
  double s = 0.0;
  if (r == 2.0) {
    for (std::size_t l = 0; l < k; ++l) s += t_[l] * t_[l];
  } else {
    for (std::size_t l = 0; l < k; ++l) s += std::pow(t_[l], r);
  }
  return s;
}

double FdrBoundary::lambda_kn(std::size_t k) const {
  if (k < 1 || k > n_) throw std::domain_error("lambda_kn: rank out of range");
  double s = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    const double z = t_[l] / sigma_;
    s += z * z;
  }
  return s / (2.0 * static_cast<double>(k));
}

double foster_george_penalty(std::size_t n, std::size_t k) {
  if (n == 0 || k > n) throw std::domain_error("foster_george_penalty: need 0 <= k <= n, n >= 1");
  double s = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    s += 2.0 * std::log(static_cast<double>(n) / static_cast<double>(j));
  }
  return s;
}

double two_k_log_nk_penalty(std::size_t n, std::size_t k) {
  if (n == 0 || k > n) throw std::domain_error("two_k_log_nk_penalty: need 0 <= k <= n, n >= 1");
  if (k == 0) return 0.0;
  return 2.0 * static_cast<double>(k) *
         std::log(static_cast<double>(n) / static_cast<double>(k));
}

}  // namespace fdrt
