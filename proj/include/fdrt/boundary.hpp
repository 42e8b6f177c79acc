#pragma once

#include <cstddef>
#include <vector>

namespace fdrt {

// Quantile threshold sequence t_k = sigma * z(q k / (2n)) for ranks k in
// (0, n], z the upper-tail normal quantile. Integer-rank thresholds are
// precomputed at construction; instances are immutable afterwards and safe
// to share across threads.
class FdrBoundary {
 public:
  FdrBoundary(std::size_t n, double q, double noise_scale = 1.0);

  std::size_t n() const { return n_; }
  double q() const { return q_; }
  double noise_scale() const { return sigma_; }

  // t_k at integer rank, 1 <= k <= n. Memoized.
  double threshold(std::size_t k) const;

  // t at real-valued rank, 0 < k <= n.
  double threshold_at(double k) const;

  // d t / d k = -sigma q / (2 n phi(t_k / sigma)), negative on (0, n].
  double threshold_derivative(double k) const;

  // sum_{l<=k} t_l^r for integer k, 0 <= k <= n, exponent r in (0, 2].
  double penalty_sum(std::size_t k, double r) const;

  // (1/2k) sum_{l<=k} z(l q / 2n)^2: the per-coordinate penalty factor.
  double lambda_kn(std::size_t k) const;

 private:
  std::size_t n_;
  double q_;
  double sigma_;
  std::vector<double> t_;
};

// sum_{j<=k} 2 log(n/j), the harmonic-penalty variant.
double foster_george_penalty(std::size_t n, std::size_t k);

// 2 k log(n/k); value 0 at k = 0.
double two_k_log_nk_penalty(std::size_t n, std::size_t k);

}  // namespace fdrt
