#include "fdrt/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fdrt/gauss.hpp"

namespace fdrt {
namespace {

void require_rank(const FdrBoundary& b, double k, const char* who) {
  if (!(k > 0.0) || k > static_cast<double>(b.n())) {
    throw std::domain_error(std::string(who) + ": rank must lie in (0, n]");
  }
}

void require_length(const FdrBoundary& b, const std::vector<double>& mu,
                    const char* who) {
  if (mu.size() != b.n()) {
    throw std::invalid_argument(std::string(who) +
                                ": vector length does not match boundary");
  }
}

// P(|mu + sigma Z| >= t) for one coordinate.
double exceed_prob(double t, double mu, double sigma) {
  return upper_tail((t - mu) / sigma) + upper_tail((t + mu) / sigma);
}

}  // namespace

double exceedance_mean(const FdrBoundary& b, const std::vector<double>& mu,
                       double k) {
  require_length(b, mu, "exceedance_mean");
  require_rank(b, k, "exceedance_mean");
  const double t = b.threshold_at(k);
  const double sigma = b.noise_scale();
  double sum = 0.0;
  for (double m : mu) sum += exceed_prob(t, m, sigma);
  return sum;
}

double exceedance_mean_derivative(const FdrBoundary& b,
                                  const std::vector<double>& mu, double k) {
  require_length(b, mu, "exceedance_mean_derivative");
  require_rank(b, k, "exceedance_mean_derivative");
  const double t = b.threshold_at(k);
  const double sigma = b.noise_scale();
  double sum = 0.0;
  for (double m : mu) sum += phi((t - m) / sigma) + phi((t + m) / sigma);
  return -b.threshold_derivative(k) / sigma * sum;
}

double mean_discovery_number(const FdrBoundary& b, const std::vector<double>& mu) {
  require_length(b, mu, "mean_discovery_number");
  if (std::all_of(mu.begin(), mu.end(), [](double v) { return v == 0.0; })) {
    return 0.0;
  }
  const double n = static_cast<double>(b.n());
  const auto ratio = [&](double k) { return exceedance_mean(b, mu, k) / k; };
  if (ratio(n) >= 1.0) return n;

  double hi = n;           // ratio < 1 here
  double lo = 0.5 * n;     // shrink until ratio >= 1
  while (ratio(lo) < 1.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-12) return 0.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DiscoveryBounds discovery_bounds(const FdrBoundary& b, const ParameterBall& ball,
                                 const std::vector<double>& mu) {
  if (!membership(ball, mu)) {
    throw std::invalid_argument("discovery_bounds: mu is not a member of the ball");
  }
  const double n = static_cast<double>(b.n());
  const double q = b.q();
  const double tau = optimal_fixed_threshold(ball);
  const double k_n = sparsity_count(ball);

  DetectionConstants c;
  c.b4 = (1.0 - q) / 4.0;
  c.q_prime = (q + 1.0) / 2.0;
  c.q_doubleprime = (1.0 - q) / 2.0;
  c.b1 = q * std::log(n);
  c.b2 = 1.0;
  const double eta_eff = (ball.kind == BallKind::L0)
                             ? ball.eta
                             : std::pow(ball.eta, ball.p);
  c.b3 = -std::log(eta_eff) / std::log(n);

  const double alpha_n = 1.0 / (c.b4 * tau);
  const double k_mean = mean_discovery_number(b, mu);
  const double guard = alpha_n * k_n;
  const double k_minus = (k_mean >= 2.0 * guard) ? k_mean - guard : 0.0;
  const double k_plus = std::max(k_mean, guard) + guard;

  double kappa_n;
  if (ball.kind == BallKind::L0) {
    kappa_n = (alpha_n + 1.0 / (1.0 - q)) * k_n;
  } else {
    const double d_n = 2.0 / tau;
    const double margin = 1.0 - q - d_n;
    kappa_n = margin > 0.0 ? (alpha_n + 1.0 / margin) * k_n
                           : std::numeric_limits<double>::infinity();
  }
  return {k_mean, k_minus, k_plus, alpha_n, k_n, kappa_n, tau, c};
}

double bi_threshold(const FdrBoundary& b, double nu, double k, double pi) {
  require_rank(b, k, "bi_threshold");
  if (!(nu > 0.0) || !(nu < k)) {
    throw std::domain_error("bi_threshold: need 0 < nu < k");
  }
  const double n = static_cast<double>(b.n());
  const double floor_pi = b.q() * k / n;
  if (pi < floor_pi - 1e-14 || pi > 1.0) {
    throw std::domain_error("bi_threshold: pi outside [qk/n, 1]");
  }
  if (pi >= 1.0 - 1e-14) return 1.0;

  const double t_k = b.threshold_at(k);
  const double sigma = b.noise_scale();
  // p_k is strictly increasing in the signal level; bracket then bisect.
  double lo = 0.0, hi = 1.0;
  while (exceed_prob(t_k, hi, sigma) < pi) {
    hi *= 2.0;
    if (hi > 1e9) break;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (exceed_prob(t_k, mid, sigma) < pi ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  return exceed_prob(b.threshold_at(nu), mu, sigma);
}

double true_positive_rate(const FdrBoundary& b, const ParameterBall& ball,
                          const std::vector<double>& mu, double nu) {
  require_length(b, mu, "true_positive_rate");
  require_rank(b, nu, "true_positive_rate");
  const double n = static_cast<double>(b.n());
  double k_prime;
  if (ball.kind == BallKind::L0) {
    k_prime = ball.eta * n;
  } else {
    const double tau = optimal_fixed_threshold(ball);
    k_prime = n * std::pow(ball.eta * tau, ball.p);
  }
  if (k_prime < 1.0) {
    throw std::domain_error("true_positive_rate: signal rank count below 1");
  }
  if (k_prime > n) {
    throw std::domain_error("true_positive_rate: signal rank count above n");
  }

  std::vector<double> mag(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mag[i] = std::fabs(mu[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());

  const double t_nu = b.threshold_at(nu);
  const double sigma = b.noise_scale();
  const auto whole = static_cast<std::size_t>(k_prime);
  double sum = 0.0;
  for (std::size_t l = 0; l < whole; ++l) sum += exceed_prob(t_nu, mag[l], sigma);
  const double frac = k_prime - static_cast<double>(whole);
  if (frac > 0.0 && whole < mag.size()) {
    sum += frac * exceed_prob(t_nu, mag[whole], sigma);
  }
  return sum / k_prime;
}

double delta_p(double epsilon, double p) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("delta_p: epsilon must lie in (0, 1)");
  }
  if (!(p > 0.0) || p > 2.0) {
    throw std::domain_error("delta_p: p must lie in (0, 2]");
  }
  if (p == 1.0) return epsilon * std::log(1.0 / epsilon);
  return p * epsilon * (1.0 - std::pow(epsilon, p - 1.0)) / (p - 1.0);
}

double bennett_tail(double M, double k) {
  if (!(M > 0.0)) throw std::domain_error("bennett_tail: M must be positive");
  if (!(k >= 0.0)) throw std::domain_error("bennett_tail: k must be nonnegative");
  if (k == M) throw std::domain_error("bennett_tail: bound degenerates at k = M");
  const double x = std::fabs(k / M - 1.0);
  const double h = std::min(x, x * x);
  return std::exp(-0.25 * M * h);
}

}  // namespace fdrt
