#include "fdrt/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fdrt/estimators.hpp"

namespace fdrt {
namespace {

// Shared by membership and the extremal constructors so the extremal
// sequence saturates its own bound bit for bit.
double weak_bound(const ParameterBall& ball, std::size_t k) {
  return ball.eta * std::pow(static_cast<double>(ball.n), 1.0 / ball.p) *
         std::pow(static_cast<double>(k), -1.0 / ball.p);
}

void require_kind(const ParameterBall& ball, BallKind kind, const char* what) {
  if (ball.kind != kind) throw std::invalid_argument(what);
}

}  // namespace

ParameterBall::ParameterBall(BallKind kind, double p, double eta, std::size_t n)
    : kind(kind), p(p), eta(eta), n(n) {
  if (n < 1) throw std::domain_error("ParameterBall: n must be >= 1");
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw std::domain_error("ParameterBall: eta must lie in (0, 1)");
  }
  if (kind != BallKind::L0 && (!(p > 0.0) || p > 2.0)) {
    throw std::domain_error("ParameterBall: p must lie in (0, 2]");
  }
}

ParameterBall ParameterBall::l0(double eta, std::size_t n) {
  return ParameterBall(BallKind::L0, 0.0, eta, n);
}

ParameterBall ParameterBall::strong_lp(double p, double eta, std::size_t n) {
  return ParameterBall(BallKind::StrongLp, p, eta, n);
}

ParameterBall ParameterBall::weak_lp(double p, double eta, std::size_t n) {
  return ParameterBall(BallKind::WeakLp, p, eta, n);
}

bool membership(const ParameterBall& ball, const std::vector<double>& mu) {
  if (mu.size() != ball.n) {
    throw std::invalid_argument("membership: vector length does not match ball");
  }
  switch (ball.kind) {
    case BallKind::L0: {
      std::size_t nonzero = 0;
      for (double v : mu) {
        if (v != 0.0) ++nonzero;
      }
      return static_cast<double>(nonzero) <= ball.eta * static_cast<double>(ball.n);
    }
    case BallKind::StrongLp: {
      double mean_power = 0.0;
      for (double v : mu) mean_power += std::pow(std::fabs(v), ball.p);
      mean_power /= static_cast<double>(ball.n);
      return mean_power <= std::pow(ball.eta, ball.p);
    }
    case BallKind::WeakLp: {
      std::vector<double> mag(mu.size());
      for (std::size_t i = 0; i < mu.size(); ++i) mag[i] = std::fabs(mu[i]);
      std::sort(mag.begin(), mag.end(), std::greater<double>());
      for (std::size_t k = 1; k <= mag.size(); ++k) {
        if (mag[k - 1] > weak_bound(ball, k)) return false;
      }
      return true;
    }
  }
  throw std::logic_error("membership: unreachable");
}

Configuration extremal_sequence(const ParameterBall& ball) {
  require_kind(ball, BallKind::WeakLp, "extremal_sequence: ball must be weak");
  Configuration cfg;
  cfg.values.resize(ball.n);
  for (std::size_t k = 1; k <= ball.n; ++k) cfg.values[k - 1] = weak_bound(ball, k);
  cfg.label = ConfigLabel::Extremal;
  cfg.ball = ball;
  return cfg;
}

Configuration two_point_config(const FdrBoundary& b, const ParameterBall& ball,
                               double alpha) {
  require_kind(ball, BallKind::L0, "two_point_config: ball must be L0");
  if (ball.n != b.n()) {
    throw std::invalid_argument("two_point_config: ball and boundary disagree on n");
  }
  const auto k_n = static_cast<std::size_t>(ball.eta * static_cast<double>(ball.n));
  if (k_n < 1) {
    throw std::domain_error("two_point_config: eta n < 1 leaves only the origin");
  }
  const double height = b.threshold(k_n) + alpha;
  if (!(height > 0.0)) {
    throw std::domain_error("two_point_config: spike height must be positive");
  }
  Configuration cfg;
  cfg.values.assign(ball.n, 0.0);
  std::fill(cfg.values.begin(), cfg.values.begin() + static_cast<std::ptrdiff_t>(k_n),
            height);
  cfg.label = ConfigLabel::TwoPointAlpha;
  cfg.alpha = alpha;
  cfg.ball = ball;
  return cfg;
}

Configuration winsorized_config(const FdrBoundary& b, const ParameterBall& ball,
                                double alpha) {
  require_kind(ball, BallKind::WeakLp, "winsorized_config: ball must be weak");
  if (ball.n != b.n()) {
    throw std::invalid_argument("winsorized_config: ball and boundary disagree on n");
  }
  const double k_n = sparsity_count(ball);
  if (!(k_n > 0.0) || k_n > static_cast<double>(ball.n)) {
    throw std::domain_error("winsorized_config: spike count k_n outside (0, n]");
  }
  const double cap = b.threshold_at(k_n) + alpha;
  if (!(cap > 0.0)) {
    throw std::domain_error("winsorized_config: cap must be positive");
  }
  Configuration cfg = extremal_sequence(ball);
  for (double& v : cfg.values) v = std::min(v, cap);
  cfg.label = ConfigLabel::WinsorizedAlpha;
  cfg.alpha = alpha;
  return cfg;
}

Configuration sim_least_favorable(std::size_t n, double p,
                                  bool inverse_scale_variant) {
  if (n < 2) throw std::domain_error("sim_least_favorable: n must be >= 2");
  if (!(p > 0.0) || !(p < 2.0)) {
    throw std::domain_error("sim_least_favorable: p must lie in (0, 2)");
  }
  const double scale_exp = inverse_scale_variant ? -0.5 : 0.5;
  const double eta = std::pow(static_cast<double>(n), scale_exp - 1.0 / p);
  ParameterBall ball = ParameterBall::weak_lp(p, eta, n);
  const double plateau = asymptotic_threshold(n, p);
  Configuration cfg;
  cfg.values.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    cfg.values[k - 1] = std::min(weak_bound(ball, k), plateau);
  }
  cfg.label = ConfigLabel::SimLeastFavorable;
  cfg.ball = ball;
  return cfg;
}

double asymptotic_threshold(std::size_t n, double p) {
  if (n < 2) throw std::domain_error("asymptotic_threshold: n must be >= 2");
  if (!(p > 0.0) || !(p < 2.0)) {
    throw std::domain_error("asymptotic_threshold: p must lie in (0, 2)");
  }
  return std::sqrt((2.0 - p) * std::log(static_cast<double>(n)));
}

double sparsity_count(const ParameterBall& ball) {
  const double n = static_cast<double>(ball.n);
  if (ball.kind == BallKind::L0) return ball.eta * n;
  const double tau = optimal_fixed_threshold(ball);
  return n * std::pow(ball.eta, ball.p) * std::pow(tau, -ball.p);
}

double optimal_fixed_threshold(const ParameterBall& ball) {
  const double log_inv =
      (ball.kind == BallKind::L0 ? 1.0 : ball.p) * std::log(1.0 / ball.eta);
  // Radius above e^{-1/2} would push the threshold below 1.
  if (!(2.0 * log_inv > 1.0)) {
    throw std::domain_error("optimal_fixed_threshold: radius too large");
  }
  return std::sqrt(2.0 * log_inv);
}

double minimax_risk(const ParameterBall& ball, double r) {
  if (!(r > 0.0) || r > 2.0) {
    throw std::domain_error("minimax_risk: r must lie in (0, 2]");
  }
  const double n = static_cast<double>(ball.n);
  if (ball.kind == BallKind::L0) {
    return n * ball.eta * std::pow(2.0 * std::log(1.0 / ball.eta), 0.5 * r);
  }
  if (!(ball.p < r)) {
    throw std::domain_error("minimax_risk: requires p < r");
  }
  const double strong = n * std::pow(ball.eta, ball.p) *
                        std::pow(2.0 * ball.p * std::log(1.0 / ball.eta),
                                 0.5 * (r - ball.p));
  if (ball.kind == BallKind::StrongLp) return strong;
  return r / (r - ball.p) * strong;
}

ComplexityResult theoretical_complexity(const FdrBoundary& b,
                                        const std::vector<double>& mu, double r) {
  if (mu.size() != b.n()) {
    throw std::invalid_argument("theoretical_complexity: length does not match boundary");
  }
  if (!(r > 0.0) || r > 2.0) {
    throw std::domain_error("theoretical_complexity: r must lie in (0, 2]");
  }
  const std::size_t n = b.n();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::fabs(mu[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());

  std::vector<double> data_suffix(n + 1, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    data_suffix[k - 1] = data_suffix[k] + std::pow(mag[k - 1], r);
  }
  std::size_t k_opt = 0;
  double best = data_suffix[0];
  double penalty_prefix = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    penalty_prefix += std::pow(b.threshold(k), r);
    const double s = data_suffix[k] + penalty_prefix;
    if (s < best) {
      best = s;
      k_opt = k;
    }
  }
  ComplexityResult out;
  out.value = best;
  out.k_opt = k_opt;
  out.mu0 = (k_opt == 0) ? std::vector<double>(n, 0.0)
                         : hard_threshold(mu, b.threshold(k_opt));
  return out;
}

}  // namespace fdrt
