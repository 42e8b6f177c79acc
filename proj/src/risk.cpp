#include "fdrt/risk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fdrt/gauss.hpp"
#include "fdrt/rng.hpp"

namespace fdrt {
namespace {

void require_exponent(double r, const char* who) {
  if (!(r > 0.0) || r > 2.0) {
    throw std::domain_error(std::string(who) + ": r must lie in (0, 2]");
  }
}

template <typename F>
double simpson_rec(const F& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// Chops [a, b] into short panels before going adaptive, so the initial
// samples cannot straddle the Gaussian bump and report an empty integral.
template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const auto panels = static_cast<int>(std::ceil((b - a) / 2.0));
  const double panel_tol = tol / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fb = f(hi), fm = f(m);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_rec(f, lo, fa, hi, fb, m, fm, whole, panel_tol, 40);
  }
  return total;
}

// Integrates f weighted by phi over [a, b], splitting at the supplied
// breakpoints so integrand kinks never sit inside one panel.
template <typename F>
double integrate_pieces(const F& f, double a, double b,
                        std::vector<double> breaks, double tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi > lo) total += integrate(f, lo, hi, tol);
  }
  return total;
}

// G(a) = integral of z^r phi(z) over [a, inf) for a >= 0; extended to
// negative a through G(a) = c_r - G(-a).
double upper_moment(double a, double r) {
  if (a < 0.0) return absolute_moment(r) - upper_moment(-a, r);
  if (r == 2.0) return a * phi(a) + upper_tail(a);
  if (a > 41.0) return std::pow(a, r) * upper_tail(a);
  const auto f = [r](double z) { return std::pow(z, r) * phi(z); };
  return integrate(f, a, a + 12.0, 5e-12);
}

double loss_power(double x, double r) {
  if (r == 2.0) return x * x;
  if (r == 1.0) return std::fabs(x);
  return std::pow(std::fabs(x), r);
}

RiskReport mc_run(const Configuration& config, std::size_t replicates,
                  std::uint64_t seed, double r, std::string tag,
                  const std::function<double(const std::vector<double>&)>& loss_of) {
  if (replicates < 2) {
    throw std::domain_error("mc_risk: need at least 2 replicates");
  }
  const std::size_t n = config.values.size();
  if (n == 0) throw std::domain_error("mc_risk: empty configuration");
  std::vector<double> y(n);
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    CounterRng gen(seed, rep);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = config.values[i] + gen.next_gaussian();
    }
    const double loss = loss_of(y);
    sum += loss;
    sumsq += loss * loss;
  }
  const double reps = static_cast<double>(replicates);
  const double mean = sum / reps;
  const double var = std::max(0.0, (sumsq - reps * mean * mean) / (reps - 1.0));
  return {mean, std::sqrt(var / reps), replicates, r, std::move(tag), seed};
}

double config_loss(const std::vector<double>& mu_hat,
                   const std::vector<double>& mu, double r) {
  double loss = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    loss += loss_power(mu_hat[i] - mu[i], r);
  }
  return loss;
}

}  // namespace

double absolute_moment(double r) {
  require_exponent(r, "absolute_moment");
  if (r == 2.0) return 1.0;
  const auto f = [r](double z) { return 2.0 * std::pow(z, r) * phi(z); };
  return integrate(f, 0.0, 12.0, 5e-12);
}

RiskDecomposition hard_risk_exact(double t, double mu, double r) {
  if (!(t > 0.0)) throw std::domain_error("hard_risk_exact: t must be positive");
  require_exponent(r, "hard_risk_exact");
  const double m = std::fabs(mu);
  const double inside = upper_tail(m - t) - upper_tail(m + t);
  const double D = (m == 0.0 ? 0.0 : std::pow(m, r) * inside);
  const double E = upper_moment(t - m, r) + upper_moment(t + m, r);
  return {D, E, D + E};
}

double covariance_kernel_xi(double t, double mu) {
  if (!(t > 0.0)) throw std::domain_error("covariance_kernel_xi: t must be positive");
  const double m = std::fabs(mu);  // even in mu, bitwise
  return t * (phi(t - m) + phi(t + m)) + upper_tail(t - m) + upper_tail(t + m);
}

double psi_r(double a, double r) {
  require_exponent(r, "psi_r");
  if (a == 0.0) return 0.0;
  const auto f = [a, r](double z) {
    return (loss_power(a + z, r) - loss_power(a, r) - loss_power(z, r)) * phi(z);
  };
  const double span = 12.0 + std::fabs(a);
  return integrate_pieces(f, -span, span, {0.0, -a}, 1e-10);
}

double xi_r(double t, double mu, double r) {
  if (!(t > 0.0)) throw std::domain_error("xi_r: t must be positive");
  require_exponent(r, "xi_r");
  const double m = std::fabs(mu);
  // Centered variable w = y - mu; bracket kinks fall at w = 0 and w = -mu.
  const double mur = (m == 0.0 ? 0.0 : std::pow(m, r));
  const auto f = [m, r, mur](double w) {
    return (loss_power(w, r) - loss_power(w + m, r) + mur) * phi(w);
  };
  const double inside = integrate_pieces(f, -t - m, t - m, {0.0, -m}, 1e-10);
  const double outside = 2.0 * (upper_moment(t - m, r) + upper_moment(t + m, r));
  return inside + outside;
}

RiskReport mc_risk(const Configuration& config, const FdrBoundary& b,
                   SelectorKind method, double r, std::size_t replicates,
                   std::uint64_t seed) {
  require_exponent(r, "mc_risk");
  if (config.values.size() != b.n()) {
    throw std::invalid_argument("mc_risk: configuration length does not match boundary");
  }
  const char* tag = method == SelectorKind::StepUp     ? "step_up"
                    : method == SelectorKind::StepDown ? "step_down"
                                                       : "penalized";
  return mc_run(config, replicates, seed, r, tag,
                [&](const std::vector<double>& y) {
                  auto est = estimate(y, b, method, r);
                  return config_loss(est.mu_hat, config.values, r);
                });
}

RiskReport mc_risk_fixed(const Configuration& config, double t, double r,
                         std::size_t replicates, std::uint64_t seed) {
  if (!(t > 0.0)) throw std::domain_error("mc_risk_fixed: t must be positive");
  require_exponent(r, "mc_risk_fixed");
  return mc_run(config, replicates, seed, r, "fixed",
                [&](const std::vector<double>& y) {
                  double loss = 0.0;
                  for (std::size_t i = 0; i < y.size(); ++i) {
                    const double kept = std::fabs(y[i]) >= t ? y[i] : 0.0;
                    loss += loss_power(kept - config.values[i], r);
                  }
                  return loss;
                });
}

}  // namespace fdrt
