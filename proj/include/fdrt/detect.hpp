#pragma once

#include <cstddef>
#include <vector>

#include "fdrt/boundary.hpp"
#include "fdrt/spaces.hpp"

namespace fdrt {

// b1..b3 record the slow-decay assumptions tightly calibrated at the given
// instance; b4, q_prime, q_doubleprime are the working constants.
struct DetectionConstants {
  double b1;
  double b2;
  double b3;
  double b4;             // (1 - q) / 4
  double q_prime;        // (q + 1) / 2
  double q_doubleprime;  // (1 - q) / 2
};

// Reserved proof-side constants; carried for completeness, unused by numerics.
struct DetectionConstantsNote {
  double b5 = 0.0;
  double gamma = 0.0;
};

struct DiscoveryBounds {
  double k_mean;    // root of M(k) = k, 0 at the null
  double k_minus;
  double k_plus;
  double alpha_n;   // 1 / (b4 tau_eta)
  double k_n;       // effective spike count of the ball
  double kappa_n;   // diagnostic ceiling; +inf when its margin collapses
  double tau_eta;
  DetectionConstants constants;
};

// M(k; mu) = sum_l P(|mu_l + noise| >= t_k), evaluated at real rank k.
double exceedance_mean(const FdrBoundary& b, const std::vector<double>& mu,
                       double k);

// dM/dk, in closed form; equals q exactly at mu = 0.
double exceedance_mean_derivative(const FdrBoundary& b,
                                  const std::vector<double>& mu, double k);

// Smallest k in (0, n] with M(k; mu) = k.  The ratio M(k)/k decreases
// strictly, so a geometric bracket plus bisection terminates; returns 0
// at the null or when the ratio never reaches 1, n when it never drops
// below 1.
double mean_discovery_number(const FdrBoundary& b, const std::vector<double>& mu);

// k_-, k_+ and companions for a ball member.
DiscoveryBounds discovery_bounds(const FdrBoundary& b, const ParameterBall& ball,
                                 const std::vector<double>& mu);

// g(pi) = p_nu(p_k^{-1}(pi)): the exceedance probability at rank nu for the
// signal level that gives probability pi at rank k.  Convex, increasing
// from q nu / n at pi = q k / n to 1 at pi = 1.
double bi_threshold(const FdrBoundary& b, double nu, double k, double pi);

// Average exceedance probability at rank nu over the top k'_n signal ranks,
// with fractional weight on the last rank so the null value is exact.
double true_positive_rate(const FdrBoundary& b, const ParameterBall& ball,
                          const std::vector<double>& mu, double nu);

// p epsilon int_eps^1 w^{p-2} dw in closed form.
double delta_p(double epsilon, double p);

// exp(-M h(k/M) / 4) with h(x) = min(|x-1|, |x-1|^2).
double bennett_tail(double M, double k);

}  // namespace fdrt
