#pragma once

namespace fdrt {

// Standard normal density (2*pi)^(-1/2) exp(-x^2/2).
double phi(double x);

// Upper tail probability P{Z > x}. Relative accuracy ~1e-13 for |x| <= 8,
// and the asymptotic tail series keeps it accurate down to the bottom of the
// normal double range (~1e-300 near x = 37). Past x ~ 38.6 the density itself
// leaves double range and the result underflows cleanly to 0.
double upper_tail(double x);

// Lower tail P{Z <= x}.
double norm_cdf(double x);

// Upper-tail quantile: the unique x with upper_tail(x) = eta.
// Throws std::domain_error unless 0 < eta < 1.
double quantile(double eta);

// y * upper_tail(y) / phi(y), strictly increasing from 0 to 1 on y > 0.
// Throws std::domain_error for y <= 0.
double mills_ratio(double y);

// Decomposition of the tail quantile against its two-term expansion,
// z^2 = 2 log(1/eta) - log log(1/eta) - r2 and z = sqrt(2 log(1/eta)) - r1.
// Only the deep-tail regime eta <= 0.01 is covered; elsewhere the expansion
// has no content and the call is rejected.
struct QuantileDiagnostics {
  double eta;
  double z;
  double r1;  // in [0, 1.5]
  double r2;  // in [1.8, 3]
};

QuantileDiagnostics quantile_diagnostics(double eta);

}  // namespace fdrt
