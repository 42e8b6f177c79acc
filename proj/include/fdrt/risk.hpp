#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "fdrt/boundary.hpp"
#include "fdrt/estimators.hpp"
#include "fdrt/spaces.hpp"

namespace fdrt {

// Scalar hard-thresholding risk split into the miss term D (signal killed
// inside the threshold) and the exceedance term E (noise let through).
struct RiskDecomposition {
  double D;
  double E;
  double total;  // D + E
};

struct RiskReport {
  double mean_loss;
  double std_error;  // sample sd / sqrt(replicates)
  std::size_t replicates;
  double loss_exponent;
  std::string estimator;
  std::uint64_t seed;
};

// E|Z|^r for standard normal Z.
double absolute_moment(double r);

// D = |mu|^r P(|mu + Z| < t), E = integral of |x - mu|^r over |x| > t
// against the N(mu,1) density; E is exact for r = 2, quadrature otherwise.
RiskDecomposition hard_risk_exact(double t, double mu, double r);

// xi(t, mu) = t[phi(t-mu) + phi(t+mu)] + uppertail(t-mu) + uppertail(t+mu):
// the covariance E[Z (eta_H(mu+Z, t) - mu)], bounded by t + 1.
double covariance_kernel_xi(double t, double mu);

// psi_r(a) = E[|a+Z|^r - |a|^r - |Z|^r]; identically 0 at r = 2.
double psi_r(double a, double r);

// Cross-term kernel: the in-threshold bracket integral plus twice the
// exceedance term; satisfies xi_2(t, mu) = 2 xi(t, mu).
double xi_r(double t, double mu, double r);

// Monte Carlo risk of a selector-driven threshold estimate.  Replicate i
// uses the stream (seed, i), so the result is independent of evaluation
// order and reproducible bit for bit.
RiskReport mc_risk(const Configuration& config, const FdrBoundary& b,
                   SelectorKind method, double r, std::size_t replicates,
                   std::uint64_t seed);

// Same but hard thresholding at a fixed t.
RiskReport mc_risk_fixed(const Configuration& config, double t, double r,
                         std::size_t replicates, std::uint64_t seed);

}  // namespace fdrt
