#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fdrt/boundary.hpp"

namespace fdrt {

enum class BallKind { L0, StrongLp, WeakLp };

struct ParameterBall {
  BallKind kind;
  double p;         // magnitude exponent in (0, 2]; ignored for L0
  double eta;       // normalized radius in (0, 1)
  std::size_t n;

  ParameterBall(BallKind kind, double p, double eta, std::size_t n);
  static ParameterBall l0(double eta, std::size_t n);
  static ParameterBall strong_lp(double p, double eta, std::size_t n);
  static ParameterBall weak_lp(double p, double eta, std::size_t n);
};

enum class ConfigLabel {
  UserFile,
  Extremal,
  TwoPointAlpha,
  WinsorizedAlpha,
  SimLeastFavorable,
  Null,
};

struct Configuration {
  std::vector<double> values;
  ConfigLabel label = ConfigLabel::UserFile;
  double alpha = 0.0;  // offset used by the alpha-labelled families
  std::optional<ParameterBall> ball;
};

struct ComplexityResult {
  double value;
  std::size_t k_opt;
  std::vector<double> mu0;  // hard thresholding of the input at t_{k_opt}
};

// Exact indicator of the ball's defining inequality.
bool membership(const ParameterBall& ball, const std::vector<double>& mu);

// Least-sparse member of a weak ball: mu_k = eta n^{1/p} k^{-1/p}.
Configuration extremal_sequence(const ParameterBall& ball);

// floor(eta n) spikes of common height t_{k_n} + alpha, remaining entries 0.
Configuration two_point_config(const FdrBoundary& b, const ParameterBall& ball,
                               double alpha);

// Extremal sequence capped at t(k_n) + alpha, k_n = n eta^p tau^{-p}.
Configuration winsorized_config(const FdrBoundary& b, const ParameterBall& ball,
                                double alpha);

// mu_k = min{ n^{1/2} k^{-1/p}, sqrt((2-p) log n) }: a plateau at the
// asymptotically optimal threshold followed by a power-law tail.  The
// inverse-scale variant replaces n^{1/2} by n^{-1/2} for comparison runs.
Configuration sim_least_favorable(std::size_t n, double p,
                                  bool inverse_scale_variant = false);

// sqrt((2-p) log n), the plateau level above.
double asymptotic_threshold(std::size_t n, double p);

// Effective spike count k_n: eta n for L0, n eta^p tau^{-p} otherwise.
double sparsity_count(const ParameterBall& ball);

// Best fixed threshold for the ball: sqrt(2 log eta^{-1}) for L0,
// sqrt(2 log eta^{-p}) otherwise.  Radius must stay below e^{-1/2}.
double optimal_fixed_threshold(const ParameterBall& ball);

// Leading-order minimax risk under r-th power loss.
double minimax_risk(const ParameterBall& ball, double r);

// min over k of sum_{l>k} |mu|_(l)^r + sum_{l<=k} t_l^r, ties to smallest k.
ComplexityResult theoretical_complexity(const FdrBoundary& b,
                                        const std::vector<double>& mu, double r);

}  // namespace fdrt
