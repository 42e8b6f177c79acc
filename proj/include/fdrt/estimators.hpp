#pragma once

#include <cstddef>
#include <vector>

#include "fdrt/boundary.hpp"

namespace fdrt {

enum class SelectorKind { StepUp, StepDown, Penalized };

struct SelectionResult {
  SelectorKind method;
  double r;             // penalty exponent; meaningful for Penalized
  std::size_t k_hat;    // selected model size, 0..n
  double t_hat;         // t_{k_hat}; t_1 when k_hat = 0 so nothing survives
  std::vector<double> objective_trace;  // S_0..S_n for Penalized, else empty
};

struct ThresholdEstimate {
  std::vector<double> mu_hat;
  SelectionResult selection;
  std::vector<std::size_t> discoveries;  // indices i with |y_i| >= t_hat
};

// Keeps entries with |y_i| >= t (boundary ties survive), zeroes the rest.
std::vector<double> hard_threshold(const std::vector<double>& y, double t);

// sign(y_i) * (|y_i| - t)_+ .
std::vector<double> soft_threshold(const std::vector<double>& y, double t);

// Last boundary crossing: k_hat = max{k : |y|_(k) >= t_k}, 0 when none.
SelectionResult select_step_up(const std::vector<double>& y, const FdrBoundary& b);

// First boundary failure: k_hat + 1 = min{l : |y|_(l) < t_l}; n when the
// ordered data never dips under the boundary.
SelectionResult select_step_down(const std::vector<double>& y, const FdrBoundary& b);

// Global minimizer (smallest rank on ties) of
//   S_k = sum_{l>k} |y|_(l)^r + sum_{l<=k} t_l^r.
SelectionResult select_penalized(const std::vector<double>& y, const FdrBoundary& b,
                                 double r);

// Runs the chosen selector and hard-thresholds at its t_hat.
ThresholdEstimate estimate(const std::vector<double>& y, const FdrBoundary& b,
                           SelectorKind method, double r = 2.0);

// sigma * sqrt(2 log n), n >= 2.
double universal_threshold(std::size_t n, double sigma = 1.0);

// sigma * z(alpha / 2n).
double bonferroni_threshold(std::size_t n, double alpha, double sigma = 1.0);

// False discoveries over total discoveries; 0 when nothing was selected.
double empirical_fdr(const ThresholdEstimate& est, const std::vector<double>& truth);

}  // namespace fdrt
