#include "fdrt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fdrt/gauss.hpp"

namespace fdrt {
namespace {

std::vector<double> sorted_magnitudes(const std::vector<double>& y,
                                      const FdrBoundary& b) {
  if (y.size() != b.n()) {
    throw std::invalid_argument("estimators: sample size does not match boundary");
  }
  std::vector<double> mag(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) mag[i] = std::fabs(y[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  return mag;
}

double threshold_for(const FdrBoundary& b, std::size_t k_hat) {
  return b.threshold(k_hat == 0 ? 1 : k_hat);
}

}  // namespace

std::vector<double> hard_threshold(const std::vector<double>& y, double t) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::fabs(y[i]) >= t) out[i] = y[i];
  }
  return out;
}

std::vector<double> soft_threshold(const std::vector<double>& y, double t) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    double shrunk = std::fabs(y[i]) - t;
    if (shrunk > 0.0) out[i] = std::copysign(shrunk, y[i]);
  }
  return out;
}

SelectionResult select_step_up(const std::vector<double>& y, const FdrBoundary& b) {
  std::vector<double> mag = sorted_magnitudes(y, b);
  std::size_t k_hat = 0;
  for (std::size_t k = b.n(); k >= 1; --k) {
    if (mag[k - 1] >= b.threshold(k)) {
      k_hat = k;
      break;
    }
  }
  return {SelectorKind::StepUp, 0.0, k_hat, threshold_for(b, k_hat), {}};
}

SelectionResult select_step_down(const std::vector<double>& y, const FdrBoundary& b) {
  std::vector<double> mag = sorted_magnitudes(y, b);
  std::size_t k_hat = b.n();
  for (std::size_t l = 1; l <= b.n(); ++l) {
    if (mag[l - 1] < b.threshold(l)) {
      k_hat = l - 1;
      break;
    }
  }
  return {SelectorKind::StepDown, 0.0, k_hat, threshold_for(b, k_hat), {}};
}

SelectionResult select_penalized(const std::vector<double>& y, const FdrBoundary& b,
                                 double r) {
  if (!(r > 0.0) || r > 2.0) {
    throw std::domain_error("select_penalized: r must lie in (0, 2]");
  }
  std::vector<double> mag = sorted_magnitudes(y, b);
  const std::size_t n = b.n();

  // S_k assembled from a data suffix and a penalty prefix so each entry of the
  // trace is a fresh sum, not a running difference.
  std::vector<double> data_suffix(n + 1, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    data_suffix[k - 1] = data_suffix[k] + std::pow(mag[k - 1], r);
  }
  std::vector<double> trace(n + 1);
  double penalty_prefix = 0.0;
  trace[0] = data_suffix[0];
  for (std::size_t k = 1; k <= n; ++k) {
    penalty_prefix += std::pow(b.threshold(k), r);
    trace[k] = data_suffix[k] + penalty_prefix;
  }

  std::size_t k_hat = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (trace[k] < trace[k_hat]) k_hat = k;
  }
  return {SelectorKind::Penalized, r, k_hat, threshold_for(b, k_hat),
          std::move(trace)};
}

ThresholdEstimate estimate(const std::vector<double>& y, const FdrBoundary& b,
                           SelectorKind method, double r) {
  SelectionResult sel;
  switch (method) {
    case SelectorKind::StepUp:
      sel = select_step_up(y, b);
      break;
    case SelectorKind::StepDown:
      sel = select_step_down(y, b);
      break;
    case SelectorKind::Penalized:
      sel = select_penalized(y, b, r);
      break;
    default:
      throw std::invalid_argument("estimate: unknown selector");
  }
  ThresholdEstimate est{hard_threshold(y, sel.t_hat), std::move(sel), {}};
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::fabs(y[i]) >= est.selection.t_hat) est.discoveries.push_back(i);
  }
  return est;
}

double universal_threshold(std::size_t n, double sigma) {
  if (n < 2) throw std::domain_error("universal_threshold: n must be >= 2");
  if (!(sigma > 0.0)) throw std::domain_error("universal_threshold: sigma must be positive");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double bonferroni_threshold(std::size_t n, double alpha, double sigma) {
  if (n < 1) throw std::domain_error("bonferroni_threshold: n must be >= 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("bonferroni_threshold: alpha must lie in (0, 1)");
  }
  if (!(sigma > 0.0)) throw std::domain_error("bonferroni_threshold: sigma must be positive");
  return sigma * quantile(alpha / (2.0 * static_cast<double>(n)));
}

double empirical_fdr(const ThresholdEstimate& est, const std::vector<double>& truth) {
  if (truth.size() != est.mu_hat.size()) {
    throw std::invalid_argument("empirical_fdr: truth length mismatch");
  }
  const std::size_t R = est.discoveries.size();
  if (R == 0) return 0.0;
  std::size_t V = 0;
  for (std::size_t i : est.discoveries) {
    if (truth[i] == 0.0) ++V;
  }
  return static_cast<double>(V) / static_cast<double>(R);
}

}  // namespace fdrt
