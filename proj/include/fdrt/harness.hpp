#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdrt {

// Experiment configurations. SimLeastFavorable places the least-sparse
// weak-ball sequence with the self-consistent radius eta = n^{1/2 - 1/p};
// Null runs the same benchmark threshold against a zero mean vector.
enum class ConfigKind { SimLeastFavorable, Null, File };

enum class MethodTag { StepUp, StepDown, Penalized, FosterGeorge, FixedTStar };

struct ExperimentSpec {
  std::size_t n = 1024;
  double p = 1.5;
  std::vector<double> q_list;
  std::vector<MethodTag> estimators = {MethodTag::StepUp, MethodTag::StepDown,
                                       MethodTag::Penalized,
                                       MethodTag::FixedTStar};
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  double loss_exponent = 2.0;
  ConfigKind config_kind = ConfigKind::SimLeastFavorable;
  std::string config_path;

  // Throws std::invalid_argument / std::domain_error on violation.
  void validate() const;
};

// One benchmark row. MSEs are per-coordinate (sum of squared errors over n).
// ratio_* is the headline ratio of mean MSEs; mean_ratio_* averages the
// per-replicate paired ratios instead, and se_* is the standard error of that
// paired stream. Replicates whose benchmark loss is exactly zero are excluded
// from the paired stream (possible only under the null configuration).
struct Table1Row {
  std::size_t n = 0;
  double q = 0.0;
  double ratio_step_up = 0.0;
  double ratio_penalized = 0.0;
  double ratio_step_down = 0.0;
  double se_step_up = 0.0;
  double se_penalized = 0.0;
  double se_step_down = 0.0;
  double mean_ratio_step_up = 0.0;
  double mean_ratio_penalized = 0.0;
  double mean_ratio_step_down = 0.0;
  double mse_step_up = 0.0;
  double mse_penalized = 0.0;
  double mse_step_down = 0.0;
  double mse_fixed = 0.0;
  double se_mse_step_up = 0.0;
  double se_mse_penalized = 0.0;
  double se_mse_step_down = 0.0;
  double se_mse_fixed = 0.0;
};

// Benchmark sweep over spec.q_list. Replicate rep draws noise from
// CounterRng(spec.seed, rep), one next_gaussian() per coordinate in index
// order, identically across all q and estimators (common random numbers).
std::vector<Table1Row> run_table1(const ExperimentSpec& spec);

// Penalized RSS selection with the 2 log(n/j) rank penalty, hard thresholded
// at the selected order statistic, against the same fixed-threshold
// benchmark. Returns the ratio of mean MSEs; same noise streams as
// run_table1 for equal (n, seed).
double run_foster_george(std::size_t n, double p, std::size_t replicates,
                         std::uint64_t seed);

enum class ScaleMode { Given, MadEstimate };

struct DenoiseSummary {
  std::size_t n = 0;
  double sigma_hat = 0.0;
  std::size_t k_hat = 0;
  double t_hat = 0.0;
  // Plug-in false discovery estimate: expected null exceedances of t_hat
  // over max(k_hat, 1), clamped to [0, 1].
  double fdr_hat = 0.0;
  // Exact false discovery proportion, present when the caller supplies the
  // true mean vector.
  std::optional<double> fdr_observed;
};

// Reads one value per line from input_path, hard thresholds at the step-up
// selection, writes the result one value per line to output_path. Scale is
// either given or the median-absolute-deviation estimate MAD/0.6745.
// truth_path, when nonempty, must hold a mean vector of equal length.
// Throws std::runtime_error on I/O failure, std::invalid_argument on empty
// or malformed data, std::domain_error on sigma <= 0.
DenoiseSummary denoise_command(const std::string& input_path,
                               const std::string& output_path, double q,
                               ScaleMode scale, double sigma_given = 1.0,
                               const std::string& truth_path = {});

// JSON-driven dispatch: reads an experiment file ("mode": "table1" or
// "mc_risk"), writes a results file echoing the request, the seed, and the
// library version.
// Reruns are byte-identical. Throws std::invalid_argument naming the
// offending field on schema violations, std::runtime_error on I/O failure.
void simulate_command(const std::string& spec_path,
                      const std::string& out_path);

// Prints a fixed-width table of t_k, the cumulative penalty at exponent 2,
// and lambda_{k,n} for each requested rank.
void boundary_command(std::size_t n, double q,
                      const std::vector<std::size_t>& k_list,
                      std::ostream& out);

// Mean-exceedance diagnostics for a configuration file: fixed point of the
// discovery map and its residual.
void detect_command(const std::string& config_path, std::size_t n, double q,
                    std::ostream& out);

}  // namespace fdrt
