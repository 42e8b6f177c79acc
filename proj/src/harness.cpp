#include "fdrt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fdrt/boundary.hpp"
#include "fdrt/detect.hpp"
#include "fdrt/estimators.hpp"
#include "fdrt/gauss.hpp"
#include "fdrt/risk.hpp"
#include "fdrt/rng.hpp"
#include "fdrt/spaces.hpp"

namespace fdrt {

namespace {

constexpr const char* kVersion = "1.0.0";

// Per-replicate sufficient statistics in magnitude-descending order.
// mse(k) of any keep-top-k rule is prefix_z2[k] + suffix_mu2[k]; every
// selector here thresholds at its own t_{k_hat}, which keeps exactly the
// top k_hat ranks because the boundary decreases across ranks.
struct RepWorkspace {
  std::vector<double> z, y, Y;
  std::vector<std::size_t> order;
  std::vector<double> prefix_z2, suffix_mu2, suffix_Yr;
};

void build_rep(const std::vector<double>& mu, std::uint64_t seed,
               std::uint64_t rep, double r, RepWorkspace& w) {
  const std::size_t n = mu.size();
  w.z.resize(n);
  w.y.resize(n);
  w.Y.resize(n);
  w.order.resize(n);
  w.prefix_z2.assign(n + 1, 0.0);
  w.suffix_mu2.assign(n + 1, 0.0);
  w.suffix_Yr.assign(n + 1, 0.0);

  CounterRng gen(seed, rep);
  for (std::size_t i = 0; i < n; ++i) {
    w.z[i] = gen.next_gaussian();
    w.y[i] = mu[i] + w.z[i];
  }
  std::iota(w.order.begin(), w.order.end(), std::size_t{0});
  std::sort(w.order.begin(), w.order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(w.y[a]) > std::fabs(w.y[b]);
  });
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = w.order[k];
    w.Y[k] = std::fabs(w.y[i]);
    w.prefix_z2[k + 1] = w.prefix_z2[k] + w.z[i] * w.z[i];
  }
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t i = w.order[k];
    w.suffix_mu2[k] = w.suffix_mu2[k + 1] + mu[i] * mu[i];
    const double m = w.Y[k];
    w.suffix_Yr[k] = w.suffix_Yr[k + 1] + (r == 2.0 ? m * m : std::pow(m, r));
  }
}

std::size_t scan_step_up(const std::vector<double>& Y,
                         const std::vector<double>& t) {
  for (std::size_t k = Y.size(); k-- > 0;) {
    if (Y[k] >= t[k]) return k + 1;
  }
  return 0;
}

std::size_t scan_step_down(const std::vector<double>& Y,
                           const std::vector<double>& t) {
  for (std::size_t k = 0; k < Y.size(); ++k) {
    if (Y[k] < t[k]) return k;
  }
  return Y.size();
}

std::size_t scan_penalized(const std::vector<double>& suffix_Yr,
                           const std::vector<double>& pen_prefix) {
  std::size_t best = 0;
  double best_s = suffix_Yr[0];
  for (std::size_t k = 1; k < suffix_Yr.size(); ++k) {
    const double s = suffix_Yr[k] + pen_prefix[k];
    if (s < best_s) {
      best = k;
      best_s = s;
    }
  }
  return best;
}

std::size_t count_at_least(const std::vector<double>& Y, double t) {
  auto it = std::partition_point(Y.begin(), Y.end(),
                                 [&](double v) { return v >= t; });
  return static_cast<std::size_t>(it - Y.begin());
}

struct Welford {
  double sum = 0.0, sumsq = 0.0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double se() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = (sumsq - count * m * m) / (count - 1.0);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

struct BenchmarkConfig {
  std::vector<double> mu;
  double t_star;
};

BenchmarkConfig make_config(std::size_t n, double p, ConfigKind kind) {
  if (kind == ConfigKind::File) {
    throw std::invalid_argument(
        "benchmark sweep requires a synthetic configuration");
  }
  auto cfg = sim_least_favorable(n, p);
  BenchmarkConfig out;
  out.t_star = optimal_fixed_threshold(*cfg.ball);
  out.mu = (kind == ConfigKind::Null) ? std::vector<double>(n, 0.0)
                                      : std::move(cfg.values);
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(p > 0.0) || !(p < 2.0)) {
    throw std::domain_error("p must lie in (0, 2)");
  }
  if (q_list.empty()) throw std::invalid_argument("q_list must be nonempty");
  for (double q : q_list) {
    if (!(q > 0.0) || !(q < 1.0)) {
      throw std::domain_error("q_list entries must lie in (0, 1)");
    }
  }
  if (replicates < 2) {
    throw std::invalid_argument("replicates must be at least 2");
  }
  if (!(loss_exponent > 0.0) || !(loss_exponent <= 2.0)) {
    throw std::domain_error("loss exponent must lie in (0, 2]");
  }
  if (config_kind == ConfigKind::File && config_path.empty()) {
    throw std::invalid_argument("File configuration requires a path");
  }
}

std::vector<Table1Row> run_table1(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const double r = spec.loss_exponent;
  auto config = make_config(n, spec.p, spec.config_kind);

  struct PerQ {
    double q;
    std::vector<double> t;           // t[k-1] = t_k
    std::vector<double> pen_prefix;  // pen_prefix[k] = sum_{l<=k} t_l^r
    Welford mse_up, mse_down, mse_pen, mse_fixed;
    Welford ratio_up, ratio_down, ratio_pen;
  };
  std::vector<PerQ> grid;
  grid.reserve(spec.q_list.size());
  for (double q : spec.q_list) {
    PerQ pq;
    pq.q = q;
    FdrBoundary b(n, q);
    pq.t.resize(n);
    pq.pen_prefix.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double tk = b.threshold(k);
      pq.t[k - 1] = tk;
      pq.pen_prefix[k] =
          pq.pen_prefix[k - 1] + (r == 2.0 ? tk * tk : std::pow(tk, r));
    }
    grid.push_back(std::move(pq));
  }

  RepWorkspace w;
  for (std::size_t rep = 0; rep < spec.replicates; ++rep) {
    build_rep(config.mu, spec.seed, rep, r, w);
    const std::size_t m_fixed = count_at_least(w.Y, config.t_star);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double loss_fixed =
        (w.prefix_z2[m_fixed] + w.suffix_mu2[m_fixed]) * inv_n;
    for (auto& pq : grid) {
      const std::size_t k_up = scan_step_up(w.Y, pq.t);
      const std::size_t k_down = scan_step_down(w.Y, pq.t);
      const std::size_t k_pen = scan_penalized(w.suffix_Yr, pq.pen_prefix);
      const double loss_up = (w.prefix_z2[k_up] + w.suffix_mu2[k_up]) * inv_n;
      const double loss_down =
          (w.prefix_z2[k_down] + w.suffix_mu2[k_down]) * inv_n;
      const double loss_pen =
          (w.prefix_z2[k_pen] + w.suffix_mu2[k_pen]) * inv_n;
      pq.mse_up.add(loss_up);
      pq.mse_down.add(loss_down);
      pq.mse_pen.add(loss_pen);
      pq.mse_fixed.add(loss_fixed);
      if (loss_fixed > 0.0) {
        pq.ratio_up.add(loss_up / loss_fixed);
        pq.ratio_down.add(loss_down / loss_fixed);
        pq.ratio_pen.add(loss_pen / loss_fixed);
      }
    }
  }

  std::vector<Table1Row> rows;
  rows.reserve(grid.size());
  for (const auto& pq : grid) {
    Table1Row row;
    row.n = n;
    row.q = pq.q;
    const double denom = pq.mse_fixed.mean();
    row.ratio_step_up = pq.mse_up.mean() / denom;
    row.ratio_penalized = pq.mse_pen.mean() / denom;
    row.ratio_step_down = pq.mse_down.mean() / denom;
    row.se_step_up = pq.ratio_up.se();
    row.se_penalized = pq.ratio_pen.se();
    row.se_step_down = pq.ratio_down.se();
    row.mean_ratio_step_up = pq.ratio_up.mean();
    row.mean_ratio_penalized = pq.ratio_pen.mean();
    row.mean_ratio_step_down = pq.ratio_down.mean();
    row.mse_step_up = pq.mse_up.mean();
    row.mse_penalized = pq.mse_pen.mean();
    row.mse_step_down = pq.mse_down.mean();
    row.mse_fixed = denom;
    row.se_mse_step_up = pq.mse_up.se();
    row.se_mse_penalized = pq.mse_pen.se();
    row.se_mse_step_down = pq.mse_down.se();
    row.se_mse_fixed = pq.mse_fixed.se();
    rows.push_back(row);
  }
  return rows;
}

double run_foster_george(std::size_t n, double p, std::size_t replicates,
                         std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (replicates < 2) {
    throw std::invalid_argument("replicates must be at least 2");
  }
  auto config = make_config(n, p, ConfigKind::SimLeastFavorable);

  std::vector<double> pen(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    pen[k] = pen[k - 1] + 2.0 * std::log(static_cast<double>(n) / k);
  }

  RepWorkspace w;
  double sum_fg = 0.0, sum_fixed = 0.0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    build_rep(config.mu, seed, rep, 2.0, w);
    const std::size_t k_fg = scan_penalized(w.suffix_Yr, pen);
    const std::size_t m_fixed = count_at_least(w.Y, config.t_star);
    sum_fg += w.prefix_z2[k_fg] + w.suffix_mu2[k_fg];
    sum_fixed += w.prefix_z2[m_fixed] + w.suffix_mu2[m_fixed];
  }
  return sum_fg / sum_fixed;
}

namespace {

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::invalid_argument(path + ": line " + std::to_string(line_no) +
                                    ": not a number: '" + tok + "'");
      }
      values.push_back(v);
    }
  }
  if (in.bad()) throw std::runtime_error("read failure on " + path);
  if (values.empty()) throw std::invalid_argument(path + ": empty input");
  return values;
}

double median_inplace(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + (mid - 1), v.begin() + mid);
  return 0.5 * (v[mid - 1] + hi);
}

}  // namespace

DenoiseSummary denoise_command(const std::string& input_path,
                               const std::string& output_path, double q,
                               ScaleMode scale, double sigma_given,
                               const std::string& truth_path) {
  auto x = read_values(input_path);

  double sigma = sigma_given;
  if (scale == ScaleMode::MadEstimate) {
    std::vector<double> work = x;
    const double med = median_inplace(work);
    for (double& v : work) v = std::fabs(v - med);
    sigma = median_inplace(work) / 0.6745;
  }
  if (!(sigma > 0.0)) {
    throw std::domain_error("noise scale must be positive (got " +
                            std::to_string(sigma) + ")");
  }

  FdrBoundary b(x.size(), q, sigma);
  auto est = estimate(x, b, SelectorKind::StepUp);

  DenoiseSummary s;
  s.n = x.size();
  s.sigma_hat = sigma;
  s.k_hat = est.selection.k_hat;
  s.t_hat = est.selection.t_hat;
  const double null_exceed =
      2.0 * static_cast<double>(s.n) * upper_tail(s.t_hat / sigma);
  s.fdr_hat = std::min(1.0, null_exceed / std::max<std::size_t>(s.k_hat, 1));
  if (!truth_path.empty()) {
    auto truth = read_values(truth_path);
    s.fdr_observed = empirical_fdr(est, truth);
  }

  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open " + output_path);
  out << std::setprecision(17);
  for (double v : est.mu_hat) out << v << '\n';
  if (!out) throw std::runtime_error("write failure on " + output_path);
  return s;
}

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& field,
                              const std::string& what) {
  throw std::invalid_argument("field '" + field + "': " + what);
}

const ordered_json& require(const ordered_json& j, const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) field_error(field, "missing");
  return *it;
}

double require_number(const ordered_json& j, const std::string& field) {
  const auto& v = require(j, field);
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

std::uint64_t require_count(const ordered_json& j, const std::string& field) {
  const auto& v = require(j, field);
  if (!v.is_number_unsigned()) {
    field_error(field, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> require_number_array(const ordered_json& j,
                                         const std::string& field) {
  const auto& v = require(j, field);
  if (!v.is_array() || v.empty()) field_error(field, "expected a nonempty array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) field_error(field, "expected numeric entries");
    out.push_back(e.get<double>());
  }
  return out;
}

ordered_json row_to_json(const Table1Row& row) {
  ordered_json j;
  j["n"] = row.n;
  j["q"] = row.q;
  j["ratio_step_up"] = row.ratio_step_up;
  j["ratio_penalized"] = row.ratio_penalized;
  j["ratio_step_down"] = row.ratio_step_down;
  j["se_step_up"] = row.se_step_up;
  j["se_penalized"] = row.se_penalized;
  j["se_step_down"] = row.se_step_down;
  j["mean_ratio_step_up"] = row.mean_ratio_step_up;
  j["mean_ratio_penalized"] = row.mean_ratio_penalized;
  j["mean_ratio_step_down"] = row.mean_ratio_step_down;
  j["mse_step_up"] = row.mse_step_up;
  j["mse_penalized"] = row.mse_penalized;
  j["mse_step_down"] = row.mse_step_down;
  j["mse_fixed"] = row.mse_fixed;
  j["se_mse_step_up"] = row.se_mse_step_up;
  j["se_mse_penalized"] = row.se_mse_penalized;
  j["se_mse_step_down"] = row.se_mse_step_down;
  j["se_mse_fixed"] = row.se_mse_fixed;
  return j;
}

}  // namespace

void simulate_command(const std::string& spec_path,
                      const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::runtime_error("cannot open " + spec_path);
  ordered_json spec;
  try {
    spec = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(spec_path + ": " + e.what());
  }
  if (!spec.is_object()) {
    throw std::invalid_argument(spec_path + ": top level must be an object");
  }

  const auto& mode_field = require(spec, "mode");
  if (!mode_field.is_string()) field_error("mode", "expected a string");
  const std::string mode = mode_field.get<std::string>();

  ordered_json result;
  result["tool"] = "fdrthresh";
  result["version"] = kVersion;
  result["spec"] = spec;

  if (mode == "table1") {
    ExperimentSpec es;
    es.n = require_count(spec, "n");
    es.p = require_number(spec, "p");
    es.q_list = require_number_array(spec, "q_list");
    es.replicates = require_count(spec, "replicates");
    es.seed = require_count(spec, "seed");
    if (spec.contains("loss_exponent")) {
      es.loss_exponent = require_number(spec, "loss_exponent");
    }
    if (spec.contains("config")) {
      const auto& c = require(spec, "config");
      if (!c.is_string()) field_error("config", "expected a string");
      const std::string name = c.get<std::string>();
      if (name == "sim_least_favorable") {
        es.config_kind = ConfigKind::SimLeastFavorable;
      } else if (name == "null") {
        es.config_kind = ConfigKind::Null;
      } else {
        field_error("config", "expected \"sim_least_favorable\" or \"null\"");
      }
    }
    if (es.replicates < 2) field_error("replicates", "must be at least 2");
    auto rows = run_table1(es);
    result["seed"] = es.seed;
    result["rows"] = ordered_json::array();
    for (const auto& row : rows) result["rows"].push_back(row_to_json(row));
  } else if (mode == "mc_risk") {
    Configuration cfg;
    cfg.values = require_number_array(spec, "config_values");
    cfg.label = ConfigLabel::UserFile;
    const double q = require_number(spec, "q");
    const double r = spec.contains("loss_exponent")
                         ? require_number(spec, "loss_exponent")
                         : 2.0;
    const std::uint64_t reps = require_count(spec, "replicates");
    const std::uint64_t seed = require_count(spec, "seed");
    if (reps < 2) field_error("replicates", "must be at least 2");
    const auto& rule = require(spec, "threshold_rule");
    if (!rule.is_string()) field_error("threshold_rule", "expected a string");
    const std::string name = rule.get<std::string>();
    RiskReport report;
    if (name == "fixed") {
      report = mc_risk_fixed(cfg, require_number(spec, "t"), r, reps, seed);
    } else {
      SelectorKind kind;
      if (name == "step_up") {
        kind = SelectorKind::StepUp;
      } else if (name == "step_down") {
        kind = SelectorKind::StepDown;
      } else if (name == "penalized") {
        kind = SelectorKind::Penalized;
      } else {
        field_error("threshold_rule",
                    "expected step_up, step_down, penalized, or fixed");
      }
      FdrBoundary b(cfg.values.size(), q);
      report = mc_risk(cfg, b, kind, r, reps, seed);
    }
    result["seed"] = report.seed;
    ordered_json jr;
    jr["estimator"] = report.estimator;
    jr["mean_loss"] = report.mean_loss;
    jr["std_error"] = report.std_error;
    jr["replicates"] = report.replicates;
    jr["loss_exponent"] = report.loss_exponent;
    result["risk"] = jr;
  } else {
    field_error("mode", "expected \"table1\" or \"mc_risk\"");
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << result.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failure on " + out_path);
}

void boundary_command(std::size_t n, double q,
                      const std::vector<std::size_t>& k_list,
                      std::ostream& out) {
  if (k_list.empty()) throw std::invalid_argument("no ranks requested");
  FdrBoundary b(n, q);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%10s %16s %16s %16s\n", "k", "t_k",
                "penalty2_sum", "lambda_kn");
  out << buf;
  for (std::size_t k : k_list) {
    std::snprintf(buf, sizeof(buf), "%10zu %16.10f %16.8f %16.10f\n", k,
                  b.threshold(k), b.penalty_sum(k, 2.0), b.lambda_kn(k));
    out << buf;
  }
}

void detect_command(const std::string& config_path, std::size_t n, double q,
                    std::ostream& out) {
  auto mu = read_values(config_path);
  if (mu.size() != n) {
    throw std::invalid_argument(config_path + ": expected " +
                                std::to_string(n) + " values, found " +
                                std::to_string(mu.size()));
  }
  FdrBoundary b(n, q);
  const double k_hat = mean_discovery_number(b, mu);
  double residual = 0.0;
  if (k_hat > 0.0) {
    residual = std::fabs(exceedance_mean(b, mu, k_hat) - k_hat);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "n=%zu q=%.6g k_hat=%.10g residual=%.3g\n",
                n, q, k_hat, residual);
  out << buf;
}

}  // namespace fdrt
