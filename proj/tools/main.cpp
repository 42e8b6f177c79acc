#include <cstddef>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdrt/harness.hpp"

namespace {

void print_summary(const fdrt::DenoiseSummary& s) {
  std::cout << "n=" << s.n << '\n'
            << "sigma_hat=" << s.sigma_hat << '\n'
            << "k_hat=" << s.k_hat << '\n'
            << "t_hat=" << s.t_hat << '\n'
            << "fdr_hat=" << s.fdr_hat << '\n';
  if (s.fdr_observed) std::cout << "fdr_observed=" << *s.fdr_observed << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FDR-controlled thresholding for sparse Gaussian means"};
  app.require_subcommand(1);

  double den_q = 0.1;
  double den_sigma = 1.0;
  bool den_mad = false;
  std::string den_truth, den_in, den_out;
  CLI::App* den = app.add_subcommand(
      "denoise", "Threshold a noisy vector read from a one-value-per-line file");
  den->add_option("--q", den_q, "FDR control rate in (0, 1)")->required();
  CLI::Option* sig_opt =
      den->add_option("--sigma", den_sigma, "known noise scale (default 1)");
  CLI::Option* mad_opt =
      den->add_flag("--mad", den_mad, "estimate the noise scale by MAD/0.6745");
  sig_opt->excludes(mad_opt);
  mad_opt->excludes(sig_opt);
  den->add_option("--truth", den_truth,
                  "true mean vector file; adds the realized false discovery "
                  "fraction to the summary");
  den->add_option("input", den_in, "input vector file")->required();
  den->add_option("output", den_out, "output vector file")->required();

  std::string sim_spec, sim_out;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run a JSON experiment spec and write a JSON result");
  sim->add_option("spec", sim_spec, "experiment spec (JSON)")->required();
  sim->add_option("result", sim_out, "result path (JSON)")->required();

  std::size_t bnd_n = 0;
  double bnd_q = 0.05;
  std::vector<std::size_t> bnd_k;
  CLI::App* bnd = app.add_subcommand(
      "boundary", "Print threshold boundary values and penalties at given ranks");
  bnd->add_option("--n", bnd_n, "problem size")->required();
  bnd->add_option("--q", bnd_q, "FDR control rate in (0, 1)")->required();
  bnd->add_option("--k", bnd_k, "ranks to report")->required()->expected(-1);

  std::string det_cfg;
  std::size_t det_n = 0;
  double det_q = 0.05;
  CLI::App* det = app.add_subcommand(
      "detect", "Solve the mean discovery fixed point for a configuration file");
  det->add_option("--config", det_cfg, "mean vector file")->required();
  det->add_option("--n", det_n, "problem size")->required();
  det->add_option("--q", det_q, "FDR control rate in (0, 1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (den->parsed()) {
      const fdrt::ScaleMode mode =
          den_mad ? fdrt::ScaleMode::MadEstimate : fdrt::ScaleMode::Given;
      print_summary(
          fdrt::denoise_command(den_in, den_out, den_q, mode, den_sigma, den_truth));
    } else if (sim->parsed()) {
      fdrt::simulate_command(sim_spec, sim_out);
    } else if (bnd->parsed()) {
      fdrt::boundary_command(bnd_n, bnd_q, bnd_k, std::cout);
    } else {
      fdrt::detect_command(det_cfg, det_n, det_q, std::cout);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
