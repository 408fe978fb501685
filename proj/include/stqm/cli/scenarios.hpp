#pragma once

#include <ostream>
#include <string>

#include "stqm/cli/config.hpp"

namespace stqm::cli {

// Scenario runners. CSV files are comma-separated, `.`-decimal,
// LF-terminated, with shortest round-trip numbers; `info` receives the
// per-run summary statistics.

// CSV: t,x,rho,phi_plus_re,phi_plus_im,phi_minus_re,phi_minus_im
// (one row per (t, x) pair); prints int rho dt per x to `info`.
void run_arrival(const ScenarioConfig& cfg, const std::string& out_csv, std::ostream& info);

// CSV: epsilon,chi_sq,chi_sq_convolved; summary line set
// T_mean,T_std,fwhm,fwhm_convolved,uncertainty_product to `info`.
void run_stationary(const ScenarioConfig& cfg, const std::string& out_csv, std::ostream& info);

// Density CSV: x,t,p_joint,f_marginal,g_marginal,f_reconstructed;
// event CSV: event_index,x,t; KS statistics to `info`.
void run_bayes_demo(const ScenarioConfig& cfg, const std::string& density_csv,
                    const std::string& events_csv, std::ostream& info);

// Default output path per scenario, and the derived events path.
std::string default_output(const std::string& scenario);
std::string events_path_for(const std::string& density_path);

}  // namespace stqm::cli
