#include "stqm/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "stqm/arrival.hpp"
#include "stqm/bayes.hpp"
#include "stqm/cli/csv.hpp"
#include "stqm/constants.hpp"
#include "stqm/quadrature.hpp"
#include "stqm/spectrum.hpp"
#include "stqm/stationary.hpp"

namespace stqm::cli {

namespace {

PhysicalConstants constants_from(const ScenarioConfig& cfg) {
  try {
    return PhysicalConstants(cfg.hbar, cfg.mass);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Grid1D grid_from(const char* axis, double start, double stop, long count) {
  try {
    return make_grid(start, stop, count);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: bad ") + axis + " grid: " + e.what());
  }
}

Branch branch_from(const ScenarioConfig& cfg) {
  if (cfg.branch == "plus") return Branch::Plus;
  if (cfg.branch == "minus") return Branch::Minus;
  if (cfg.branch == "both") return Branch::Both;
  throw ConfigError("config: branch must be plus, minus or both (got '" + cfg.branch + "')");
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

// Unit-width Gaussian ground-state density used by the bayes-demo scenario.
Eigen::ArrayXd demo_position_density(const Grid1D& x_grid) {
  Eigen::ArrayXd g = (-0.5 * x_grid.points().square()).exp();
  g /= trapezoid(g.matrix(), x_grid.step);
  return g;
}

}  // namespace

std::string default_output(const std::string& scenario) {
  if (scenario == "arrival") return "arrival.csv";
  if (scenario == "stationary") return "stationary.csv";
  if (scenario == "bayes-demo") return "bayes_demo.csv";
  throw ConfigError("config: unknown scenario '" + scenario + "'");
}

std::string events_path_for(const std::string& density_path) {
  const auto dot = density_path.rfind('.');
  const auto slash = density_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return density_path + "_events";
  return density_path.substr(0, dot) + "_events" + density_path.substr(dot);
}

void run_arrival(const ScenarioConfig& cfg, const std::string& out_csv, std::ostream& info) {
  if (cfg.x_eval.empty()) throw ConfigError("config: x_eval must list at least one position");
  const PhysicalConstants pc = constants_from(cfg);
  const Grid1D p_grid = grid_from("p", cfg.p_start, cfg.p_stop, cfg.p_count);
  const Grid1D t_grid = grid_from("t", cfg.t_start, cfg.t_stop, cfg.t_count);
  const MomentumSpectrum spec = gaussian_spectrum(cfg.p0, cfg.sigma, p_grid, branch_from(cfg));

  std::ofstream out = open_csv(out_csv);
  out << "t,x,rho,phi_plus_re,phi_plus_im,phi_minus_re,phi_minus_im\n";
  for (double x : cfg.x_eval) {
    const PseudoSpinorField phi = mirror_solution(spec, x, t_grid, pc);
    const Eigen::ArrayXd rho = phi.density();
    for (Eigen::Index k = 0; k < t_grid.count; ++k) {
      out << format_number(t_grid.point(k)) << ',' << format_number(x) << ','
          << format_number(rho(k)) << ',' << format_number(phi.plus(k).real()) << ','
          << format_number(phi.plus(k).imag()) << ',' << format_number(phi.minus(k).real()) << ','
          << format_number(phi.minus(k).imag()) << '\n';
    }
    info << "x=" << format_number(x)
         << " int_rho_dt=" << format_number(trapezoid(rho.matrix(), t_grid.step)) << "\n";
  }
}

void run_stationary(const ScenarioConfig& cfg, const std::string& out_csv, std::ostream& info) {
  const PhysicalConstants pc = constants_from(cfg);
  const Grid1D eps_grid = grid_from("eps", cfg.eps_start, cfg.eps_stop, cfg.eps_count);
  if (!(cfg.lambda > 0.0)) throw ConfigError("config: lambda must be positive");
  if (cfg.gamma < 0.0) throw ConfigError("config: gamma must be >= 0");
  const PoissonDetection model(cfg.lambda);

  const EnergyDistribution dist = energy_distribution(cfg.e_n, model, eps_grid, pc);
  const LorentzianProfile convolved = convolve_lorentzians(dist.profile, cfg.gamma, pc);
  const Eigen::ArrayXd convolved_samples = convolved.sample(eps_grid);

  std::ofstream out = open_csv(out_csv);
  out << "epsilon,chi_sq,chi_sq_convolved\n";
  for (Eigen::Index i = 0; i < eps_grid.count; ++i)
    out << format_number(eps_grid.point(i)) << ',' << format_number(dist.samples(i)) << ','
        << format_number(convolved_samples(i)) << '\n';

  const DetectionStats stats = detection_time_stats(model);
  info << "T_mean,T_std,fwhm,fwhm_convolved,uncertainty_product\n";
  info << format_number(stats.mean) << ',' << format_number(stats.stddev) << ','
       << format_number(dist.profile.fwhm()) << ',' << format_number(convolved.fwhm()) << ','
       << format_number(stats.stddev * dist.profile.fwhm()) << "\n";
}

void run_bayes_demo(const ScenarioConfig& cfg, const std::string& density_csv,
                    const std::string& events_csv, std::ostream& info) {
  constants_from(cfg);  // validated even though the densities are unit-free
  const Grid1D x_grid = grid_from("x", cfg.x_start, cfg.x_stop, cfg.x_count);
  const Grid1D t_grid = grid_from("t", cfg.t_start, cfg.t_stop, cfg.t_count);
  if (cfg.n_events < 1) throw ConfigError("config: n_events must be at least 1");
  if (!(cfg.lambda > 0.0)) throw ConfigError("config: lambda must be positive");
  const PoissonDetection model(cfg.lambda);

  // Stationary-Poisson joint: time-independent |psi_n|^2 slices weighted by
  // the Poisson pdf (renormalized on the grid so the density contract holds).
  const Eigen::ArrayXd g0 = demo_position_density(x_grid);
  Eigen::ArrayXd f0 = detection_pdf(model, t_grid);
  f0 /= trapezoid(f0.matrix(), t_grid.step);
  Eigen::MatrixXd psi_sq(x_grid.count, t_grid.count);
  psi_sq.colwise() = g0.matrix();

  const JointDensity joint = joint_density(f0, psi_sq, x_grid, t_grid);
  const Marginals marg = marginals(joint);
  const Conditionals cond = conditionals(joint);

  Eigen::ArrayXd f_rec(t_grid.count);
  double max_diff = 0.0;
  for (Eigen::Index j = 0; j < t_grid.count; ++j) {
    f_rec(j) = cond.t_defined(j)
                   ? reconstruct_f(cond.psi_sq, cond.phi_sq, x_grid, t_grid, t_grid.point(j))
                   : 0.0;
    if (cond.t_defined(j)) max_diff = std::max(max_diff, std::abs(f_rec(j) - marg.f(j)));
  }

  const EventLog log = sample_events(joint, cfg.n_events, cfg.seed);
  const EmpiricalMarginals emp = empirical_marginals(log, t_grid, x_grid, marg.f, marg.g);

  {
    std::ofstream out = open_csv(density_csv);
    out << "x,t,p_joint,f_marginal,g_marginal,f_reconstructed\n";
    for (Eigen::Index i = 0; i < x_grid.count; ++i)
      for (Eigen::Index j = 0; j < t_grid.count; ++j)
        out << format_number(x_grid.point(i)) << ',' << format_number(t_grid.point(j)) << ','
            << format_number(joint.values(i, j)) << ',' << format_number(marg.f(j)) << ','
            << format_number(marg.g(i)) << ',' << format_number(f_rec(j)) << '\n';
  }
  {
    std::ofstream out = open_csv(events_csv);
    out << "event_index,x,t\n";
    for (std::size_t k = 0; k < log.events.size(); ++k)
      out << format_number(static_cast<long long>(k)) << ',' << format_number(log.events[k].x)
          << ',' << format_number(log.events[k].t) << '\n';
  }

  info << "ks_t=" << format_number(emp.ks_t) << " ks_x=" << format_number(emp.ks_x)
       << " f_reconstruct_max_abs_diff=" << format_number(max_diff)
       << " events_outside=" << emp.outside_count << "\n";
}

}  // namespace stqm::cli
