#include "esddfd/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>

#include "esddfd/ode_schemes.hpp"
#include "esddfd/pde_solvers.hpp"
#include "esddfd/propagators.hpp"
#include "esddfd/specfun.hpp"

namespace esddfd::harness {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Slack on the stability bound max(1, e^{b dt}) so that exactly neutral
// modes are not reported as growing.
constexpr double kStabilitySlack = 1e-12;

int step_count(double t_final, double dt) { return static_cast<int>(std::lround(t_final / dt)); }

double growth_bound(double b, double dt) { return std::max(1.0, std::exp(b * dt)); }

ExperimentReport decay_order(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::DecayOrder);
  const auto hs = ode::halving_sequence(c.number("h0"), c.integer("levels"));
  for (const auto& name : c.strings("schemes")) {
    const auto scheme = *ode::parse_decay_scheme(name);
    for (const auto& row : ode::order_estimate(scheme, c.number("lambda"), c.number("x0"), c.number("t_final"), hs)) {
      r.add_row({name, row.h, row.error, row.observed_p ? Cell{*row.observed_p} : Cell{}, row.exact});
    }
  }
  return r;
}

ExperimentReport ho_exact(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::HoExact);
  const double omega = c.number("omega");
  const double h = c.number("h");
  const double y0 = c.number("y0");
  const double v0 = c.number("v0");
  const auto traj = ode::ho_exact_solve(omega, h, c.integer("n_steps"), y0, ode::ho_second_value(omega, h, y0, v0));
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const double t = traj.times[n];
    const double exact = y0 * std::cos(omega * t) + v0 / omega * std::sin(omega * t);
    r.add_row({static_cast<std::int64_t>(n), t, traj.states[n], exact, std::fabs(traj.states[n] - exact)});
  }
  return r;
}

// sum_m A_m f(k_m) sin(k_m x) with k_m = scale_k * (mode wave number).
template <class Factor>
std::vector<double> sine_sum(const std::vector<SineMode>& modes, const std::vector<double>& x, double scale_k,
                             Factor factor) {
  std::vector<double> u(x.size(), 0.0);
  for (const auto& m : modes) {
    const double k = m.k * scale_k;
    const double f = factor(k);
    for (std::size_t i = 0; i < x.size(); ++i) {
      u[i] += m.amplitude * f * std::sin(k * x[i]);
    }
  }
  return u;
}

double unit_factor(double) { return 1.0; }

struct PdeSetup {
  pde::PDEProblem problem;
  pde::Grid1D grid;
  std::vector<SineMode> modes;
};

PdeSetup pde_setup(const ExperimentConfig& c) {
  PdeSetup s;
  s.grid = pde::Grid1D::periodic(0.0, c.number("length"), c.integer("m_points"));
  s.modes = c.modes("ic_modes");
  s.problem.a = c.number("a");
  s.problem.b = c.number("b");
  s.problem.initial_condition = sine_sum(s.modes, s.grid.nodes(), 1.0, unit_factor);
  return s;
}

pde::SolverKind solver_kind(const std::string& method, double dt, const ExperimentConfig& c, const PdeSetup& s) {
  if (method == "EulerStd") {
    return pde::EulerStd{dt};
  }
  if (method == "Nsfd") {
    return pde::Nsfd{dt};
  }
  if (method == "EsddfdModal") {
    return pde::EsddfdModal{dt};
  }
  auto modes = pde::default_spectral_modes(s.problem, s.grid);
  if (c.has("esddfd_k")) {
    modes.k = c.number("esddfd_k");
  }
  if (c.has("esddfd_s")) {
    modes.s = c.number("esddfd_s");
  }
  return pde::EsddfdPhys{dt, modes.k, modes.s};
}

ExperimentReport pde_compare(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::PdeCompare);
  const auto s = pde_setup(c);
  const double t_final = c.number("t_final");
  const auto x = s.grid.nodes();
  for (const auto& method : c.strings("methods")) {
    for (double dt : c.numbers("dts")) {
      const auto kind = solver_kind(method, dt, c, s);
      const auto traj = pde::evolve(kind, s.problem, s.grid, step_count(t_final, dt));
      const double t_last = traj.times.back();
      const auto exact = sine_sum(s.modes, x, 1.0, [&](double k) {
        return std::exp((s.problem.b - s.problem.a * k * k) * t_last);
      });
      double err = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        err = std::max(err, std::fabs(traj.frames.back()[i] - exact[i]));
      }
      // A mode the scheme amplifies beyond the exact growth bound blows up
      // eventually, even if the run was too short to overflow.
      const bool unstable = pde::max_grid_amplification(kind, s.problem, s.grid) >
                            growth_bound(s.problem.b, dt) * (1.0 + 1e-9);
      r.add_row({method, dt, s.grid.dx, t_last, err, traj.diverged || unstable});
    }
  }
  return r;
}

ExperimentReport pde_stability(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::PdeStability);
  const auto s = pde_setup(c);
  for (const auto& method : c.strings("methods")) {
    for (double dt : c.numbers("dts")) {
      const auto kind = solver_kind(method, dt, c, s);
      const double bound = growth_bound(s.problem.b, dt) + kStabilitySlack;
      for (int j = 0; 2 * j <= s.grid.m_points; ++j) {
        const double k = pde::wave_number(s.grid, j);
        const double g = pde::amplification_factor(kind, s.problem, s.grid, k);
        r.add_row({method, k, dt, g, std::fabs(g) <= bound});
      }
    }
  }
  return r;
}

// e^{t^2} erfc(t) for t >= 0.
double scaled_erfc(double t) {
  if (t < 10.0) {
    return std::exp(t * t) * std::erfc(t);
  }
  // Asymptotic series; at t >= 10 the smallest term is below e^{-100}.
  const double inv = 1.0 / (2.0 * t * t);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 60; ++n) {
    term *= -(2.0 * n - 1.0) * inv;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) {
      break;
    }
  }
  return sum / (t * std::sqrt(kPi));
}

// Closed forms: E_1(z) = e^z, E_{1/2}(z) = e^{z^2} erfc(-z).
double ml_closed_form(double alpha, double z) {
  if (alpha == 1.0) {
    return std::exp(z);
  }
  if (z <= 0.0) {
    return scaled_erfc(-z);
  }
  return std::exp(z * z) * (2.0 - std::erfc(z));
}

ExperimentReport ml_identities(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::MlIdentities);
  for (double alpha : c.numbers("alphas")) {
    for (double z : c.numbers("zs")) {
      const double v = specfun::mittag_leffler(alpha, z);
      const double o = ml_closed_form(alpha, z);
      r.add_row({alpha, z, v, o, std::fabs(v - o)});
    }
  }
  return r;
}

ExperimentReport signature_demo(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::SignatureDemo);
  const auto kind = c.text("propagator") == "local" ? propagators::PropagatorKind::LocalExp
                                                     : propagators::PropagatorKind::NonlocalML;
  const propagators::SampleWindow window{c.number("t_min"), c.number("t_max"), c.integer("samples")};
  for (double alpha : c.numbers("alpha")) {
    const propagators::Propagator prop{kind, c.number("lambda"), alpha};
    const auto fit = propagators::signature_fit(propagators::sample_signature(prop, window));
    r.add_row({alpha, fit.alpha_hat, fit.c_hat, fit.fit_residual});
  }
  return r;
}

ExperimentReport laplace_bvp(const ExperimentConfig& c) {
  ExperimentReport r;
  r.columns = report_columns(Experiment::LaplaceBvp);
  const double a = c.number("a");
  const double b = c.number("b");
  const double s = c.number("s");
  const auto modes = c.modes("ic_modes");
  double prev_err = 0.0;
  double prev_dx = 0.0;
  for (int level = 0; level < c.integer("levels"); ++level) {
    const int intervals = c.integer("n0") << level;
    const auto grid = pde::Grid1D::dirichlet(0.0, 1.0, intervals + 1);
    const auto x = grid.nodes();
    pde::PDEProblem problem{a, b, sine_sum(modes, x, kPi, unit_factor)};
    const auto y = pde::laplace_mode_solve(problem, grid, s);
    // Y(x, s) = sum A sin(k pi x) / (a (k pi)^2 + s - b)
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double exact = 0.0;
      for (const auto& m : modes) {
        const double k = m.k * kPi;
        exact += m.amplitude * std::sin(k * x[i]) / (a * k * k + s - b);
      }
      err = std::max(err, std::fabs(y[i] - exact));
    }
    Cell p{};
    if (level > 0 && err > 0.0 && prev_err > 0.0) {
      p = std::log(prev_err / err) / std::log(prev_dx / grid.dx);
    }
    r.add_row({grid.dx, err, p});
    prev_err = err;
    prev_dx = grid.dx;
  }
  return r;
}

}  // namespace

std::vector<std::string> report_columns(Experiment experiment) {
  switch (experiment) {
    case Experiment::DecayOrder:
      return {"scheme", "h", "error", "observed_p", "exact_flag"};
    case Experiment::HoExact:
      return {"n", "t", "y", "exact", "abs_err"};
    case Experiment::PdeCompare:
      return {"method", "dt", "dx", "t_final", "max_nodal_error", "diverged"};
    case Experiment::PdeStability:
      return {"method", "k", "dt", "amplification", "stable_flag"};
    case Experiment::MlIdentities:
      return {"alpha", "z", "value", "oracle", "abs_err"};
    case Experiment::SignatureDemo:
      return {"alpha_true", "alpha_hat", "c_hat", "residual"};
    case Experiment::LaplaceBvp:
      return {"dx", "max_error", "observed_p"};
  }
  return {};
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  switch (config.experiment) {
    case Experiment::DecayOrder:
      report = decay_order(config);
      break;
    case Experiment::HoExact:
      report = ho_exact(config);
      break;
    case Experiment::PdeCompare:
      report = pde_compare(config);
      break;
    case Experiment::PdeStability:
      report = pde_stability(config);
      break;
    case Experiment::MlIdentities:
      report = ml_identities(config);
      break;
    case Experiment::SignatureDemo:
      report = signature_demo(config);
      break;
    case Experiment::LaplaceBvp:
      report = laplace_bvp(config);
      break;
  }
  report.name = config.name;
  report.metadata = {to_config_text(config), kToolVersion, utc_timestamp()};
  report.validate();
  return report;
}

std::vector<BatchResult> run_batch(const std::vector<ExperimentConfig>& configs) {
  std::vector<BatchResult> results(configs.size());
  const auto n = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    results[i].config = configs[i];
    try {
      results[i].report = run_experiment(configs[i]);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  }
  return results;
}

PlotSpec default_plot(Experiment experiment) {
  switch (experiment) {
    case Experiment::DecayOrder:
      return {"h", {"error"}, {"scheme"}, true, true, "decay: error vs step"};
    case Experiment::HoExact:
      return {"t", {"y", "exact"}, {}, false, false, "oscillator: exact scheme"};
    case Experiment::PdeCompare:
      return {"dt", {"max_nodal_error"}, {"method"}, true, true, "diffusion-reaction: error vs dt"};
    case Experiment::PdeStability:
      return {"k", {"amplification"}, {"method", "dt"}, false, false, "amplification factor per mode"};
    case Experiment::MlIdentities:
      return {"z", {"abs_err"}, {"alpha"}, false, true, "Mittag-Leffler vs closed forms"};
    case Experiment::SignatureDemo:
      return {"alpha_true", {"alpha_hat"}, {}, false, false, "signature exponent recovery"};
    case Experiment::LaplaceBvp:
      return {"dx", {"max_error"}, {}, true, true, "Laplace-mode BVP convergence"};
  }
  return {};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace esddfd::harness
