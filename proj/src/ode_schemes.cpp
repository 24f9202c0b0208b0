#include "esddfd/ode_schemes.hpp"

#include <cmath>
#include <sstream>

#include "esddfd/denominators.hpp"
#include "esddfd/errors.hpp"

namespace esddfd::ode {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExactThreshold = 1e-13;

}  // namespace

std::string_view to_string(DecayScheme scheme) {
  switch (scheme) {
    case DecayScheme::ForwardEuler:
      return "ForwardEuler";
    case DecayScheme::BackwardEuler:
      return "BackwardEuler";
    case DecayScheme::MickensExact:
      return "MickensExact";
    case DecayScheme::SpectralExact:
      return "SpectralExact";
  }
  return "unknown";
}

std::optional<DecayScheme> parse_decay_scheme(std::string_view name) {
  for (DecayScheme s : kAllDecaySchemes) {
    if (to_string(s) == name) {
      return s;
    }
  }
  return std::nullopt;
}

void DecaySchemeKind::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "decay rate lambda must be positive, got " << lambda;
    throw domain_error(os.str());
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream os;
    os << "step h must be positive, got " << h;
    throw domain_error(os.str());
  }
}

double decay_step(const DecaySchemeKind& kind, double x) {
  kind.validate();
  switch (kind.scheme) {
    case DecayScheme::ForwardEuler:
      return x * (1.0 - kind.lambda * kind.h);
    case DecayScheme::BackwardEuler:
      return x / (1.0 + kind.lambda * kind.h);
    case DecayScheme::MickensExact:
      return x / (1.0 + kind.lambda * denominators::phi_nsfd(kind.h, kind.lambda));
    case DecayScheme::SpectralExact:
      return x * std::exp(-kind.lambda * kind.h);
  }
  return x;
}

double mickens_exact_step_multiplicative(const DecaySchemeKind& kind, double x) {
  kind.validate();
  return x * std::exp(-kind.lambda * kind.h);
}

Trajectory decay_solve(const DecaySchemeKind& kind, double x0, int n_steps) {
  kind.validate();
  if (n_steps < 1) {
    throw domain_error("decay_solve needs at least one step");
  }
  Trajectory traj;
  traj.scheme = kind;
  traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  double x = x0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  for (int k = 1; k <= n_steps; ++k) {
    x = decay_step(kind, x);
    traj.times.push_back(k * kind.h);
    traj.states.push_back(x);
  }
  return traj;
}

double ho_second_value(double omega, double h, double y0, double v0) {
  return y0 * std::cos(omega * h) + v0 * std::sin(omega * h) / omega;
}

Trajectory ho_exact_solve(double omega, double h, int n_steps, double y0, double y1) {
  if (!(omega > 0.0) || !(h > 0.0)) {
    throw domain_error("ho_exact_solve requires omega > 0 and h > 0");
  }
  if (omega * h / 2.0 >= kPi) {
    std::ostringstream os;
    os << "ho_exact_solve: omega h / 2 = " << omega * h / 2.0 << " must stay below pi";
    throw domain_error(os.str());
  }
  if (n_steps < 2) {
    throw domain_error("ho_exact_solve needs at least two steps");
  }
  // (y_{n+1} - 2 y_n + y_{n-1}) / psi^2 + omega^2 y_n = 0
  const double psi2 = denominators::psi2_nsfd(h, omega * omega);
  const double c = 2.0 - omega * omega * psi2;
  Trajectory traj;
  traj.scheme = HarmonicSchemeKind{omega, h};
  traj.times.resize(static_cast<std::size_t>(n_steps) + 1);
  traj.states.resize(static_cast<std::size_t>(n_steps) + 1);
  traj.states[0] = y0;
  traj.states[1] = y1;
  for (int n = 0; n <= n_steps; ++n) {
    traj.times[n] = n * h;
  }
  for (int n = 1; n < n_steps; ++n) {
    traj.states[n + 1] = c * traj.states[n] - traj.states[n - 1];
  }
  return traj;
}

std::vector<double> halving_sequence(double h0, int levels) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) {
    out.push_back(std::ldexp(h0, -i));
  }
  return out;
}

std::vector<OrderRow> order_estimate(DecayScheme scheme, double lambda, double x0, double t_final,
                                     const std::vector<double>& h_list) {
  if (h_list.size() < 4) {
    throw domain_error("order_estimate needs at least 4 step sizes");
  }
  if (!(t_final > 0.0)) {
    throw domain_error("order_estimate needs t_final > 0");
  }
  const double exact = x0 * std::exp(-lambda * t_final);
  std::vector<OrderRow> rows;
  rows.reserve(h_list.size());
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    const double h = h_list[i];
    if (i > 0 && !(h < h_list[i - 1])) {
      throw domain_error("order_estimate step sizes must be strictly decreasing");
    }
    const double steps = t_final / h;
    const double n = std::nearbyint(steps);
    if (n < 1.0 || std::fabs(steps - n) > 1e-9 * n) {
      std::ostringstream os;
      os << "order_estimate: t_final / h = " << steps << " is not an integer";
      throw degenerate_error(os.str());
    }
    const Trajectory traj = decay_solve({scheme, lambda, h}, x0, static_cast<int>(n));
    OrderRow row;
    row.h = h;
    row.error = std::fabs(traj.states.back() - exact);
    row.exact = row.error < kExactThreshold * std::fabs(x0);
    if (i > 0 && !row.exact && !rows.back().exact) {
      row.observed_p = std::log(rows.back().error / row.error) / std::log(rows.back().h / h);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace esddfd::ode
