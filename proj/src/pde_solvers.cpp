#include "esddfd/pde_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "esddfd/denominators.hpp"
#include "esddfd/errors.hpp"

namespace esddfd::pde {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxModalPoints = 4096;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_frame(const Grid1D& grid, std::span<const double> frame) {
  if (frame.size() != static_cast<std::size_t>(grid.m_points)) {
    std::ostringstream os;
    os << "frame has " << frame.size() << " values but the grid has " << grid.m_points << " points";
    throw domain_error(os.str());
  }
}

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "time step must be positive, got " << dt;
    throw domain_error(os.str());
  }
}

void require_periodic(const Grid1D& grid, const char* who) {
  if (!grid.is_periodic()) {
    std::ostringstream os;
    os << who << " requires a periodic grid";
    throw domain_error(os.str());
  }
}

std::vector<double> apply_stencil(const Grid1D& grid, std::span<const double> frame, const kernels::ExplicitStencil& c,
                                  Exec exec) {
  std::vector<double> out(frame.size());
  kernels::explicit_update(exec, frame, out, c, grid.is_periodic());
  if (const auto* d = std::get_if<Dirichlet>(&grid.boundary)) {
    out.front() = d->left;
    out.back() = d->right;
  }
  return out;
}

double sin2_half(double k, double dx) {
  const double s = std::sin(k * dx / 2.0);
  return s * s;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<std::complex<double>> forward_transform(std::span<const double> frame, Exec exec) {
  std::vector<std::complex<double>> in(frame.begin(), frame.end());
  std::vector<std::complex<double>> out(frame.size());
  kernels::dft(exec, in, out, -1);
  return out;
}

// Makes U the transform of a real sequence: U_{M-j} = conj(U_j).
void enforce_conjugate_symmetry(std::vector<std::complex<double>>& u) {
  const std::size_t m = u.size();
  u[0] = u[0].real();
  for (std::size_t j = 1; 2 * j < m; ++j) {
    const std::complex<double> avg = 0.5 * (u[j] + std::conj(u[m - j]));
    u[j] = avg;
    u[m - j] = std::conj(avg);
  }
  if (m % 2 == 0) {
    u[m / 2] = u[m / 2].real();
  }
}

}  // namespace

Grid1D Grid1D::periodic(double x0, double length, int m_points) {
  Grid1D g;
  g.x0 = x0;
  g.m_points = m_points;
  g.dx = length / m_points;
  g.boundary = Periodic{};
  g.validate();
  return g;
}

Grid1D Grid1D::dirichlet(double x0, double length, int m_points, double left, double right) {
  Grid1D g;
  g.x0 = x0;
  g.m_points = m_points;
  g.dx = length / (m_points - 1);
  g.boundary = Dirichlet{left, right};
  g.validate();
  return g;
}

void Grid1D::validate() const {
  if (m_points < 3) {
    throw domain_error("grid needs at least 3 points");
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    std::ostringstream os;
    os << "grid spacing must be positive, got " << dx;
    throw domain_error(os.str());
  }
}

double Grid1D::length() const { return is_periodic() ? m_points * dx : (m_points - 1) * dx; }

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(m_points));
  for (int m = 0; m < m_points; ++m) {
    x[m] = this->x(m);
  }
  return x;
}

void PDEProblem::validate(const Grid1D& grid) const {
  grid.validate();
  if (!(a >= 0.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "diffusion coefficient a must be non-negative, got " << a;
    throw domain_error(os.str());
  }
  if (!std::isfinite(b)) {
    throw domain_error("reaction rate b must be finite");
  }
  check_frame(grid, initial_condition);
}

double time_step(const SolverKind& kind) {
  return std::visit([](const auto& k) { return k.dt; }, kind);
}

const char* method_name(const SolverKind& kind) {
  return std::visit(overloaded{
                        [](const EulerStd&) { return "EulerStd"; },
                        [](const Nsfd&) { return "Nsfd"; },
                        [](const EsddfdPhys&) { return "EsddfdPhys"; },
                        [](const EsddfdModal&) { return "EsddfdModal"; },
                    },
                    kind);
}

std::vector<double> step_euler(const PDEProblem& problem, const Grid1D& grid, double dt, std::span<const double> frame,
                               Exec exec) {
  grid.validate();
  check_frame(grid, frame);
  check_dt(dt);
  return apply_stencil(grid, frame, {dt, problem.a / (grid.dx * grid.dx), problem.b}, exec);
}

std::vector<double> step_nsfd(const PDEProblem& problem, const Grid1D& grid, double dt, std::span<const double> frame,
                              Exec exec) {
  grid.validate();
  check_frame(grid, frame);
  check_dt(dt);
  const double phi = denominators::phi_nsfd(dt, problem.b);
  // Without diffusion the spatial sub-equation and its denominator drop out.
  const double sigma = problem.a == 0.0 ? 0.0 : problem.a / denominators::psi2_nsfd(grid.dx, problem.b / problem.a);
  return apply_stencil(grid, frame, {phi, sigma, problem.b}, exec);
}

std::vector<double> step_esddfd_phys(const PDEProblem& problem, const Grid1D& grid, double dt, double k, double s,
                                     std::span<const double> frame, Exec exec) {
  grid.validate();
  check_frame(grid, frame);
  check_dt(dt);
  const double phi = denominators::phi_esddfd(dt, problem.a, problem.b, k);
  const double psi2 = denominators::psi2_esddfd(grid.dx, problem.a, problem.b, s);
  return apply_stencil(grid, frame, {phi, problem.a / psi2, problem.b}, exec);
}

double wave_number(const Grid1D& grid, int j) { return 2.0 * kPi * j / grid.length(); }

FieldTrajectory evolve_modal(const PDEProblem& problem, const Grid1D& grid, double dt, int n_steps, Exec exec) {
  problem.validate(grid);
  require_periodic(grid, "evolve_modal");
  check_dt(dt);
  if (grid.m_points > kMaxModalPoints) {
    std::ostringstream os;
    os << "evolve_modal supports at most " << kMaxModalPoints << " points, got " << grid.m_points;
    throw domain_error(os.str());
  }
  if (n_steps < 0) {
    throw domain_error("n_steps must be non-negative");
  }
  const int m = grid.m_points;
  auto spectrum = forward_transform(problem.initial_condition, exec);
  enforce_conjugate_symmetry(spectrum);

  std::vector<double> factor(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const int signed_j = (2 * j > m) ? j - m : j;
    const double k = wave_number(grid, signed_j);
    // U^{n+1} = U^n (1 + (b - a k^2) phi(dt, b, k)) = U^n e^{(b - a k^2) dt}
    factor[j] = std::exp((problem.b - problem.a * k * k) * dt);
  }

  FieldTrajectory traj;
  traj.grid = grid;
  traj.times.push_back(0.0);
  traj.frames.push_back(problem.initial_condition);
  std::vector<std::complex<double>> physical(static_cast<std::size_t>(m));
  for (int n = 1; n <= n_steps; ++n) {
    for (int j = 0; j < m; ++j) {
      spectrum[j] *= factor[j];
    }
    kernels::dft(exec, spectrum, physical, +1);
    std::vector<double> frame(static_cast<std::size_t>(m));
    double max_re = 0.0, max_im = 0.0;
    for (int i = 0; i < m; ++i) {
      const std::complex<double> v = physical[i] / static_cast<double>(m);
      frame[i] = v.real();
      max_re = std::max(max_re, std::fabs(v.real()));
      max_im = std::max(max_im, std::fabs(v.imag()));
    }
    if (!all_finite(frame)) {
      traj.diverged = true;
      break;
    }
    if (max_re > 0.0) {
      traj.imag_residue = std::max(traj.imag_residue, max_im / max_re);
    }
    traj.times.push_back(n * dt);
    traj.frames.push_back(std::move(frame));
  }
  return traj;
}

FieldTrajectory evolve(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid, int n_steps, Exec exec) {
  if (const auto* modal = std::get_if<EsddfdModal>(&kind)) {
    return evolve_modal(problem, grid, modal->dt, n_steps, exec);
  }
  problem.validate(grid);
  const double dt = time_step(kind);
  check_dt(dt);
  if (n_steps < 0) {
    throw domain_error("n_steps must be non-negative");
  }
  FieldTrajectory traj;
  traj.grid = grid;
  traj.times.push_back(0.0);
  traj.frames.push_back(problem.initial_condition);
  for (int n = 1; n <= n_steps; ++n) {
    const std::vector<double>& prev = traj.frames.back();
    std::vector<double> next = std::visit(overloaded{
                                              [&](const EulerStd& e) { return step_euler(problem, grid, e.dt, prev, exec); },
                                              [&](const Nsfd& e) { return step_nsfd(problem, grid, e.dt, prev, exec); },
                                              [&](const EsddfdPhys& e) {
                                                return step_esddfd_phys(problem, grid, e.dt, e.k, e.s, prev, exec);
                                              },
                                              [&](const EsddfdModal&) { return prev; },
                                          },
                                          kind);
    if (!all_finite(next)) {
      traj.diverged = true;
      break;
    }
    traj.times.push_back(n * dt);
    traj.frames.push_back(std::move(next));
  }
  return traj;
}

std::vector<double> laplace_mode_solve(const PDEProblem& problem, const Grid1D& grid, double s) {
  problem.validate(grid);
  const auto* d = std::get_if<Dirichlet>(&grid.boundary);
  if (d == nullptr || d->left != 0.0 || d->right != 0.0) {
    throw domain_error("laplace_mode_solve requires homogeneous Dirichlet boundaries");
  }
  if (!(problem.a > 0.0)) {
    throw domain_error("laplace_mode_solve requires a > 0");
  }
  if (!(s > problem.b)) {
    std::ostringstream os;
    os << "laplace_mode_solve requires s > b, got s = " << s << ", b = " << problem.b;
    throw domain_error(os.str());
  }
  const int m = grid.m_points;
  const double r = (problem.b - s) / problem.a;
  const double psi2 = denominators::psi2_esddfd(grid.dx, problem.a, problem.b, s);
  // Y_{m-1} + (r psi^2 - 2) Y_m + Y_{m+1} = -psi^2 u0_m / a, interior nodes.
  const double diag = r * psi2 - 2.0;
  const int n = m - 2;
  std::vector<double> upper(static_cast<std::size_t>(n));
  std::vector<double> rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rhs[i] = -psi2 * problem.initial_condition[i + 1] / problem.a;
  }
  // Thomas algorithm, unit off-diagonals.
  double pivot = diag;
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      pivot = diag - upper[i - 1];
      rhs[i] -= rhs[i - 1];
    }
    if (std::fabs(pivot) <= 1e-14 * std::fabs(diag)) {
      throw degenerate_error("laplace_mode_solve: singular tridiagonal system");
    }
    upper[i] = 1.0 / pivot;
    rhs[i] /= pivot;
  }
  std::vector<double> y(static_cast<std::size_t>(m), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    const double next = (i + 1 < n) ? y[i + 2] : 0.0;
    y[i + 1] = rhs[i] - upper[i] * next;
  }
  return y;
}

double amplification_factor(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid, double k) {
  require_periodic(grid, "amplification_factor");
  const double a = problem.a;
  const double b = problem.b;
  const double dx = grid.dx;
  return std::visit(overloaded{
                        [&](const EulerStd& e) { return 1.0 + e.dt * (b - 4.0 * a / (dx * dx) * sin2_half(k, dx)); },
                        [&](const Nsfd& e) {
                          const double phi = denominators::phi_nsfd(e.dt, b);
                          if (a == 0.0) {
                            return 1.0 + phi * b;
                          }
                          return 1.0 + phi * (b - 4.0 * a * sin2_half(k, dx) / denominators::psi2_nsfd(dx, b / a));
                        },
                        [&](const EsddfdPhys& e) {
                          const double phi = denominators::phi_esddfd(e.dt, a, b, e.k);
                          const double psi2 = denominators::psi2_esddfd(dx, a, b, e.s);
                          return 1.0 + phi * (b - 4.0 * a * sin2_half(k, dx) / psi2);
                        },
                        [&](const EsddfdModal& e) { return std::exp((b - a * k * k) * e.dt); },
                    },
                    kind);
}

double max_grid_amplification(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid) {
  double worst = 0.0;
  for (int j = 0; 2 * j <= grid.m_points; ++j) {
    worst = std::max(worst, std::fabs(amplification_factor(kind, problem, grid, wave_number(grid, j))));
  }
  return worst;
}

SpectralModes default_spectral_modes(const PDEProblem& problem, const Grid1D& grid) {
  problem.validate(grid);
  const auto spectrum = forward_transform(problem.initial_condition, Exec::Serial);
  int best = 0;
  double best_mag = -1.0;
  for (int j = 0; 2 * j <= grid.m_points; ++j) {
    const double mag = std::abs(spectrum[j]);
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = j;
    }
  }
  const double length = grid.length();
  return {wave_number(grid, best), problem.b + problem.a * (kPi / length) * (kPi / length)};
}

}  // namespace esddfd::pde
