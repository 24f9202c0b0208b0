#pragma once

// Solvers for u_t = a u_xx + b u on a uniform 1-D grid.
//
// All explicit steppers share the form
//   u_m^{n+1} = u_m^n + T (a (u_{m+1} - 2 u_m + u_{m-1}) / S + b u_m)
// with (T, S) = (dt, dx^2) for standard Euler, (phi(dt, b), psi^2(dx, b/a))
// for NSFD and (phi(dt, a, b, k), psi^2(dx, a, b, s)) for the physical-space
// spectral scheme. The modal solver advances each discrete Fourier mode by its
// exact factor e^{(b - a k^2) dt}. laplace_mode_solve solves the boundary
// value problem satisfied by the Laplace transform Y(x, s).

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "esddfd/kernels.hpp"

namespace esddfd::pde {

struct Periodic {};
struct Dirichlet {
  double left = 0.0;
  double right = 0.0;
};

struct Grid1D {
  double x0 = 0.0;
  double dx = 0.1;
  int m_points = 3;
  std::variant<Periodic, Dirichlet> boundary = Periodic{};

  /// Uniform periodic grid of m points covering [x0, x0 + length).
  static Grid1D periodic(double x0, double length, int m_points);
  /// Uniform grid of m points on [x0, x0 + length] including both ends.
  static Grid1D dirichlet(double x0, double length, int m_points, double left = 0.0, double right = 0.0);

  void validate() const;
  bool is_periodic() const { return std::holds_alternative<Periodic>(boundary); }
  double x(int m) const { return x0 + m * dx; }
  /// Period for periodic grids, x_{M-1} - x_0 otherwise.
  double length() const;
  std::vector<double> nodes() const;
};

struct PDEProblem {
  double a = 1.0;
  double b = 0.0;
  std::vector<double> initial_condition;

  void validate(const Grid1D& grid) const;
};

struct EulerStd {
  double dt;
};
struct Nsfd {
  double dt;
};
struct EsddfdPhys {
  double dt;
  double k;
  double s;
};
struct EsddfdModal {
  double dt;
};

using SolverKind = std::variant<EulerStd, Nsfd, EsddfdPhys, EsddfdModal>;

double time_step(const SolverKind& kind);
const char* method_name(const SolverKind& kind);

struct FieldTrajectory {
  Grid1D grid;
  std::vector<double> times;
  std::vector<std::vector<double>> frames;
  /// Largest imaginary part left by the inverse transform, relative to the
  /// frame's max norm (modal solver only).
  double imag_residue = 0.0;
  /// Set when a frame became non-finite; frames stop at the last finite one.
  bool diverged = false;
};

using kernels::Exec;

std::vector<double> step_euler(const PDEProblem& problem, const Grid1D& grid, double dt, std::span<const double> frame,
                               Exec exec = Exec::Parallel);
std::vector<double> step_nsfd(const PDEProblem& problem, const Grid1D& grid, double dt, std::span<const double> frame,
                              Exec exec = Exec::Parallel);
std::vector<double> step_esddfd_phys(const PDEProblem& problem, const Grid1D& grid, double dt, double k, double s,
                                     std::span<const double> frame, Exec exec = Exec::Parallel);

/// Advances the initial condition by n_steps with any explicit solver kind,
/// or the modal solver for EsddfdModal. Stops early if values become
/// non-finite (diverged = true).
FieldTrajectory evolve(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid, int n_steps,
                       Exec exec = Exec::Parallel);

/// Modal solver on a periodic grid (m_points <= 4096).
FieldTrajectory evolve_modal(const PDEProblem& problem, const Grid1D& grid, double dt, int n_steps,
                             Exec exec = Exec::Parallel);

/// Angular wave number of DFT index j on a periodic grid (signed, |j| <= M/2).
double wave_number(const Grid1D& grid, int j);

/// Solves (Y_{m+1} - 2 Y_m + Y_{m-1}) / psi^2(dx, a, b, s) + ((b - s)/a) Y_m
///        + u(x_m, 0) / a = 0
/// on a homogeneous Dirichlet grid; requires s > b and a > 0.
std::vector<double> laplace_mode_solve(const PDEProblem& problem, const Grid1D& grid, double s);

/// Per-step multiplier of the Fourier mode with wave number k.
double amplification_factor(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid, double k);

/// Largest |amplification| over the wave numbers resolved by the grid.
double max_grid_amplification(const SolverKind& kind, const PDEProblem& problem, const Grid1D& grid);

struct SpectralModes {
  double k;
  double s;
};

/// Default (k, s) for the physical-space spectral scheme: k is the wave
/// number carrying the most energy in the initial condition's transform and
/// s = b + a (pi / L)^2.
SpectralModes default_spectral_modes(const PDEProblem& problem, const Grid1D& grid);

}  // namespace esddfd::pde
