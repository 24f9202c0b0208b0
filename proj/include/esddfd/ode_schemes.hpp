#pragma once

// Schemes for the decay equation dx/dt = -lambda x:
//   ForwardEuler   (x_{k+1} - x_k) / h      = -lambda x_k
//   BackwardEuler  (x_{k+1} - x_k) / h      = -lambda x_{k+1}
//   MickensExact   (x_{k+1} - x_k) / phi(h) = -lambda x_{k+1},
//                  phi(h) = (e^{lambda h} - 1) / lambda
//   SpectralExact  x_{k+1} = x_k e^{-lambda h}
// and the exact harmonic-oscillator recurrence
//   (y_{n+1} - 2 y_n + y_{n-1}) / psi^2 + omega^2 y_n = 0,
//   psi = (2 / omega) sin(omega h / 2).

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace esddfd::ode {

enum class DecayScheme : std::uint8_t { ForwardEuler, BackwardEuler, MickensExact, SpectralExact };

std::string_view to_string(DecayScheme scheme);
/// Inverse of to_string; nullopt for unknown names.
std::optional<DecayScheme> parse_decay_scheme(std::string_view name);

inline constexpr DecayScheme kAllDecaySchemes[] = {DecayScheme::ForwardEuler, DecayScheme::BackwardEuler,
                                                   DecayScheme::MickensExact, DecayScheme::SpectralExact};

struct DecaySchemeKind {
  DecayScheme scheme = DecayScheme::ForwardEuler;
  double lambda = 1.0;
  double h = 0.1;

  void validate() const;
};

struct HarmonicSchemeKind {
  double omega = 1.0;
  double h = 0.1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> states;
  std::variant<DecaySchemeKind, HarmonicSchemeKind> scheme;
};

/// One step of the chosen scheme. MickensExact uses the quotient form.
double decay_step(const DecaySchemeKind& kind, double x);

/// MickensExact in its simplified multiplicative form x e^{-lambda h}.
double mickens_exact_step_multiplicative(const DecaySchemeKind& kind, double x);

/// n_steps iterations of decay_step from x0 at t = 0.
Trajectory decay_solve(const DecaySchemeKind& kind, double x0, int n_steps);

/// Second starting value from position y0 and velocity v0:
/// y1 = y0 cos(omega h) + v0 sin(omega h) / omega.
double ho_second_value(double omega, double h, double y0, double v0);

/// Exact oscillator recurrence for n = 0..n_steps. Throws domain_error if
/// omega h / 2 >= pi or n_steps < 2.
Trajectory ho_exact_solve(double omega, double h, int n_steps, double y0, double y1);

struct OrderRow {
  double h = 0.0;
  double error = 0.0;
  /// Observed order against the previous (coarser) row; empty for the first
  /// row and whenever either error is at roundoff level.
  std::optional<double> observed_p;
  bool exact = false;
};

/// Error of x_N(h) against x0 e^{-lambda t_final} on each step of h_list
/// (strictly decreasing, at least 4 entries, each dividing t_final), and
/// the observed order log(e_{i-1}/e_i) / log(h_{i-1}/h_i). An error below
/// 1e-13 |x0| marks the row exact.
std::vector<OrderRow> order_estimate(DecayScheme scheme, double lambda, double x0, double t_final,
                                     const std::vector<double>& h_list);

/// h0, h0/2, ..., h0/2^{levels-1}.
std::vector<double> halving_sequence(double h0, int levels);

}  // namespace esddfd::ode
