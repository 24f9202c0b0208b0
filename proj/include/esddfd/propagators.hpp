#pragma once

// Relaxation propagators with unit initial value:
//   local      y(t) = exp(-lambda t^alpha)          (Debye for alpha = 1)
//   non-local  y(t) = E_alpha(-lambda t^alpha)      (KWW / Mittag-Leffler)
// and a log-log power-law fit that classifies a near-origin signature
// W(t) ~ C t^alpha as Debye (alpha ~ 1) or KWW.

#include <cstdint>
#include <span>
#include <vector>

namespace esddfd::propagators {

enum class PropagatorKind : std::uint8_t { LocalExp, NonlocalML };

struct Propagator {
  PropagatorKind kind = PropagatorKind::LocalExp;
  double lambda = 1.0;
  double alpha = 1.0;

  void validate() const;
  /// y(t) for t >= 0.
  double operator()(double t) const;
  /// 1 - y(t), evaluated without cancellation near t = 0.
  double complement(double t) const;
};

double local_propagator(double lambda, double alpha, double t);
double nonlocal_propagator(double lambda, double alpha, double t);

enum class SignatureKind : std::uint8_t { Debye, KWW };

struct WaveSignature {
  SignatureKind kind = SignatureKind::Debye;
  double c_hat = 0.0;
  double alpha_hat = 0.0;
  /// RMS residual of the log-log fit.
  double fit_residual = 0.0;
};

struct SignatureSample {
  double t = 0.0;
  double w = 0.0;
};

struct FitOptions {
  /// alpha_hat within this distance of 1 classifies as Debye.
  double debye_band = 0.03;
  /// Accepted alpha_hat range (0, max_alpha).
  double max_alpha = 1.2;
};

/// Least-squares line through (log t, log W). Throws degenerate_error for
/// fewer than 8 samples, non-positive t or W, non-increasing t, or an
/// exponent outside (0, max_alpha).
WaveSignature signature_fit(std::span<const SignatureSample> samples, const FitOptions& options = {});

struct SampleWindow {
  double t_min = 1e-4;
  double t_max = 1e-2;
  int count = 32;
};

/// Log-spaced samples of W(t) = 1 - y(t) on the window.
std::vector<SignatureSample> sample_signature(const Propagator& propagator, const SampleWindow& window = {});

}  // namespace esddfd::propagators
