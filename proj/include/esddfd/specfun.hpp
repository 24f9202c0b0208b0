#pragma once

// Gamma and Mittag-Leffler functions on the real line.
//
// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) is evaluated from two
// representations: the power series (summed in extended or quad precision so
// that cancellation on the negative axis stays below the target tolerance),
// and the large-|z| asymptotic expansion truncated at its smallest term.
// Each route reports an error estimate; the evaluator returns the better one.

#include <cstdint>

namespace esddfd::specfun {

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  double tol = 1e-12;
  int max_terms = 2000;

  /// Throws domain_error unless 0 < alpha < 2, beta > 0, tol > 0, max_terms >= 1.
  void validate() const;
};

enum class MLRegime : std::uint8_t { Exact, Series, SeriesQuad, Asymptotic };

struct MLEvaluation {
  double value = 0.0;
  /// Estimated absolute error of `value`.
  double error_estimate = 0.0;
  MLRegime regime = MLRegime::Exact;
  int terms = 0;
};

/// Gamma(x). Relative error below 1e-13 on [0.1, 50]; exact for integers up
/// to 20. Throws pole_error at non-positive integers and overflow_error when
/// the result exceeds the double range.
double gamma(double x);

/// 1 / Gamma(x); zero at the poles of Gamma, never throws for finite x
/// except on overflow of the result.
double rgamma(double x);

/// One-parameter Mittag-Leffler function E_alpha(z) with default tolerance.
double mittag_leffler(double alpha, double z);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
/// Throws domain_error for invalid params, convergence_error when no
/// representation reaches a usable accuracy, overflow_error when the result
/// exceeds the double range.
double mittag_leffler(const MLParams& params, double z);

/// As mittag_leffler but also returns the regime used and its error estimate.
MLEvaluation mittag_leffler_eval(const MLParams& params, double z);

namespace detail {

/// Power series in long double. error_estimate is +inf when the series did
/// not converge within max_terms or the terms grew past a usable range.
MLEvaluation ml_series(const MLParams& params, double z);

/// Power series in __float128 when available (falls back to ml_series).
MLEvaluation ml_series_quad(const MLParams& params, double z);

/// Asymptotic expansion for z != 0, truncated at its smallest term.
/// error_estimate is +inf where the expansion does not apply.
MLEvaluation ml_asymptotic(const MLParams& params, double z);

/// ln|Gamma(x)| for x > 0 in long double.
long double lgamma_positive(long double x);

}  // namespace detail

}  // namespace esddfd::specfun
