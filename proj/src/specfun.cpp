#include "esddfd/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "esddfd/errors.hpp"

#ifdef ESDDFD_HAVE_QUADMATH
#include <quadmath.h>
#endif

namespace esddfd::specfun {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kMaxGammaArg = 171.62437695630272;

// Per-precision elementary functions and Stirling parameters. The Stirling
// series is applied after shifting the argument up to `shift` so that
// `terms` Bernoulli corrections reach the type's precision.
template <class T>
struct Precision;

template <>
struct Precision<long double> {
  static constexpr int shift = 20;
  static constexpr int terms = 11;
  static constexpr long double eps = std::numeric_limits<long double>::epsilon();
  static long double log(long double x) { return std::log(x); }
  static long double exp(long double x) { return std::exp(x); }
  static long double pi() { return kPiL; }
  static constexpr long double max_log = 11355.0L;
};

#ifdef ESDDFD_HAVE_QUADMATH
template <>
struct Precision<__float128> {
  static constexpr int shift = 32;
  static constexpr int terms = 16;
  static constexpr __float128 eps = static_cast<__float128>(1.0L / (1ULL << 56) / (1ULL << 56));
  static __float128 log(__float128 x) { return logq(x); }
  static __float128 exp(__float128 x) { return expq(x); }
  static __float128 pi() { return acosq(static_cast<__float128>(-1)); }
  static constexpr __float128 max_log = 11355;
};
#endif

// B_{2m} numerators and denominators, m = 1..16.
constexpr std::array<std::array<double, 2>, 16> kBernoulli{{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
    {-7709321041217.0, 510.0},
}};

template <class T>
T lgamma_pos(T x) {
  using P = Precision<T>;
  T shift_log = 0;
  if (x < T(P::shift)) {
    T prod = 1;
    while (x < T(P::shift)) {
      prod *= x;
      x += 1;
    }
    shift_log = P::log(prod);
  }
  const T inv = T(1) / x;
  const T inv2 = inv * inv;
  T corr = 0;
  T power = inv;
  for (int m = 1; m <= P::terms; ++m) {
    const auto& b = kBernoulli[m - 1];
    corr += T(b[0]) / (T(b[1]) * T(2 * m) * T(2 * m - 1)) * power;
    power *= inv2;
  }
  const T half_log_two_pi = P::log(T(2) * P::pi()) / T(2);
  return (x - T(0.5)) * P::log(x) - x + half_log_two_pi + corr - shift_log;
}

// sin(pi x) with exact argument reduction.
long double sinpi(long double x) {
  long double r = x - 2.0L * std::nearbyint(x / 2.0L);  // r in [-1, 1]
  if (r > 0.5L) {
    r = 1.0L - r;
  } else if (r < -0.5L) {
    r = -1.0L - r;
  }
  return std::sin(kPiL * r);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::nearbyint(x) == x; }

// ln|1/Gamma(x)| and its sign; sign = 0 at the poles.
long double log_abs_rgamma(long double x, int& sign) {
  if (x > 0.0L) {
    sign = 1;
    return -lgamma_pos(x);
  }
  if (std::nearbyint(x) == x) {
    sign = 0;
    return -std::numeric_limits<long double>::infinity();
  }
  const long double s = sinpi(x);
  sign = s > 0 ? 1 : -1;
  return std::log(std::fabs(s)) + lgamma_pos(1.0L - x) - std::log(kPiL);
}

template <class T>
struct Neumaier {
  T sum = 0;
  T comp = 0;
  void add(T v) {
    const T t = sum + v;
    const T av = v < 0 ? -v : v;
    const T as = sum < 0 ? -sum : sum;
    if (as >= av) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  T value() const { return sum + comp; }
};

template <class T>
T tabs(T v) {
  return v < 0 ? -v : v;
}

template <class T>
MLEvaluation ml_series_impl(const MLParams& p, double z, MLRegime regime) {
  using P = Precision<T>;
  MLEvaluation out;
  out.regime = regime;
  if (z == 0.0) {
    out.value = rgamma(p.beta);
    out.terms = 1;
    return out;
  }
  const T log_abs_z = P::log(T(std::fabs(z)));
  const T alpha = p.alpha;
  const T beta = p.beta;
  Neumaier<T> sum;
  T rounding = 0;
  T max_term = 0;
  T prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  int k = 0;
  for (; k < p.max_terms; ++k) {
    const T arg = alpha * T(k) + beta;
    const T lg = lgamma_pos(arg);
    const T kl = T(k) * log_abs_z;
    const T lterm = kl - lg;
    if (lterm > P::max_log) {
      break;
    }
    const T mag = P::exp(lterm);
    sum.add((z < 0.0 && (k & 1)) ? -mag : mag);
    rounding += mag * (T(1) + tabs(kl) + tabs(lg));
    if (mag > max_term) {
      max_term = mag;
    }
    // Cancellation beyond recovery: the absolute rounding error exceeds O(1).
    if (z < 0.0 && max_term * P::eps > T(1)) {
      break;
    }
    // Past the peak the term ratio decreases monotonically (log-convexity of
    // Gamma), so r / (1 - r) bounds the tail for positive terms; an
    // alternating tail is bounded by its first term.
    const T s = sum.value();
    if (k > 0 && mag < prev) {
      const T r = mag / prev;
      const T tail = z < 0.0 ? mag * r : mag * r / (T(1) - r);
      if (tail <= T(1e-3) * T(p.tol) * tabs(s)) {
        converged = true;
        out.error_estimate = static_cast<double>(tail + P::eps * rounding);
        ++k;
        break;
      }
    }
    prev = mag;
  }
  out.terms = k;
  out.value = static_cast<double>(sum.value());
  if (!converged) {
    out.error_estimate = std::numeric_limits<double>::infinity();
  } else {
    // Final rounding to double.
    out.error_estimate += std::fabs(out.value) * std::numeric_limits<double>::epsilon();
  }
  return out;
}

}  // namespace

void MLParams::validate() const {
  std::ostringstream os;
  if (!(alpha > 0.0 && alpha < 2.0)) {
    os << "Mittag-Leffler alpha must lie in (0, 2), got " << alpha;
    throw domain_error(os.str());
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    os << "Mittag-Leffler beta must be positive, got " << beta;
    throw domain_error(os.str());
  }
  if (!(tol > 0.0)) {
    os << "Mittag-Leffler tolerance must be positive, got " << tol;
    throw domain_error(os.str());
  }
  if (max_terms < 1) {
    throw domain_error("Mittag-Leffler max_terms must be at least 1");
  }
}

double gamma(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at non-positive integer " << x;
    throw pole_error(os.str());
  }
  if (x > kMaxGammaArg) {
    std::ostringstream os;
    os << "gamma: result overflows for x = " << x;
    throw overflow_error(os.str());
  }
  if (x >= 1.0 && x <= 21.0 && std::nearbyint(x) == x) {
    long double f = 1.0L;
    for (int i = 2; i < static_cast<int>(x); ++i) {
      f *= i;
    }
    return static_cast<double>(f);
  }
  if (x >= 0.5) {
    return static_cast<double>(std::exp(lgamma_pos<long double>(x)));
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const long double s = sinpi(x);
  const long double log_mag = std::log(kPiL) - std::log(std::fabs(s)) - lgamma_pos(1.0L - x);
  const long double mag = std::exp(log_mag);
  if (mag > std::numeric_limits<double>::max()) {
    std::ostringstream os;
    os << "gamma: result overflows for x = " << x;
    throw overflow_error(os.str());
  }
  return static_cast<double>(s > 0 ? mag : -mag);
}

double rgamma(double x) {
  if (std::isnan(x)) {
    return x;
  }
  int sign = 0;
  const long double lg = log_abs_rgamma(x, sign);
  if (sign == 0) {
    return 0.0;
  }
  const long double mag = std::exp(lg);
  if (mag > std::numeric_limits<double>::max()) {
    std::ostringstream os;
    os << "rgamma: result overflows for x = " << x;
    throw overflow_error(os.str());
  }
  return static_cast<double>(sign > 0 ? mag : -mag);
}

namespace detail {

long double lgamma_positive(long double x) { return lgamma_pos(x); }

MLEvaluation ml_series(const MLParams& params, double z) {
  params.validate();
  return ml_series_impl<long double>(params, z, MLRegime::Series);
}

MLEvaluation ml_series_quad(const MLParams& params, double z) {
  params.validate();
#ifdef ESDDFD_HAVE_QUADMATH
  return ml_series_impl<__float128>(params, z, MLRegime::SeriesQuad);
#else
  return ml_series_impl<long double>(params, z, MLRegime::Series);
#endif
}

MLEvaluation ml_asymptotic(const MLParams& params, double z) {
  params.validate();
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  constexpr double inf = std::numeric_limits<double>::infinity();
  MLEvaluation out;
  out.regime = MLRegime::Asymptotic;
  out.error_estimate = inf;
  if (z == 0.0) {
    return out;
  }
  const long double alpha = params.alpha;
  const long double beta = params.beta;
  const long double x = std::fabs(static_cast<long double>(z));
  const long double log_x = std::log(x);
  const bool beta_integer = std::nearbyint(params.beta) == params.beta;

  // Exponential contribution (1/alpha) z^{(1-beta)/alpha} exp(z^{1/alpha})
  // summed over the branches of z^{1/alpha} inside the sector |arg| <= alpha*pi.
  long double exp_part = 0.0L;
  if (z > 0.0) {
    const long double log_mag = std::pow(x, 1.0L / alpha) + (1.0L - beta) / alpha * log_x - std::log(alpha);
    if (log_mag > std::log(static_cast<long double>(std::numeric_limits<double>::max()))) {
      out.value = inf;
      out.error_estimate = 0.0;
      return out;
    }
    exp_part = std::exp(log_mag);
  } else if (params.alpha == 1.0) {
    if (!beta_integer) {
      return out;
    }
    exp_part = std::pow(static_cast<long double>(z), 1.0L - beta) * std::exp(static_cast<long double>(z));
  } else if (params.alpha > 1.0) {
    using C = std::complex<long double>;
    const C zeta = std::polar(std::pow(x, 1.0L / alpha), kPiL / alpha);
    const C pre = std::pow(zeta, 1.0L - beta) * std::exp(zeta) / alpha;
    exp_part = 2.0L * pre.real();
  }

  // Algebraic tail -sum_k z^{-k} / Gamma(beta - alpha k), truncated where
  // its envelope |z|^{-k} Gamma(1 - beta + alpha k) / pi stops decreasing.
  Neumaier<long double> sum;
  long double rounding = 0.0L;
  long double prev_env = std::numeric_limits<long double>::infinity();
  long double truncation = inf;
  const bool terminating = params.alpha == 1.0 && beta_integer;
  int k = 1;
  for (; k <= params.max_terms; ++k) {
    const long double arg = beta - alpha * k;
    if (terminating && arg <= 0.0L) {
      truncation = 0.0L;
      break;
    }
    const long double env_log =
        arg < 1.0L ? lgamma_pos(1.0L - arg) - std::log(kPiL) - k * log_x : -lgamma_pos(arg) - k * log_x;
    const long double env = std::exp(env_log);
    if (arg < 0.0L && env > prev_env) {
      truncation = prev_env;
      break;
    }
    int sign = 0;
    const long double lr = log_abs_rgamma(arg, sign);
    if (sign != 0) {
      const long double mag = std::exp(lr - k * log_x);
      // term = -z^{-k} rgamma(arg); z^{-k} is negative for odd k when z < 0
      const int zsign = (z < 0.0 && (k & 1)) ? -1 : 1;
      sum.add(-static_cast<long double>(zsign * sign) * mag);
      rounding += mag * (1.0L + std::fabs(env_log));
    }
    const long double total = std::fabs(sum.value() + exp_part);
    if (env <= 1e-3L * eps * total) {
      truncation = env;
      ++k;
      break;
    }
    prev_env = env;
  }
  out.terms = k - 1;
  const long double value = sum.value() + exp_part;
  out.value = static_cast<double>(value);
  if (std::isfinite(truncation)) {
    out.error_estimate = static_cast<double>(truncation + eps * (rounding + std::fabs(exp_part) * (1.0L + x))) +
                         std::fabs(out.value) * std::numeric_limits<double>::epsilon();
  }
  return out;
}

}  // namespace detail

MLEvaluation mittag_leffler_eval(const MLParams& params, double z) {
  params.validate();
  if (std::isnan(z)) {
    throw domain_error("Mittag-Leffler argument is NaN");
  }
  if (z == 0.0) {
    MLEvaluation out;
    out.value = rgamma(params.beta);
    out.regime = MLRegime::Exact;
    out.terms = 1;
    return out;
  }
  const auto meets_tol = [&](const MLEvaluation& e) {
    return std::isfinite(e.value) && e.error_estimate <= params.tol * std::fabs(e.value);
  };
  const auto better = [](const MLEvaluation& a, const MLEvaluation& b) {
    return a.error_estimate < b.error_estimate ? a : b;
  };

  MLEvaluation best;
  best.error_estimate = std::numeric_limits<double>::infinity();
  if (std::fabs(z) >= 1.0) {
    const MLEvaluation asym = detail::ml_asymptotic(params, z);
    if (std::isinf(asym.value)) {
      std::ostringstream os;
      os << "Mittag-Leffler value overflows for alpha = " << params.alpha << ", z = " << z;
      throw overflow_error(os.str());
    }
    if (meets_tol(asym)) {
      return asym;
    }
    best = better(asym, best);
  }
  const MLEvaluation series = detail::ml_series(params, z);
  if (meets_tol(series)) {
    return series;
  }
  best = better(series, best);
  const MLEvaluation quad = detail::ml_series_quad(params, z);
  if (meets_tol(quad)) {
    return quad;
  }
  best = better(quad, best);

  if (std::isinf(best.value)) {
    std::ostringstream os;
    os << "Mittag-Leffler value overflows for alpha = " << params.alpha << ", z = " << z;
    throw overflow_error(os.str());
  }
  // Accept a result short of tol only while it keeps half the digits.
  if (!(best.error_estimate <= std::sqrt(params.tol) * std::fabs(best.value))) {
    std::ostringstream os;
    os << "Mittag-Leffler evaluation did not converge for alpha = " << params.alpha << ", beta = " << params.beta
       << ", z = " << z << " (best error estimate " << best.error_estimate << ")";
    throw convergence_error(os.str());
  }
  return best;
}

double mittag_leffler(const MLParams& params, double z) { return mittag_leffler_eval(params, z).value; }

double mittag_leffler(double alpha, double z) {
  MLParams params;
  params.alpha = alpha;
  return mittag_leffler(params, z);
}

}  // namespace esddfd::specfun
