#pragma once

// Test-only oracles. Everything here is computed in 50-digit binary floating
// point and shares no code with the library under test.

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>

namespace esddfd::test {

using hp = boost::multiprecision::cpp_bin_float_50;

inline hp hp_pi() { return boost::multiprecision::acos(hp(-1)); }

/// e^{t^2} erfc(t) = E_{1/2}(-t) for t >= 0.
inline double scaled_erfc(double t) {
  const hp ht = t;
  return static_cast<double>(exp(ht * ht) * boost::math::erfc(ht));
}

/// E_{1/2}(z) = e^{z^2} erfc(-z) for any real z.
inline double ml_half(double z) {
  const hp hz = z;
  return static_cast<double>(exp(hz * hz) * boost::math::erfc(-hz));
}

inline double hp_exp(double x) { return static_cast<double>(exp(hp(x))); }
inline double hp_expm1_over(double x, double b) {
  return static_cast<double>((exp(hp(x)) - 1) / hp(b));
}
inline double hp_sin2(double x) {
  const hp s = sin(hp(x));
  return static_cast<double>(s * s);
}
inline double hp_sinh2(double x) {
  const hp s = sinh(hp(x));
  return static_cast<double>(s * s);
}

/// Bisection root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::fabs(hi)) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace esddfd::test
