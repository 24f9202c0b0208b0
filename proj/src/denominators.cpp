#include "esddfd/denominators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "esddfd/errors.hpp"
#include "esddfd/specfun.hpp"

namespace esddfd::denominators {

namespace {

constexpr double kSeriesSwitch = 1e-6;
constexpr double kSpaceSwitch = 1e-12;
constexpr double kPi = 3.14159265358979323846;
const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

void require_positive(const char* what, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw domain_error(os.str());
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double phi_nsfd(double dt, double b) {
  require_positive("time step", dt);
  const double x = b * dt;
  if (std::fabs(x) < kSeriesSwitch) {
    return dt * (1.0 + x / 2.0 + x * x / 6.0);
  }
  if (x > kMaxExpArg) {
    std::ostringstream os;
    os << "phi_nsfd overflows: b*dt = " << x;
    throw overflow_error(os.str());
  }
  return std::expm1(x) / b;
}

double psi2_nsfd(double dx, double r) {
  require_positive("space step", dx);
  if (std::fabs(r * dx * dx) < kSpaceSwitch) {
    return dx * dx;
  }
  const double root = std::sqrt(std::fabs(r));
  const double theta = root * dx / 2.0;
  if (r > 0.0) {
    if (theta >= kPi) {
      std::ostringstream os;
      os << "psi2_nsfd: sqrt(r) dx / 2 = " << theta << " reaches the first zero of sine";
      throw degenerate_error(os.str());
    }
    const double s = std::sin(theta);
    return 4.0 / r * s * s;
  }
  if (theta > kMaxExpArg / 2.0) {
    std::ostringstream os;
    os << "psi2_nsfd overflows: sqrt(|r|) dx / 2 = " << theta;
    throw overflow_error(os.str());
  }
  const double s = std::sinh(theta);
  return 4.0 / -r * s * s;
}

double phi_esddfd(double dt, double a, double b, double k) {
  if (!(a >= 0.0)) {
    std::ostringstream os;
    os << "diffusion coefficient must be non-negative, got " << a;
    throw domain_error(os.str());
  }
  return phi_nsfd(dt, b - a * k * k);
}

double psi2_esddfd(double dx, double a, double b, double s) {
  require_positive("diffusion coefficient", a);
  return psi2_nsfd(dx, (b - s) / a);
}

double mu_exact_step(ExactKind kind, double lambda, double alpha, double t_n, double t_np1) {
  require_positive("rate lambda", lambda);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "order alpha must lie in (0, 1], got " << alpha;
    throw domain_error(os.str());
  }
  if (!(t_n >= 0.0 && t_np1 > t_n) || !std::isfinite(t_np1)) {
    std::ostringstream os;
    os << "exact step requires 0 <= t_n < t_np1, got [" << t_n << ", " << t_np1 << "]";
    throw domain_error(os.str());
  }
  if (kind == ExactKind::Conformable) {
    const double x = lambda * (std::pow(t_np1, alpha) - std::pow(t_n, alpha));
    return -std::expm1(-x) / lambda;
  }
  const double e_n = specfun::mittag_leffler(alpha, -lambda * std::pow(t_n, alpha));
  const double e_np1 = specfun::mittag_leffler(alpha, -lambda * std::pow(t_np1, alpha));
  if (!(e_n >= std::numeric_limits<double>::min())) {
    std::ostringstream os;
    os << "mu_exact_step: propagator underflows at t_n = " << t_n;
    throw degenerate_error(os.str());
  }
  return (e_n - e_np1) / e_n / lambda;
}

GalleryValue gallery_phi(GalleryVariant variant, double h) {
  require_positive("step", h);
  double v = 0.0;
  switch (variant) {
    case GalleryVariant::H:
      v = h;
      break;
    case GalleryVariant::OneMinusExpNegH:
      v = -std::expm1(-h);
      break;
    case GalleryVariant::ExpHMinusOne:
      v = std::expm1(h);
      break;
    case GalleryVariant::SinH:
      v = std::sin(h);
      // sin vanishes at multiples of pi; below this bound the value is
      // indistinguishable from zero given the rounding of h itself.
      if (std::fabs(v) <= 4.0 * std::numeric_limits<double>::epsilon() * h) {
        v = 0.0;
      }
      break;
  }
  return {v, !(v > 0.0)};
}

double evaluate(const DenominatorSpec& spec) {
  return std::visit(
      overloaded{
          [](const Standard& s) {
            require_positive("step", s.h);
            return s.h;
          },
          [](const NsfdTime& s) { return phi_nsfd(s.dt, s.b); },
          [](const NsfdSpace& s) { return psi2_nsfd(s.dx, s.r); },
          [](const EsddfdTime& s) { return phi_esddfd(s.dt, s.a, s.b, s.k); },
          [](const EsddfdSpace& s) { return psi2_esddfd(s.dx, s.a, s.b, s.s); },
          [](const ConformableExact& s) {
            return mu_exact_step(ExactKind::Conformable, s.lambda, s.alpha, s.t_n, s.t_np1);
          },
          [](const MlExact& s) { return mu_exact_step(ExactKind::MittagLeffler, s.lambda, s.alpha, s.t_n, s.t_np1); },
          [](const Gallery& s) { return gallery_phi(s.variant, s.h).value; },
      },
      spec);
}

}  // namespace esddfd::denominators
