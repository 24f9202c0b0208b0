#pragma once

// Denominator functions that replace the raw step size in difference
// quotients.
//
//   phi_nsfd(dt, b)         = (e^{b dt} - 1) / b                time, reaction b
//   psi2_nsfd(dx, r)        = (4 / r) sin^2(sqrt(r) dx / 2)      space, r = b / a
//   phi_esddfd(dt, a, b, k) = phi_nsfd(dt, b - a k^2)            Fourier mode k
//   psi2_esddfd(dx, a, b, s)= psi2_nsfd(dx, (b - s) / a)         Laplace mode s
//
// Space denominators are returned squared. For r < 0 the sine becomes a
// hyperbolic sine, which keeps every value real. Removable singularities at
// b = 0 and r = 0 are evaluated from their Taylor expansions.

#include <cstdint>
#include <variant>

namespace esddfd::denominators {

struct Standard {
  double h;
};
struct NsfdTime {
  double dt;
  double b;
};
struct NsfdSpace {
  double dx;
  double r;
};
struct EsddfdTime {
  double dt;
  double a;
  double b;
  double k;
};
struct EsddfdSpace {
  double dx;
  double a;
  double b;
  double s;
};
struct ConformableExact {
  double lambda;
  double alpha;
  double t_n;
  double t_np1;
};
struct MlExact {
  double lambda;
  double alpha;
  double t_n;
  double t_np1;
};

enum class GalleryVariant : std::uint8_t { H, OneMinusExpNegH, ExpHMinusOne, SinH };

struct Gallery {
  GalleryVariant variant;
  double h;
};

using DenominatorSpec =
    std::variant<Standard, NsfdTime, NsfdSpace, EsddfdTime, EsddfdSpace, ConformableExact, MlExact, Gallery>;

double phi_nsfd(double dt, double b);
double psi2_nsfd(double dx, double r);
double phi_esddfd(double dt, double a, double b, double k);
double psi2_esddfd(double dx, double a, double b, double s);

enum class ExactKind : std::uint8_t { Conformable, MittagLeffler };

/// Step measure mu making y_{n+1} = y_n (1 - lambda mu) reproduce the
/// propagator exp(-lambda t^alpha) (Conformable) or E_alpha(-lambda t^alpha)
/// (MittagLeffler) exactly between t_n and t_np1. Depends on both endpoints.
double mu_exact_step(ExactKind kind, double lambda, double alpha, double t_n, double t_np1);

struct GalleryValue {
  double value;
  /// Set when the value is not a usable (positive) denominator.
  bool degenerate;
};

GalleryValue gallery_phi(GalleryVariant variant, double h);

/// Evaluates any denominator; space denominators come back squared. A
/// degenerate Gallery value is returned as is.
double evaluate(const DenominatorSpec& spec);

}  // namespace esddfd::denominators
