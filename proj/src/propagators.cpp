#include "esddfd/propagators.hpp"

#include <cmath>
#include <sstream>

#include "esddfd/errors.hpp"
#include "esddfd/specfun.hpp"

namespace esddfd::propagators {

namespace {

void check_time(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "propagator time must be non-negative, got " << t;
    throw domain_error(os.str());
  }
}

}  // namespace

void Propagator::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "propagator rate lambda must be positive, got " << lambda;
    throw domain_error(os.str());
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "propagator order alpha must lie in (0, 1], got " << alpha;
    throw domain_error(os.str());
  }
}

double Propagator::operator()(double t) const {
  validate();
  check_time(t);
  const double x = lambda * std::pow(t, alpha);
  if (kind == PropagatorKind::LocalExp) {
    return std::exp(-x);
  }
  return specfun::mittag_leffler(alpha, -x);
}

double Propagator::complement(double t) const {
  validate();
  check_time(t);
  const double x = lambda * std::pow(t, alpha);
  if (kind == PropagatorKind::LocalExp) {
    return -std::expm1(-x);
  }
  // 1 - E_a(-x) = x E_{a,a+1}(-x)
  specfun::MLParams p;
  p.alpha = alpha;
  p.beta = alpha + 1.0;
  return x * specfun::mittag_leffler(p, -x);
}

double local_propagator(double lambda, double alpha, double t) {
  return Propagator{PropagatorKind::LocalExp, lambda, alpha}(t);
}

double nonlocal_propagator(double lambda, double alpha, double t) {
  return Propagator{PropagatorKind::NonlocalML, lambda, alpha}(t);
}

WaveSignature signature_fit(std::span<const SignatureSample> samples, const FitOptions& options) {
  if (samples.size() < 8) {
    std::ostringstream os;
    os << "signature_fit needs at least 8 samples, got " << samples.size();
    throw degenerate_error(os.str());
  }
  double prev_t = 0.0;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.t > 0.0) || !(s.w > 0.0)) {
      throw degenerate_error("signature_fit requires positive t and W");
    }
    if (i > 0 && !(s.t > prev_t)) {
      throw degenerate_error("signature_fit requires strictly increasing t");
    }
    prev_t = s.t;
    sx += std::log(s.t);
    sy += std::log(s.w);
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.t) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(s.w) - my);
  }
  if (!(sxx > 0.0)) {
    throw degenerate_error("signature_fit: zero variance in log t");
  }
  WaveSignature sig;
  sig.alpha_hat = sxy / sxx;
  const double intercept = my - sig.alpha_hat * mx;
  sig.c_hat = std::exp(intercept);
  double ss = 0.0;
  for (const auto& s : samples) {
    const double r = std::log(s.w) - (intercept + sig.alpha_hat * std::log(s.t));
    ss += r * r;
  }
  sig.fit_residual = std::sqrt(ss / n);
  if (!(sig.alpha_hat > 0.0 && sig.alpha_hat < options.max_alpha)) {
    std::ostringstream os;
    os << "signature_fit: exponent " << sig.alpha_hat << " outside (0, " << options.max_alpha << ")";
    throw degenerate_error(os.str());
  }
  sig.kind = std::fabs(sig.alpha_hat - 1.0) <= options.debye_band ? SignatureKind::Debye : SignatureKind::KWW;
  return sig;
}

std::vector<SignatureSample> sample_signature(const Propagator& propagator, const SampleWindow& window) {
  if (!(window.t_min > 0.0 && window.t_max > window.t_min) || window.count < 2) {
    throw domain_error("sample window must satisfy 0 < t_min < t_max and count >= 2");
  }
  std::vector<SignatureSample> out;
  out.reserve(static_cast<std::size_t>(window.count));
  const double l0 = std::log(window.t_min);
  const double l1 = std::log(window.t_max);
  for (int i = 0; i < window.count; ++i) {
    const double t = std::exp(l0 + (l1 - l0) * i / (window.count - 1));
    out.push_back({t, propagator.complement(t)});
  }
  return out;
}

}  // namespace esddfd::propagators
