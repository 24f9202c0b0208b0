#include <doctest.h>

#include <cmath>

#include "esddfd/denominators.hpp"
#include "esddfd/errors.hpp"
#include "esddfd/specfun.hpp"
#include "oracles.hpp"

using namespace esddfd;
using namespace esddfd::denominators;
using esddfd::test::rel_err;

TEST_CASE("phi_nsfd values") {
  CHECK(phi_nsfd(0.1, 0.0) == 0.1);
  CHECK(rel_err(phi_nsfd(1.0, 1.0), test::hp_expm1_over(1.0, 1.0)) <= 1e-15);
  CHECK(rel_err(phi_nsfd(1.0, 1.0), 1.718281828459045) <= 1e-15);
  CHECK(rel_err(phi_nsfd(1.0, -1.0), test::hp_expm1_over(-1.0, -1.0)) <= 1e-15);
  CHECK(rel_err(phi_nsfd(1.0, -1.0), 0.6321205588285577) <= 1e-15);
}

TEST_CASE("phi_nsfd is continuous across b = 0") {
  for (double dt : {1e-3, 0.3, 2.0}) {
    for (double b : {1e-7, -1e-7, 1e-6 / dt * 0.999, 1e-6 / dt * 1.001}) {
      CHECK(std::fabs(phi_nsfd(dt, b) - dt) <= 1e-6 * dt);
      CHECK(rel_err(phi_nsfd(dt, b), test::hp_expm1_over(b * dt, b)) <= 1e-14);
    }
  }
}

TEST_CASE("phi_nsfd errors") {
  CHECK_THROWS_AS(phi_nsfd(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(phi_nsfd(-0.1, 1.0), domain_error);
  CHECK_THROWS_AS(phi_nsfd(1.0, 800.0), overflow_error);
}

TEST_CASE("psi2_nsfd values") {
  CHECK(psi2_nsfd(0.3, 0.0) == 0.3 * 0.3);
  CHECK(rel_err(psi2_nsfd(1.0, 1.0), 4.0 * test::hp_sin2(0.5)) <= 1e-15);
  CHECK(rel_err(psi2_nsfd(1.0, 1.0), 0.9193953882637205) <= 1e-15);
  CHECK(rel_err(psi2_nsfd(0.5, -4.0), test::hp_sinh2(0.5)) <= 1e-15);
  CHECK(rel_err(psi2_nsfd(0.5, -4.0), 0.27154031) <= 1e-7);
}

TEST_CASE("psi2_nsfd errors") {
  CHECK_THROWS_AS(psi2_nsfd(0.0, 1.0), domain_error);
  // sqrt(r) dx / 2 = pi: the sine vanishes.
  CHECK_THROWS_AS(psi2_nsfd(2.0 * M_PI, 1.0), degenerate_error);
  CHECK_THROWS_AS(psi2_nsfd(10.0, -1e6), overflow_error);
}

TEST_CASE("ESDDFD denominators") {
  for (double k : {0.5, 1.0, 3.0}) {
    const double a = 0.7;
    CHECK(rel_err(phi_esddfd(0.2, a, a * k * k, k), 0.2) <= 1e-15);
  }
  CHECK(rel_err(phi_esddfd(0.1, 1.0, 0.0, 1.0), test::hp_expm1_over(-0.1, -1.0)) <= 1e-15);
  CHECK(rel_err(phi_esddfd(0.1, 1.0, 0.0, 1.0), 0.09516258196404048) <= 1e-15);
  CHECK(phi_esddfd(1.0, 0.0, 1.0, 7.0) == phi_nsfd(1.0, 1.0));

  CHECK(psi2_esddfd(0.2, 1.5, 0.4, 0.4) == 0.2 * 0.2);
  CHECK(psi2_esddfd(1.0, 1.0, 1.0, 0.0) == psi2_nsfd(1.0, 1.0));
  CHECK(rel_err(psi2_esddfd(0.5, 1.0, 0.0, 1.0), 4.0 * test::hp_sinh2(0.25)) <= 1e-15);
  // 4 sinh^2(0.25) = 0.2552519304...
  CHECK(rel_err(psi2_esddfd(0.5, 1.0, 0.0, 1.0), 0.25525193041276157) <= 1e-15);
  CHECK_THROWS_AS(psi2_esddfd(0.5, 0.0, 0.0, 1.0), domain_error);
  CHECK_THROWS_AS(phi_esddfd(0.5, -1.0, 0.0, 1.0), domain_error);
}

TEST_CASE("reduction lattice holds to 1e-14") {
  for (double dt : {0.01, 0.3, 1.0}) {
    for (double b : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      for (double k : {0.0, 1.0, 2.5}) {
        CHECK(std::fabs(phi_esddfd(dt, 0.0, b, k) - phi_nsfd(dt, b)) <= 1e-14 * phi_nsfd(dt, b));
      }
      for (double a : {0.1, 1.0, 3.0}) {
        CHECK(std::fabs(phi_esddfd(dt, a, b, 0.0) - phi_nsfd(dt, b)) <= 1e-14 * phi_nsfd(dt, b));
      }
    }
  }
  for (double dx : {0.05, 0.2, 0.5}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {-1.0, 0.0, 1.0}) {
        const double want = psi2_nsfd(dx, b / a);
        CHECK(std::fabs(psi2_esddfd(dx, a, b, 0.0) - want) <= 1e-14 * want);
      }
    }
  }
}

TEST_CASE("limit consistency: denominators tend to the step") {
  for (double h : {1e-3, 1e-4, 1e-5}) {
    for (double p : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
      CHECK(std::fabs(phi_nsfd(h, p) / h - 1.0) <= 10.0 * h);
      CHECK(std::fabs(std::sqrt(psi2_nsfd(h, p)) / h - 1.0) <= 10.0 * h);
      CHECK(std::fabs(phi_esddfd(h, 1.0, p, 1.2) / h - 1.0) <= 10.0 * h);
      CHECK(std::fabs(std::sqrt(psi2_esddfd(h, 1.0, p, 0.7)) / h - 1.0) <= 10.0 * h);
    }
    for (auto v : {GalleryVariant::H, GalleryVariant::OneMinusExpNegH, GalleryVariant::ExpHMinusOne,
                   GalleryVariant::SinH}) {
      CHECK(std::fabs(gallery_phi(v, h).value / h - 1.0) <= 10.0 * h);
    }
    for (double alpha : {1.0}) {
      CHECK(std::fabs(mu_exact_step(ExactKind::Conformable, 1.5, alpha, 0.0, h) / h - 1.0) <= 10.0 * h);
      CHECK(std::fabs(mu_exact_step(ExactKind::MittagLeffler, 1.5, alpha, 0.0, h) / h - 1.0) <= 10.0 * h);
    }
  }
}

TEST_CASE("phi_nsfd is strictly increasing in its rate") {
  double prev = phi_nsfd(0.3, -10.0);
  for (int i = -99; i <= 100; ++i) {
    const double v = phi_nsfd(0.3, 0.1 * i);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("exact step measures") {
  const double h = 0.25;
  const double lambda = 1.7;
  CHECK(rel_err(mu_exact_step(ExactKind::Conformable, lambda, 1.0, 0.0, h), -std::expm1(-lambda * h) / lambda) <=
        1e-15);
  CHECK(rel_err(mu_exact_step(ExactKind::Conformable, 1.0, 0.5, 0.0, 1.0), 0.6321205588285577) <= 1e-15);
  for (double tn : {0.0, 0.5, 2.0}) {
    const double c = mu_exact_step(ExactKind::Conformable, lambda, 1.0, tn, tn + h);
    const double m = mu_exact_step(ExactKind::MittagLeffler, lambda, 1.0, tn, tn + h);
    CHECK(rel_err(m, c) <= 1e-10);
  }
  // One step of y (1 - lambda mu) reproduces the propagator ratio.
  const double alpha = 0.6;
  const double y1 = specfun::mittag_leffler(alpha, -lambda * std::pow(0.3, alpha));
  const double y2 = specfun::mittag_leffler(alpha, -lambda * std::pow(0.55, alpha));
  const double mu = mu_exact_step(ExactKind::MittagLeffler, lambda, alpha, 0.3, 0.55);
  CHECK(rel_err(y1 * (1.0 - lambda * mu), y2) <= 1e-13);
  // Not translation invariant for alpha < 1.
  CHECK(mu_exact_step(ExactKind::Conformable, 1.0, 0.5, 0.0, 0.1) !=
        doctest::Approx(mu_exact_step(ExactKind::Conformable, 1.0, 0.5, 1.0, 1.1)));
  CHECK_THROWS_AS(mu_exact_step(ExactKind::Conformable, 1.0, 0.5, 1.0, 1.0), domain_error);
  CHECK_THROWS_AS(mu_exact_step(ExactKind::MittagLeffler, 1.0, 1.2, 0.0, 1.0), domain_error);
}

TEST_CASE("gallery of acceptable denominators") {
  CHECK(gallery_phi(GalleryVariant::H, 0.3).value == 0.3);
  CHECK(rel_err(gallery_phi(GalleryVariant::OneMinusExpNegH, 1.0).value, 0.6321205588285577) <= 1e-15);
  CHECK(rel_err(gallery_phi(GalleryVariant::ExpHMinusOne, 1.0).value, 1.718281828459045) <= 1e-15);
  const auto at_pi = gallery_phi(GalleryVariant::SinH, M_PI);
  CHECK(at_pi.value == 0.0);
  CHECK(at_pi.degenerate);
  CHECK(gallery_phi(GalleryVariant::SinH, 4.0).degenerate);
  CHECK_FALSE(gallery_phi(GalleryVariant::SinH, 1.0).degenerate);
}

TEST_CASE("evaluate dispatches every denominator kind") {
  CHECK(evaluate(Standard{0.2}) == 0.2);
  CHECK(evaluate(NsfdTime{1.0, 1.0}) == phi_nsfd(1.0, 1.0));
  CHECK(evaluate(NsfdSpace{1.0, 1.0}) == psi2_nsfd(1.0, 1.0));
  CHECK(evaluate(EsddfdTime{0.1, 1.0, 0.0, 1.0}) == phi_esddfd(0.1, 1.0, 0.0, 1.0));
  CHECK(evaluate(EsddfdSpace{0.5, 1.0, 0.0, 1.0}) == psi2_esddfd(0.5, 1.0, 0.0, 1.0));
  CHECK(evaluate(ConformableExact{1.0, 0.5, 0.0, 1.0}) == mu_exact_step(ExactKind::Conformable, 1.0, 0.5, 0.0, 1.0));
  CHECK(evaluate(MlExact{1.0, 0.5, 0.0, 1.0}) == mu_exact_step(ExactKind::MittagLeffler, 1.0, 0.5, 0.0, 1.0));
  CHECK(evaluate(Gallery{GalleryVariant::SinH, M_PI}) == 0.0);
}
