#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "esddfd/denominators.hpp"
#include "esddfd/errors.hpp"
#include "esddfd/pde_solvers.hpp"
#include "oracles.hpp"

using namespace esddfd;
using namespace esddfd::pde;

namespace {

std::vector<double> sample(const Grid1D& g, auto f) {
  std::vector<double> v(static_cast<std::size_t>(g.m_points));
  for (int m = 0; m < g.m_points; ++m) {
    v[m] = f(g.x(m));
  }
  return v;
}

std::vector<double> random_frame(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = u(gen);
  }
  return v;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::fabs(x[i] - y[i]));
  }
  return worst;
}

double max_abs(const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) {
    worst = std::max(worst, std::fabs(v));
  }
  return worst;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const auto p = Grid1D::periodic(0.0, 2.0 * M_PI, 64);
  CHECK(p.dx == doctest::Approx(2.0 * M_PI / 64));
  CHECK(p.length() == doctest::Approx(2.0 * M_PI));
  const auto d = Grid1D::dirichlet(0.0, 1.0, 11);
  CHECK(d.dx == doctest::Approx(0.1));
  CHECK(d.nodes().back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Grid1D::periodic(0.0, 1.0, 2), domain_error);
  PDEProblem bad{-1.0, 0.0, std::vector<double>(64, 0.0)};
  CHECK_THROWS_AS(bad.validate(p), domain_error);
  PDEProblem short_ic{1.0, 0.0, std::vector<double>(10, 0.0)};
  CHECK_THROWS_AS(short_ic.validate(p), domain_error);
}

TEST_CASE("trivial stepper cases") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const std::vector<double> zero(32, 0.0);
  const PDEProblem p{1.0, 0.5, zero};
  CHECK(step_euler(p, g, 0.01, zero) == zero);
  CHECK(step_nsfd(p, g, 0.01, zero) == zero);
  CHECK(step_esddfd_phys(p, g, 0.01, 1.0, 1.0, zero) == zero);
  const auto u = random_frame(32, 1);
  const PDEProblem still{0.0, 0.0, u};
  CHECK(step_euler(still, g, 0.3, u) == u);
}

TEST_CASE("euler single-mode amplification") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 64);
  const auto u = sample(g, [](double x) { return std::sin(x); });
  const PDEProblem p{1.0, 0.0, u};
  const double dt = 0.001;
  const double gain = 1.0 + dt * (0.0 - 4.0 / (g.dx * g.dx) * std::pow(std::sin(g.dx / 2.0), 2));
  const auto next = step_euler(p, g, dt, u);
  for (int m = 0; m < 64; ++m) {
    CHECK(std::fabs(next[m] - gain * u[m]) <= 1e-12);
  }
  CHECK(amplification_factor(EulerStd{dt}, p, g, 1.0) == doctest::Approx(gain).epsilon(1e-14));
}

TEST_CASE("nsfd: constant frames grow by exp(b dt) at any dt") {
  for (double dx : {0.1, 0.5, 1.0}) {
    const auto g = Grid1D::periodic(0.0, 40.0 * dx, 40);
    const std::vector<double> c(40, 1.7);
    for (double b : {-1.0, 0.5, 2.0}) {
      for (double dt : {0.1, 1.0, 5.0}) {
        const PDEProblem p{1.0, b, c};
        const auto next = step_nsfd(p, g, dt, c);
        const double want = 1.7 * test::hp_exp(b * dt);
        for (double v : next) {
          CHECK(test::rel_err(v, want) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("nsfd: the steady mode is a fixed point") {
  struct Case {
    double dx, dt;
  };
  std::vector<Case> cases;
  for (double dx : {0.5, 1.0}) {
    for (double dt : {0.1, 1.0, 5.0}) {
      cases.push_back({dx, dt});
    }
  }
  cases.push_back({0.1, 0.1});
  cases.push_back({0.1, 1.0});
  for (const auto& c : cases) {
    const int m = 25;
    const double x0 = 0.3;
    const double length = (m - 1) * c.dx;
    const auto g = Grid1D::dirichlet(x0, length, m, std::sin(x0), std::sin(x0 + length));
    const auto u = sample(g, [](double x) { return std::sin(x); });
    const PDEProblem p{1.0, 1.0, u};
    INFO("dx=" << c.dx << " dt=" << c.dt);
    CHECK(max_abs_diff(step_nsfd(p, g, c.dt, u), u) <= 1e-12);
  }
}

TEST_CASE("esddfd physical: reduction to nsfd and matched mode") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const auto u = random_frame(32, 3);
  for (double b : {-0.7, 0.4}) {
    const PDEProblem p{1.3, b, u};
    CHECK(max_abs_diff(step_esddfd_phys(p, g, 0.05, 0.0, 0.0, u), step_nsfd(p, g, 0.05, u)) <= 1e-14);
  }

  const double a = 1.0;
  const double b = 0.5;
  const double k0 = 2.0;
  const auto mode = sample(g, [&](double x) { return std::sin(k0 * x); });
  const PDEProblem p{a, b, mode};
  const double target = 4.0 * std::pow(std::sin(k0 * g.dx / 2.0), 2);
  const double s = test::bisect(
      [&](double s) { return target / denominators::psi2_esddfd(g.dx, a, b, s) - k0 * k0; }, -20.0, 20.0);
  for (double dt : {0.01, 0.5, 3.0}) {
    const auto next = step_esddfd_phys(p, g, dt, k0, s, mode);
    const double gain = test::hp_exp((b - a * k0 * k0) * dt);
    for (int m = 0; m < 32; ++m) {
      CHECK(std::fabs(next[m] - gain * mode[m]) <= 1e-10);
    }
  }
}

TEST_CASE("modal solver is exact for single modes") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const auto u = sample(g, [](double x) { return std::sin(2.0 * x); });
  const PDEProblem p{1.0, 1.0, u};
  const auto traj = evolve_modal(p, g, 0.5, 4);
  REQUIRE(traj.frames.size() == 5);
  CHECK(traj.times.back() == 2.0);
  const auto want = sample(g, [](double x) { return test::hp_exp(-6.0) * std::sin(2.0 * x); });
  CHECK(max_abs_diff(traj.frames.back(), want) <= 1e-10);
  CHECK(traj.imag_residue <= 1e-12);
  CHECK_FALSE(traj.diverged);
}

TEST_CASE("modal solver: unconditional exactness over dt") {
  // a = 2 / k^2 with b = 1 keeps every tested mode at the rate e^{-t}; with
  // fixed a the high modes fall below the roundoff of the sampled data.
  for (int k : {1, 2, 5, 10}) {
    for (double dt : {0.01, 0.1, 1.0}) {
      const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
      const PDEProblem p{2.0 / (k * k), 1.0, sample(g, [&](double x) { return std::sin(k * x); })};
      const int n = static_cast<int>(std::lround(2.0 / dt));
      const auto traj = evolve(EsddfdModal{dt}, p, g, n);
      const auto want = sample(g, [&](double x) { return test::hp_exp(-2.0) * std::sin(k * x); });
      INFO("k=" << k << " dt=" << dt);
      CHECK(max_abs_diff(traj.frames.back(), want) <= 1e-10 * max_abs(want));
      CHECK(traj.imag_residue <= 1e-12);
    }
  }
}

TEST_CASE("modal solver: superposition and the zero mode") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const PDEProblem p{1.0, 0.2, sample(g, [](double x) { return std::sin(x) + 0.25 * std::sin(3.0 * x); })};
  const auto traj = evolve_modal(p, g, 0.25, 8);
  const auto want = sample(g, [](double x) {
    return test::hp_exp(-0.8 * 2.0) * std::sin(x) + 0.25 * test::hp_exp(-8.8 * 2.0) * std::sin(3.0 * x);
  });
  CHECK(max_abs_diff(traj.frames.back(), want) <= 1e-10);

  const PDEProblem flat{1.0, 0.3, std::vector<double>(32, 2.0)};
  const auto one = evolve_modal(flat, g, 0.7, 1);
  for (double v : one.frames.back()) {
    CHECK(test::rel_err(v, 2.0 * test::hp_exp(0.3 * 0.7)) <= 1e-13);
  }
  CHECK_THROWS_AS(evolve_modal(flat, Grid1D::dirichlet(0.0, 1.0, 32), 0.1, 1), domain_error);
}

TEST_CASE("steppers are linear") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 48);
  const auto u = random_frame(48, 5);
  const auto v = random_frame(48, 6);
  const double al = 0.8;
  const double be = -1.9;
  std::vector<double> w(48);
  for (int i = 0; i < 48; ++i) {
    w[i] = al * u[i] + be * v[i];
  }
  const PDEProblem p{0.9, 0.35, u};
  const double dt = 0.002;
  auto check = [&](auto step) {
    const auto su = step(u);
    const auto sv = step(v);
    const auto sw = step(w);
    double worst = 0.0;
    for (int i = 0; i < 48; ++i) {
      worst = std::max(worst, std::fabs(sw[i] - (al * su[i] + be * sv[i])));
    }
    CHECK(worst <= 1e-12);
  };
  check([&](const std::vector<double>& f) { return step_euler(p, g, dt, f); });
  check([&](const std::vector<double>& f) { return step_nsfd(p, g, dt, f); });
  check([&](const std::vector<double>& f) { return step_esddfd_phys(p, g, dt, 1.0, 0.0, f); });
  check([&](const std::vector<double>& f) {
    PDEProblem q = p;
    q.initial_condition = f;
    return evolve_modal(q, g, dt, 1).frames.back();
  });
}

TEST_CASE("reduction chain on random frames") {
  const auto g = Grid1D::periodic(0.0, 3.0, 30);
  const auto u = random_frame(30, 9);
  const PDEProblem zero_b{0.6, 0.0, u};
  CHECK(max_abs_diff(step_nsfd(zero_b, g, 0.001, u), step_euler(zero_b, g, 0.001, u)) <= 1e-12);
  const PDEProblem tiny_b{0.6, 1e-10, u};
  CHECK(max_abs_diff(step_nsfd(tiny_b, g, 0.001, u), step_euler(tiny_b, g, 0.001, u)) <= 1e-12);
  const PDEProblem with_b{0.6, 0.8, u};
  CHECK(max_abs_diff(step_esddfd_phys(with_b, g, 0.001, 0.0, 0.0, u), step_nsfd(with_b, g, 0.001, u)) <= 1e-12);
}

TEST_CASE("serial and parallel steppers agree bitwise") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 4096);
  const auto u = random_frame(4096, 12);
  const PDEProblem p{1.0, 0.1, u};
  CHECK(step_euler(p, g, 1e-7, u, Exec::Serial) == step_euler(p, g, 1e-7, u, Exec::Parallel));
  CHECK(step_nsfd(p, g, 1e-7, u, Exec::Serial) == step_nsfd(p, g, 1e-7, u, Exec::Parallel));
  const auto gs = Grid1D::periodic(0.0, 2.0 * M_PI, 512);
  const PDEProblem ps{1.0, 0.1, random_frame(512, 13)};
  CHECK(evolve_modal(ps, gs, 0.1, 2, Exec::Serial).frames == evolve_modal(ps, gs, 0.1, 2, Exec::Parallel).frames);
}

TEST_CASE("euler is stable iff dt <= dx^2 / 2") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const PDEProblem p{1.0, 0.0, std::vector<double>(32, 0.0)};
  const double bound = g.dx * g.dx / 2.0;
  const double step = bound / 100.0;
  for (int i = 1; i <= 200; ++i) {
    const double dt = i * step;
    if (std::fabs(dt - bound) <= step) {
      continue;
    }
    const bool stable = max_grid_amplification(EulerStd{dt}, p, g) <= 1.0;
    INFO("dt / bound = " << dt / bound);
    CHECK(stable == (dt <= bound));
  }
}

TEST_CASE("amplification factor examples") {
  const auto g = Grid1D::periodic(0.0, 2.0 * M_PI, 32);
  const PDEProblem heat{1.0, 0.0, std::vector<double>(32, 0.0)};
  CHECK(amplification_factor(EulerStd{0.1}, heat, g, 0.0) == 1.0);
  const PDEProblem steady{1.0, 1.0, std::vector<double>(32, 0.0)};
  for (double dt : {0.01, 1.0, 50.0}) {
    CHECK(amplification_factor(EsddfdModal{dt}, steady, g, 1.0) == 1.0);
    CHECK(std::fabs(amplification_factor(Nsfd{dt}, steady, g, 1.0) - 1.0) <= 1e-13 * std::exp(dt));
  }

  const auto fine = Grid1D::periodic(0.0, 2.0, 20);
  const double nyquist = wave_number(fine, 10);
  CHECK(nyquist == doctest::Approx(M_PI / 0.1));
  const double gain = amplification_factor(EulerStd{0.01}, heat, fine, nyquist);
  CHECK(gain == doctest::Approx(-3.0).epsilon(1e-12));
  std::vector<double> alt(20);
  for (int m = 0; m < 20; ++m) {
    alt[m] = (m % 2 == 0) ? 1.0 : -1.0;
  }
  const PDEProblem hp{1.0, 0.0, alt};
  const auto next = step_euler(hp, fine, 0.01, alt);
  for (int m = 0; m < 20; ++m) {
    CHECK(next[m] == doctest::Approx(gain * alt[m]).epsilon(1e-12));
  }
}

TEST_CASE("laplace mode: zero data, convergence, scaling") {
  const auto g0 = Grid1D::dirichlet(0.0, 1.0, 9);
  const PDEProblem zero{1.0, 0.0, std::vector<double>(9, 0.0)};
  for (double y : laplace_mode_solve(zero, g0, 2.0)) {
    CHECK(y == 0.0);
  }

  double prev_err = 0.0;
  double prev_dx = 0.0;
  for (int level = 0; level < 4; ++level) {
    const int n = 8 << level;
    const auto g = Grid1D::dirichlet(0.0, 1.0, n + 1);
    const PDEProblem p{1.0, 0.0, sample(g, [](double x) { return std::sin(M_PI * x); })};
    const auto y = laplace_mode_solve(p, g, 2.0);
    const auto want = sample(g, [](double x) { return std::sin(M_PI * x) / (M_PI * M_PI + 2.0); });
    const double err = max_abs_diff(y, want);
    if (level > 0) {
      const double order = std::log(prev_err / err) / std::log(prev_dx / g.dx);
      INFO("level " << level << " order " << order);
      CHECK(order >= 1.95);
    }
    prev_err = err;
    prev_dx = g.dx;
  }

  const auto g = Grid1D::dirichlet(0.0, 1.0, 33);
  const PDEProblem p{1.0, 0.0, sample(g, [](double x) { return std::sin(M_PI * x); })};
  const double ratio = max_abs(laplace_mode_solve(p, g, 200.0)) / max_abs(laplace_mode_solve(p, g, 100.0));
  CHECK(ratio == doctest::Approx((M_PI * M_PI + 100.0) / (M_PI * M_PI + 200.0)).epsilon(1e-2));
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.6);

  CHECK_THROWS_AS(laplace_mode_solve(p, g, 0.0), domain_error);
  CHECK_THROWS_AS(laplace_mode_solve(p, Grid1D::periodic(0.0, 1.0, 33), 2.0), domain_error);
}
