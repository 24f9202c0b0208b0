#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "esddfd/kernels.hpp"

using namespace esddfd::kernels;

namespace {

std::vector<double> random_frame(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = u(gen);
  }
  return v;
}

bool bit_equal(const void* a, const void* b, std::size_t bytes) { return std::memcmp(a, b, bytes) == 0; }

}  // namespace

TEST_CASE("explicit update matches the stencil formula") {
  const std::vector<double> in{1.0, 2.0, 4.0, 8.0};
  std::vector<double> out(4);
  const ExplicitStencil c{0.1, 2.0, -1.0};
  explicit_update_serial(in, out, c, true);
  CHECK(out[0] == doctest::Approx(1.0 + 0.1 * (2.0 * (2.0 - 2.0 + 8.0) - 1.0)));
  CHECK(out[2] == doctest::Approx(4.0 + 0.1 * (2.0 * (8.0 - 8.0 + 2.0) - 4.0)));
  explicit_update_serial(in, out, c, false);
  CHECK(out[0] == 1.0);
  CHECK(out[3] == 8.0);
}

TEST_CASE("serial and parallel stencils are bit-identical") {
  for (std::size_t n : {3u, 17u, 2048u, 10000u}) {
    const auto in = random_frame(n, static_cast<unsigned>(n));
    std::vector<double> s(n);
    std::vector<double> p(n);
    for (bool periodic : {true, false}) {
      const ExplicitStencil c{0.013, 37.5, 0.4};
      explicit_update_serial(in, s, c, periodic);
      explicit_update_parallel(in, p, c, periodic);
      CHECK(bit_equal(s.data(), p.data(), n * sizeof(double)));
    }
  }
}

TEST_CASE("dft of a single mode") {
  const int m = 16;
  std::vector<std::complex<double>> in(m);
  for (int i = 0; i < m; ++i) {
    in[i] = std::sin(2.0 * M_PI * 3.0 * i / m);
  }
  std::vector<std::complex<double>> out(m);
  dft_serial(in, out, -1);
  for (int j = 0; j < m; ++j) {
    const double want = j == 3 ? -m / 2.0 : (j == m - 3 ? m / 2.0 : 0.0);
    CHECK(std::abs(out[j] - std::complex<double>(0.0, want)) <= 1e-12);
  }
}

TEST_CASE("dft round trip") {
  const std::size_t m = 100;
  const auto re = random_frame(m, 7);
  std::vector<std::complex<double>> in(re.begin(), re.end());
  std::vector<std::complex<double>> f(m);
  std::vector<std::complex<double>> back(m);
  dft(Exec::Serial, in, f, -1);
  dft(Exec::Serial, f, back, +1);
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(std::abs(back[i] / static_cast<double>(m) - in[i]) <= 1e-13);
  }
}

TEST_CASE("serial and parallel dft are bit-identical") {
  for (std::size_t m : {5u, 64u, 3000u}) {
    const auto re = random_frame(m, 11);
    std::vector<std::complex<double>> in(re.begin(), re.end());
    std::vector<std::complex<double>> s(m);
    std::vector<std::complex<double>> p(m);
    for (int sign : {-1, 1}) {
      dft_serial(in, s, sign);
      dft_parallel(in, p, sign);
      CHECK(bit_equal(s.data(), p.data(), m * sizeof(std::complex<double>)));
    }
  }
}
