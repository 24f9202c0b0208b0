#include "esddfd/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace esddfd::kernels {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double stencil_point(double left, double centre, double right, const ExplicitStencil& c) {
  return centre + c.tau * (c.sigma * (right - 2.0 * centre + left) + c.b * centre);
}

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) {
    throw std::invalid_argument("kernel input and output sizes differ");
  }
}

// exp(sign 2 pi i j / M) for j = 0..M-1, with symmetric argument reduction
// so that each entry is within an ulp of the exact root of unity.
std::vector<std::complex<double>> twiddles(std::size_t m, int sign) {
  std::vector<std::complex<double>> w(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t jj = (2 * j > m) ? m - j : j;
    const double theta = kTwoPi * static_cast<double>(jj) / static_cast<double>(m);
    const double s = std::sin(theta);
    w[j] = {std::cos(theta), (2 * j > m ? -1.0 : 1.0) * sign * s};
  }
  return w;
}

inline std::complex<double> dft_row(std::span<const std::complex<double>> in,
                                    const std::vector<std::complex<double>>& w, std::size_t j) {
  const std::size_t m = in.size();
  std::complex<double> acc = 0.0;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < m; ++k) {
    acc += in[k] * w[idx];
    idx += j;
    if (idx >= m) {
      idx -= m;
    }
  }
  return acc;
}

}  // namespace

void explicit_update_serial(std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                            bool periodic) {
  check_sizes(in.size(), out.size());
  const std::size_t n = in.size();
  if (n < 3) {
    throw std::invalid_argument("explicit_update needs at least 3 points");
  }
  for (std::size_t m = 1; m + 1 < n; ++m) {
    out[m] = stencil_point(in[m - 1], in[m], in[m + 1], c);
  }
  if (periodic) {
    out[0] = stencil_point(in[n - 1], in[0], in[1], c);
    out[n - 1] = stencil_point(in[n - 2], in[n - 1], in[0], c);
  } else {
    out[0] = in[0];
    out[n - 1] = in[n - 1];
  }
}

void explicit_update_parallel(std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                              bool periodic) {
  check_sizes(in.size(), out.size());
  const std::size_t n = in.size();
  if (n < 3) {
    throw std::invalid_argument("explicit_update needs at least 3 points");
  }
  const auto last = static_cast<std::ptrdiff_t>(n) - 1;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t m = 1; m < last; ++m) {
    out[m] = stencil_point(in[m - 1], in[m], in[m + 1], c);
  }
  if (periodic) {
    out[0] = stencil_point(in[n - 1], in[0], in[1], c);
    out[n - 1] = stencil_point(in[n - 2], in[n - 1], in[0], c);
  } else {
    out[0] = in[0];
    out[n - 1] = in[n - 1];
  }
}

void explicit_update(Exec exec, std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                     bool periodic) {
  if (exec == Exec::Parallel) {
    explicit_update_parallel(in, out, c, periodic);
  } else {
    explicit_update_serial(in, out, c, periodic);
  }
}

void dft_serial(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  check_sizes(in.size(), out.size());
  const auto w = twiddles(in.size(), sign);
  for (std::size_t j = 0; j < in.size(); ++j) {
    out[j] = dft_row(in, w, j);
  }
}

void dft_parallel(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  check_sizes(in.size(), out.size());
  const auto w = twiddles(in.size(), sign);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  // O(M^2) work: worth threading well below the stencil threshold.
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[j] = dft_row(in, w, static_cast<std::size_t>(j));
  }
}

void dft(Exec exec, std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  if (exec == Exec::Parallel) {
    dft_parallel(in, out, sign);
  } else {
    dft_serial(in, out, sign);
  }
}

}  // namespace esddfd::kernels
