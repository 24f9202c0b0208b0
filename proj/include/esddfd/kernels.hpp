#pragma once

// Data-parallel inner loops of the PDE solvers. Each kernel has a serial
// reference and an OpenMP version; both evaluate every output element with
// the same arithmetic in the same order, so their results are bit-identical.

#include <complex>
#include <cstdint>
#include <span>

namespace esddfd::kernels {

enum class Exec : std::uint8_t { Serial, Parallel };

/// Coefficients of u_m + tau (sigma (u_{m+1} - 2 u_m + u_{m-1}) + b u_m):
/// tau is the time denominator, sigma = a / (space denominator)^2.
struct ExplicitStencil {
  double tau = 0.0;
  double sigma = 0.0;
  double b = 0.0;
};

/// Periodic: every node is updated with wrap-around neighbours.
/// Otherwise the two end nodes are copied unchanged.
void explicit_update_serial(std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                            bool periodic);
void explicit_update_parallel(std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                              bool periodic);
void explicit_update(Exec exec, std::span<const double> in, std::span<double> out, const ExplicitStencil& c,
                     bool periodic);

/// Naive discrete Fourier transform
///   out_j = sum_m in_m exp(sign 2 pi i j m / M),  sign = -1 forward, +1 inverse
/// (unnormalised). in and out must not alias.
void dft_serial(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign);
void dft_parallel(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign);
void dft(Exec exec, std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign);

/// Arrays shorter than this run the parallel kernels on one thread.
inline constexpr std::size_t kParallelThreshold = 2048;

}  // namespace esddfd::kernels
