#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vsalisp::detail {

/// Circular convolution / correlation of real sequences through FFTW.
/// Plans are created once per length (FFTW_ESTIMATE, so results are
/// reproducible run to run) and shared; execution uses thread-local scratch.
class RealFft {
 public:
  /// out[k] = sum_j a[j] * b[(k - j) mod n]
  static void convolve(std::span<const double> a, std::span<const double> b, std::span<double> out);
  /// out[k] = sum_j a[j] * b[(k + j) mod n], i.e. convolve(involution(a), b).
  static void correlate(std::span<const double> a, std::span<const double> b, std::span<double> out);
  /// out = a with every Fourier coefficient scaled to modulus 1 (zero
  /// coefficients become 1, real-only bins keep their sign).
  static void unit_spectrum(std::span<const double> a, std::span<double> out);

 private:
  static void run(std::span<const double> a, std::span<const double> b, std::span<double> out,
                  bool conjugate_a);
};

}  // namespace vsalisp::detail
