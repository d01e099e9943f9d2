#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace vsalisp::detail {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuf = std::unique_ptr<double[], FftwFree>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuf alloc_real(std::size_t n) { return RealBuf(fftw_alloc_real(n)); }
ComplexBuf alloc_complex(std::size_t n) { return ComplexBuf(fftw_alloc_complex(n)); }

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not thread safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t half = n / 2 + 1;
  RealBuf r = alloc_real(n);
  ComplexBuf c = alloc_complex(half);
  PlanPair p;
  const int len = static_cast<int>(n);
  p.forward = fftw_plan_dft_r2c_1d(len, r.get(), c.get(), FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r_1d(len, c.get(), r.get(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

struct Scratch {
  std::size_t n = 0;
  RealBuf real;
  ComplexBuf spec_a;
  ComplexBuf spec_b;

  void ensure(std::size_t len) {
    if (n == len) return;
    n = len;
    real = alloc_real(len);
    spec_a = alloc_complex(len / 2 + 1);
    spec_b = alloc_complex(len / 2 + 1);
  }
};

}  // namespace

void RealFft::run(std::span<const double> a, std::span<const double> b, std::span<double> out,
                  bool conjugate_a) {
  const std::size_t n = a.size();
  if (n == 0) return;
  const PlanPair& plans = plans_for(n);
  thread_local Scratch s;
  s.ensure(n);

  const std::size_t half = n / 2 + 1;
  std::copy(a.begin(), a.end(), s.real.get());
  fftw_execute_dft_r2c(plans.forward, s.real.get(), s.spec_a.get());
  std::copy(b.begin(), b.end(), s.real.get());
  fftw_execute_dft_r2c(plans.forward, s.real.get(), s.spec_b.get());

  for (std::size_t k = 0; k < half; ++k) {
    const double ar = s.spec_a[k][0];
    const double ai = conjugate_a ? -s.spec_a[k][1] : s.spec_a[k][1];
    const double br = s.spec_b[k][0];
    const double bi = s.spec_b[k][1];
    s.spec_a[k][0] = ar * br - ai * bi;
    s.spec_a[k][1] = ar * bi + ai * br;
  }
  fftw_execute_dft_c2r(plans.backward, s.spec_a.get(), s.real.get());

  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.real[i] * scale;
}

void RealFft::unit_spectrum(std::span<const double> a, std::span<double> out) {
  const std::size_t n = a.size();
  if (n == 0) return;
  const PlanPair& plans = plans_for(n);
  thread_local Scratch s;
  s.ensure(n);

  const std::size_t half = n / 2 + 1;
  std::copy(a.begin(), a.end(), s.real.get());
  fftw_execute_dft_r2c(plans.forward, s.real.get(), s.spec_a.get());
  for (std::size_t k = 0; k < half; ++k) {
    const double mag = std::hypot(s.spec_a[k][0], s.spec_a[k][1]);
    if (mag > 0.0) {
      s.spec_a[k][0] /= mag;
      s.spec_a[k][1] /= mag;
    } else {
      s.spec_a[k][0] = 1.0;
      s.spec_a[k][1] = 0.0;
    }
  }
  fftw_execute_dft_c2r(plans.backward, s.spec_a.get(), s.real.get());
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.real[i] * scale;
}

void RealFft::convolve(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  run(a, b, out, false);
}

void RealFft::correlate(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  run(a, b, out, true);
}

}  // namespace vsalisp::detail
