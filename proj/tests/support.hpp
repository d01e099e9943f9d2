#pragma once

// Independent reference implementations used only by tests. None of these
// share code with the library paths they check.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vsalisp/hypervector.hpp"
#include "vsalisp/rng.hpp"
#include "vsalisp/sexpr.hpp"

namespace vsalisp::testing {

/// Direct O(n^2) circular convolution: w_k = sum_j u_j v_{(k - j) mod n}.
inline std::vector<double> naive_convolve(const std::vector<double>& u,
                                          const std::vector<double>& v) {
  const std::size_t n = u.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) acc += static_cast<long double>(u[j]) * v[(k + n - j) % n];
    w[k] = static_cast<double>(acc);
  }
  return w;
}

/// Direct circular correlation: w_k = sum_j u_j v_{(k + j) mod n}.
inline std::vector<double> naive_correlate(const std::vector<double>& u,
                                           const std::vector<double>& v) {
  const std::size_t n = u.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) acc += static_cast<long double>(u[j]) * v[(k + j) % n];
    w[k] = static_cast<double>(acc);
  }
  return w;
}

inline double naive_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0.0;
  return static_cast<double>(ab / std::sqrt(aa * bb));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Gaussian vector with N(0, 1/n) components.
inline Hypervector gaussian(std::size_t n, Rng& rng) {
  Hypervector v(n);
  const double sd = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal(0.0, sd);
  return v;
}

/// Random tree of bounded depth over atoms A0..A{atoms-1}. At depth 0 only
/// atoms are produced.
inline SExpr random_tree(Rng& rng, std::size_t depth, std::size_t atoms, double pair_prob = 0.6) {
  if (depth == 0 || rng.uniform() >= pair_prob) {
    const auto k = rng.below(atoms + 1);
    if (k == atoms) return SExpr::nil();
    return SExpr::atom("A" + std::to_string(k));
  }
  SExpr l = random_tree(rng, depth - 1, atoms, pair_prob);
  SExpr r = random_tree(rng, depth - 1, atoms, pair_prob);
  return SExpr::cons(std::move(l), std::move(r));
}

}  // namespace vsalisp::testing
