#include "vsalisp/hypervector.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "vsalisp/rng.hpp"

namespace vsalisp {
namespace {

using ConstMap = Eigen::Map<const Eigen::VectorXd>;
using Map = Eigen::Map<Eigen::VectorXd>;

ConstMap view(const Hypervector& v) {
  return ConstMap(v.data(), static_cast<Eigen::Index>(v.size()));
}
Map view(Hypervector& v) { return Map(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

Hypervector Hypervector::impulse(std::size_t dim) {
  Hypervector v(dim);
  if (dim > 0) v[0] = 1.0;
  return v;
}

double Hypervector::dot(const Hypervector& other) const {
  require_same_dim(*this, other);
  return view(*this).dot(view(other));
}

double Hypervector::norm() const { return view(*this).norm(); }

bool Hypervector::all_finite() const { return view(*this).allFinite(); }

Hypervector& Hypervector::operator+=(const Hypervector& rhs) {
  require_same_dim(*this, rhs);
  view(*this) += view(rhs);
  return *this;
}

Hypervector& Hypervector::operator-=(const Hypervector& rhs) {
  require_same_dim(*this, rhs);
  view(*this) -= view(rhs);
  return *this;
}

Hypervector& Hypervector::operator*=(double s) {
  view(*this) *= s;
  return *this;
}

void Thresholds::validate() const {
  if (!(up > 0.0 && up <= 1.0)) throw Error("theta_up must lie in (0, 1]");
  if (!(down >= 0.0 && down < 1.0)) throw Error("theta_down must lie in [0, 1)");
  if (!(down < up)) throw Error("theta_down must be below theta_up");
}

Hypervector superpose(const Hypervector& u, const Hypervector& v) { return u + v; }

Hypervector bind(const Hypervector& u, const Hypervector& v) {
  require_same_dim(u, v);
  Hypervector out(u.size());
  detail::RealFft::convolve(u.span(), v.span(), out.span());
  return out;
}

Hypervector involution(const Hypervector& u) {
  const std::size_t n = u.size();
  Hypervector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[(n - i) % n];
  return out;
}

Hypervector unbind(const Hypervector& u, const Hypervector& w) {
  require_same_dim(u, w);
  Hypervector out(u.size());
  // conj(FFT(u)) is the spectrum of involution(u) for real u.
  detail::RealFft::correlate(u.span(), w.span(), out.span());
  return out;
}

Hypervector make_unitary(const Hypervector& u) {
  Hypervector out(u.size());
  detail::RealFft::unit_spectrum(u.span(), out.span());
  return out;
}

double similarity(const Hypervector& u, const Hypervector& v) {
  require_same_dim(u, v);
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  // Rounding in the norms would otherwise leave sim(v, v) a ulp short of 1.
  if (u == v) return 1.0;
  const double s = u.dot(v) / (nu * nv);
  return std::clamp(s, -1.0, 1.0);
}

Hypervector normalize(const Hypervector& v) {
  const double n = v.norm();
  if (n == 0.0 || !std::isfinite(n)) throw DegenerateVector("degenerate normalization");
  return v * (1.0 / n);
}

Hypervector reject(const Hypervector& u, const Hypervector& v) {
  require_same_dim(u, v);
  const double vv = v.dot(v);
  if (vv == 0.0) throw DegenerateVector("rejection onto the zero vector");
  return u - v * (u.dot(v) / vv);
}

Permutation::Permutation(std::size_t dim, std::uint64_t seed) : forward_(dim), inverse_(dim) {
  std::iota(forward_.begin(), forward_.end(), std::size_t{0});
  Rng rng(splitmix64(seed ^ 0x5045524d55544531ULL));
  for (std::size_t i = dim; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(forward_[i - 1], forward_[j]);
  }
  for (std::size_t i = 0; i < dim; ++i) inverse_[forward_[i]] = i;
}

Hypervector Permutation::apply(const Hypervector& v, Direction dir) const {
  if (v.size() != forward_.size()) throw DimensionMismatch(v.size(), forward_.size());
  const auto& idx = dir == Direction::Forward ? forward_ : inverse_;
  Hypervector out(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = v[i];
  return out;
}

Hypervector saturating_add(const LazyVector& a, const LazyVector& b, const Thresholds& t,
                           SatBranch* taken) {
  Hypervector left = a();
  const double mag = left.norm();
  if (mag > t.up) {
    if (taken) *taken = SatBranch::Left;
    return left;
  }
  if (mag < t.down) {
    if (taken) *taken = SatBranch::Right;
    return b();
  }
  if (taken) *taken = SatBranch::Blend;
  Hypervector right = b();
  return normalize(left + right);
}

Hypervector gated_saturating_add(double gate, const LazyVector& value, const LazyVector& rest,
                                 const Thresholds& t, SatBranch* taken) {
  const double mag = std::abs(gate);
  if (mag > t.up) {
    if (taken) *taken = SatBranch::Left;
    return value() * gate;
  }
  if (mag < t.down) {
    if (taken) *taken = SatBranch::Right;
    return rest();
  }
  if (taken) *taken = SatBranch::Blend;
  Hypervector left = value() * gate;
  Hypervector right = rest();
  return normalize(left + right);
}

}  // namespace vsalisp
