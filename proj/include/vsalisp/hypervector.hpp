#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vsalisp/errors.hpp"

namespace vsalisp {

/// A dense real vector of fixed dimension. Every Lisp value is one of these.
class Hypervector {
 public:
  Hypervector() = default;
  explicit Hypervector(std::size_t dim) : v_(dim, 0.0) {}
  explicit Hypervector(std::vector<double> components) : v_(std::move(components)) {}

  static Hypervector zeros(std::size_t dim) { return Hypervector(dim); }
  /// Unit impulse at index 0, the identity of circular convolution.
  static Hypervector impulse(std::size_t dim);

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<double> span() { return v_; }
  std::span<const double> span() const { return v_; }
  const std::vector<double>& components() const { return v_; }

  double dot(const Hypervector& other) const;
  double norm() const;
  bool all_finite() const;

  Hypervector& operator+=(const Hypervector& rhs);
  Hypervector& operator-=(const Hypervector& rhs);
  Hypervector& operator*=(double s);

  friend Hypervector operator+(Hypervector lhs, const Hypervector& rhs) { return lhs += rhs; }
  friend Hypervector operator-(Hypervector lhs, const Hypervector& rhs) { return lhs -= rhs; }
  friend Hypervector operator*(Hypervector v, double s) { return v *= s; }
  friend Hypervector operator*(double s, Hypervector v) { return v *= s; }
  friend Hypervector operator-(Hypervector v) { return v *= -1.0; }

  /// Bitwise component equality.
  friend bool operator==(const Hypervector& a, const Hypervector& b) { return a.v_ == b.v_; }

 private:
  std::vector<double> v_;
};

inline void require_same_dim(const Hypervector& a, const Hypervector& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
}

/// Saturation thresholds for the lazy addition. Requires 0 <= down < up <= 1.
struct Thresholds {
  double up = 0.8;
  double down = 0.2;

  void validate() const;
};

// ---- HRR algebra ----------------------------------------------------------

Hypervector superpose(const Hypervector& u, const Hypervector& v);

/// Circular convolution, computed through a real FFT.
Hypervector bind(const Hypervector& u, const Hypervector& v);

/// Index-reversal involution: out[i] = u[(-i) mod n].
Hypervector involution(const Hypervector& u);

/// Approximate inverse of bind: bind(involution(u), w).
Hypervector unbind(const Hypervector& u, const Hypervector& w);

/// u with every Fourier coefficient scaled to modulus 1. Binding with a
/// unitary vector preserves norms and spectra, and unbind inverts it exactly.
Hypervector make_unitary(const Hypervector& u);

/// Cosine similarity. Defined as 0 when either side is the zero vector and
/// exactly 1 for identical nonzero vectors.
double similarity(const Hypervector& u, const Hypervector& v);

/// v / |v|. Throws DegenerateVector on the zero vector.
Hypervector normalize(const Hypervector& v);

/// u minus its projection onto v. Throws DegenerateVector if v is zero.
Hypervector reject(const Hypervector& u, const Hypervector& v);

enum class Direction { Forward, Inverse };

/// A fixed pseudorandom shuffle of indices, derived from a seed.
class Permutation {
 public:
  Permutation(std::size_t dim, std::uint64_t seed);

  std::size_t size() const { return forward_.size(); }
  Hypervector apply(const Hypervector& v, Direction dir = Direction::Forward) const;

 private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
};

inline Hypervector permute(const Hypervector& v, const Permutation& p,
                           Direction dir = Direction::Forward) {
  return p.apply(v, dir);
}

// ---- Saturating lazy addition ---------------------------------------------

using LazyVector = std::function<Hypervector()>;

/// Which of the three mutually exclusive cases an addition took.
enum class SatBranch { Left, Right, Blend };

/// a (+) b with saturation on the realized norm of a. b is forced only when
/// |a| <= up; a is always forced.
Hypervector saturating_add(const LazyVector& a, const LazyVector& b, const Thresholds& t,
                           SatBranch* taken = nullptr);

/// (gate * value) (+) rest, with the left operand's magnitude taken as |gate|
/// (all values have unit expected norm). `value` is forced only when the gate
/// selects the left case or the blend; `rest` only for the right case or the
/// blend.
Hypervector gated_saturating_add(double gate, const LazyVector& value, const LazyVector& rest,
                                 const Thresholds& t, SatBranch* taken = nullptr);

}  // namespace vsalisp
