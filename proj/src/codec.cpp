#include "vsalisp/codec.hpp"

#include <Eigen/Dense>

#include <array>

namespace vsalisp {

TagSet TagSet::load(AtomRegistry& registry) {
  TagSet t;
  // The role tags are unitary. With Gaussian tags, nesting multiplies their
  // spectra together, deep pairs concentrate on the same few frequency bins,
  // and unrelated nested pairs end up correlated no matter how large n is.
  t.left = make_unitary(registry.atom(reserved::kLeft));
  t.right = make_unitary(registry.atom(reserved::kRight));
  t.phi = registry.atom(reserved::kPhi);
  t.rho = registry.atom(reserved::kRho);
  t.nil = registry.atom("NIL");
  t.t = registry.atom("T");
  t.f = registry.atom("F");
  t.done = registry.atom(reserved::kDone);
  return t;
}

Codec::Codec(AtomRegistry& registry, CleanupMemory& memory, Thresholds thresholds,
             std::size_t depth_limit)
    : registry_(registry),
      memory_(memory),
      thresholds_(thresholds),
      depth_limit_(depth_limit),
      tags_(TagSet::load(registry)) {
  thresholds_.validate();
  if (registry.dim() != memory.dim()) throw DimensionMismatch(registry.dim(), memory.dim());
}

Hypervector Codec::cons(const Hypervector& a, const Hypervector& b) {
  Hypervector sum = bind(tags_.left, a);
  sum += bind(tags_.right, b);
  sum += tags_.phi;
  Hypervector out = normalize(sum);
  memory_.append_trace(a);
  memory_.append_trace(b);
  return out;
}

std::pair<Hypervector, Hypervector> Codec::split(const Hypervector& c) const {
  Hypervector a = memory_.recall(unbind(tags_.left, c));
  Hypervector b = memory_.recall(unbind(tags_.right, c));
  for (std::size_t round = 0; round < kSplitRounds; ++round) {
    const Hypervector la = bind(tags_.left, a);
    const Hypervector rb = bind(tags_.right, b);
    const std::array<const Hypervector*, 4> basis = {&la, &rb, &tags_.phi, &tags_.rho};
    Eigen::Matrix4d gram;
    Eigen::Vector4d rhs;
    for (std::size_t i = 0; i < 4; ++i) {
      rhs[static_cast<Eigen::Index>(i)] = basis[i]->dot(c);
      for (std::size_t j = 0; j < 4; ++j) {
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[i]->dot(*basis[j]);
      }
    }
    const Eigen::LDLT<Eigen::Matrix4d> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) break;
    const Eigen::Vector4d w = ldlt.solve(rhs);
    if (!w.allFinite()) break;
    const Hypervector shared = w[2] * tags_.phi + w[3] * tags_.rho;
    Hypervector next_a = memory_.recall(unbind(tags_.left, c - w[1] * rb - shared));
    Hypervector next_b = memory_.recall(unbind(tags_.right, c - w[0] * la - shared));
    const bool settled = next_a == a && next_b == b;
    a = std::move(next_a);
    b = std::move(next_b);
    if (settled) break;
  }
  return {std::move(a), std::move(b)};
}

bool Codec::is_atomic(const Hypervector& v) const {
  return similarity(v, tags_.phi) < thresholds_.down;
}

Hypervector Codec::encode(const SExpr& e) {
  if (e.is_atom()) return registry_.atom(e.name());
  Hypervector a = encode(e.car());
  Hypervector b = encode(e.cdr());
  return cons(a, b);
}

SExpr Codec::decode(const Hypervector& v) const { return decode_at(v, 0); }

SExpr Codec::decode_at(const Hypervector& v, std::size_t depth) const {
  if (depth > depth_limit_) throw DecodeDivergence();
  if (is_atomic(v)) return SExpr::atom(registry_.nearest(v));
  const auto [car_v, cdr_v] = split(v);
  SExpr left = decode_at(car_v, depth + 1);
  SExpr right = decode_at(cdr_v, depth + 1);
  return SExpr::cons(std::move(left), std::move(right));
}

}  // namespace vsalisp
