#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "vsalisp/atom_registry.hpp"
#include "vsalisp/cleanup.hpp"
#include "vsalisp/hypervector.hpp"
#include "vsalisp/sexpr.hpp"

namespace vsalisp {

// Reserved atom names. None of them can be typed at the reader, which only
// accepts alphanumeric atoms, so they never collide with user atoms.
namespace reserved {
inline constexpr std::string_view kLeft = "*L";
inline constexpr std::string_view kRight = "*R";
inline constexpr std::string_view kPhi = "*PHI";
inline constexpr std::string_view kRho = "*RHO";
inline constexpr std::string_view kDone = "*";
inline constexpr std::string_view kGensymPrefix = "*G";
}  // namespace reserved

/// The auxiliary symbols: left/right role markers, the nonatomic marker phi,
/// the relabeled-lambda marker rho, the always-defined NIL/T/F, and the
/// DEFINE result.
struct TagSet {
  Hypervector left, right, phi, rho, nil, t, f, done;

  static TagSet load(AtomRegistry& registry);
  std::array<const Hypervector*, 8> all() const {
    return {&left, &right, &phi, &rho, &nil, &t, &f, &done};
  }
};

/// Maps symbolic trees to hypervectors and back through the pair algebra
///
///   cons(a, b) = normalize(L*a + R*b + phi),  with a and b appended to M
///   car(c)     = M(unbind(L, c))
///   cdr(c)     = M(unbind(R, c))
///
/// where * is circular convolution and M is the cleanup memory. The plain
/// unbind probes carry fixed cross-talk (L'*R*b, L'*phi, ...) which can
/// outweigh the gap between a stored pair and a near-copy of it that differs
/// a few levels down. split() therefore refines both probes: it fits c
/// against L*a, R*b, phi and rho for the current guesses, subtracts every
/// term but the wanted one, and recalls again until the guesses settle.
class Codec {
 public:
  static constexpr std::size_t kDefaultDepthLimit = 64;
  static constexpr std::size_t kSplitRounds = 4;

  Codec(AtomRegistry& registry, CleanupMemory& memory, Thresholds thresholds,
        std::size_t depth_limit = kDefaultDepthLimit);

  AtomRegistry& registry() { return registry_; }
  const AtomRegistry& registry() const { return registry_; }
  CleanupMemory& memory() { return memory_; }
  const CleanupMemory& memory() const { return memory_; }
  const TagSet& tags() const { return tags_; }
  const Thresholds& thresholds() const { return thresholds_; }

  Hypervector cons(const Hypervector& a, const Hypervector& b);
  Hypervector car(const Hypervector& c) const { return split(c).first; }
  Hypervector cdr(const Hypervector& c) const { return split(c).second; }
  /// (car(c), cdr(c)) in one pass.
  std::pair<Hypervector, Hypervector> split(const Hypervector& c) const;

  /// True iff sim(v, phi) < theta_down.
  bool is_atomic(const Hypervector& v) const;

  /// Atoms map to registry vectors; pairs go through cons (with its memory
  /// side effects).
  Hypervector encode(const SExpr& e);

  /// Atomic vectors decode to their nearest registry atom; others recurse
  /// through car/cdr. Throws DecodeDivergence past the depth limit.
  SExpr decode(const Hypervector& v) const;

 private:
  SExpr decode_at(const Hypervector& v, std::size_t depth) const;

  AtomRegistry& registry_;
  CleanupMemory& memory_;
  Thresholds thresholds_;
  std::size_t depth_limit_;
  TagSet tags_;
};

}  // namespace vsalisp
