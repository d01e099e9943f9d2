#pragma once

#include <cstddef>
#include <cstdint>

#include "vsalisp/cleanup.hpp"
#include "vsalisp/hypervector.hpp"

namespace vsalisp {

/// Dedup threshold that only merges traces equal up to rounding.
inline constexpr double kExactDedup = 1.0 - 1e-12;

struct SessionConfig {
  std::size_t dim = 2048;
  std::uint64_t seed = 1;
  Thresholds thresholds{};
  MemoryKind memory_kind = MemoryKind::Lookup;
  /// Substitution keeps producing near-copies of stored pairs (a body with
  /// one atom replaced four levels down is still 0.997 similar), and each
  /// copy is a distinct value that must stay retrievable. M therefore only
  /// merges exact repeats.
  MemoryParams memory{.dedup = kExactDedup};
  /// Driver steps allowed per top-level evaluation.
  std::size_t step_limit = 100000;
  /// Nesting depth of evaluator frames (bounds native stack use).
  std::size_t depth_limit = 1000;
  std::size_t decode_depth_limit = 64;
  /// Rebuild M from the live definitions after every top-level form, so
  /// intermediate pairs from earlier forms cannot crowd later recalls.
  bool compact_between_forms = true;

  void validate() const;
};

}  // namespace vsalisp
