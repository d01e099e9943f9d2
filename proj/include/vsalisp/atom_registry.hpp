#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "vsalisp/hypervector.hpp"

namespace vsalisp {

/// Seeded map from atom names to Gaussian hypervectors with components drawn
/// i.i.d. from N(0, 1/n). The vector for a name depends only on
/// (seed, dim, name), so contents are independent of insertion order.
class AtomRegistry {
 public:
  AtomRegistry(std::size_t dim, std::uint64_t seed);

  AtomRegistry(const AtomRegistry&) = delete;
  AtomRegistry& operator=(const AtomRegistry&) = delete;

  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }

  /// Returns the cached vector for `name`, sampling it on first use.
  /// References stay valid for the registry's lifetime.
  const Hypervector& atom(std::string_view name);
  bool contains(std::string_view name) const;
  std::size_t size() const;
  std::vector<std::string> names() const;

  /// The registered atom most similar to v (ties: lexicographically first).
  std::string nearest(const Hypervector& v, double* best_similarity = nullptr) const;

  /// Deterministic sample without caching; exposed for tests and benches.
  static Hypervector sample(std::size_t dim, std::uint64_t seed, std::string_view name);

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::map<std::string, Hypervector, std::less<>> entries_;
};

}  // namespace vsalisp
