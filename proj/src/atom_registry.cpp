#include "vsalisp/atom_registry.hpp"

#include <cmath>

#include "vsalisp/rng.hpp"

namespace vsalisp {

AtomRegistry::AtomRegistry(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim == 0) throw Error("registry dimension must be positive");
}

Hypervector AtomRegistry::sample(std::size_t dim, std::uint64_t seed, std::string_view name) {
  Rng rng(splitmix64(seed) ^ fnv1a64(name));
  const double stddev = 1.0 / std::sqrt(static_cast<double>(dim));
  Hypervector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.normal(0.0, stddev);
  return v;
}

const Hypervector& AtomRegistry::atom(std::string_view name) {
  if (name.empty()) throw Error("atom name must be nonempty");
  std::lock_guard lock(mu_);
  auto it = entries_.find(name);
  if (it != entries_.end()) return it->second;
  return entries_.emplace(std::string(name), sample(dim_, seed_, name)).first->second;
}

bool AtomRegistry::contains(std::string_view name) const {
  std::lock_guard lock(mu_);
  return entries_.find(name) != entries_.end();
}

std::size_t AtomRegistry::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::vector<std::string> AtomRegistry::names() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

std::string AtomRegistry::nearest(const Hypervector& v, double* best_similarity) const {
  std::lock_guard lock(mu_);
  if (entries_.empty()) throw Error("empty atom registry");
  const std::string* best = nullptr;
  double best_sim = -2.0;
  for (const auto& [name, vec] : entries_) {
    const double s = similarity(v, vec);
    if (s > best_sim) {
      best_sim = s;
      best = &name;
    }
  }
  if (best_similarity) *best_similarity = best_sim;
  return *best;
}

}  // namespace vsalisp
