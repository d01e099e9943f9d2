#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vsalisp/config.hpp"

namespace vsalisp {

/// A tab-separated table preceded by "# key: value" lines recording the
/// configuration that produced it.
struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_tsv() const;
  /// Looks up a cell by row index and column name.
  const std::string& cell(std::size_t row, const std::string& column) const;
};

struct KanervaOptions {
  std::size_t sublists = 50;
  std::size_t vocabulary = 20;
  std::size_t max_length = 5;
};

/// Lists built as cons(a, b) = a + P(b) for a fixed permutation P. Every
/// stored sublist is probed against a memory holding all sublists and
/// atoms; the report gives how often the nearest row is the sublist itself
/// and how often it is the list's first element (what car would need).
Report bench_kanerva(const SessionConfig& config, const KanervaOptions& opts = {});

struct CapacityOptions {
  std::vector<std::size_t> trace_counts = {16, 64, 256, 1024, 4096};
  std::size_t probes = 200;
  /// Norm of the Gaussian noise added to a unit trace for noisy probes.
  double noise = 0.5;
};

/// Recall accuracy against the number of stored traces for every memory kind.
Report bench_capacity(const SessionConfig& config, const CapacityOptions& opts = {});

struct UpdateRuleOptions {
  std::vector<double> gammas = {0.0, 0.1, 1.0, 10.0, 100.0, 1000.0};
  std::size_t traces = 64;
  std::size_t trials = 20;
  double noise = 0.3;
};

/// One interpolated-rule step per trial, pulling the probed row towards a
/// new target, swept over gamma. Reports the change in the other rows and
/// whether every stored trace is still recalled from its clean probe.
Report bench_update_rules(const SessionConfig& config, const UpdateRuleOptions& opts = {});

}  // namespace vsalisp
