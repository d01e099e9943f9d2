#include "vsalisp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "vsalisp/atom_registry.hpp"
#include "vsalisp/cleanup.hpp"
#include "vsalisp/hypervector.hpp"
#include "vsalisp/rng.hpp"

namespace vsalisp {

std::string Report::to_tsv() const {
  std::ostringstream out;
  for (const auto& [key, value] : config) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << '\n';
  }
  return out.str();
}

const std::string& Report::cell(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw Error("no report column " + column);
  return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::pair<std::string, std::string>> describe(const SessionConfig& c,
                                                          std::string_view bench) {
  return {
      {"bench", std::string(bench)},
      {"dim", std::to_string(c.dim)},
      {"seed", std::to_string(c.seed)},
      {"theta_up", fmt_g(c.thresholds.up)},
      {"theta_down", fmt_g(c.thresholds.down)},
      {"memory", std::string(to_string(c.memory_kind))},
      {"beta", fmt_g(c.memory.beta)},
      {"rho", fmt_g(c.memory.rho)},
      {"gamma", fmt_g(c.memory.gamma)},
      {"alpha", fmt_g(c.memory.alpha)},
      {"eta", fmt_g(c.memory.eta)},
  };
}

Hypervector unit_gaussian(std::size_t dim, Rng& rng) {
  Hypervector v(dim);
  const double sd = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.normal(0.0, sd);
  return normalize(v);
}

Hypervector noisy(const Hypervector& v, double noise, Rng& rng) {
  if (noise == 0.0) return v;
  return v + noise * unit_gaussian(v.size(), rng);
}

/// Index of the stored row with the highest cosine to v.
std::size_t nearest_row(const CleanupMemory& mem, const Hypervector& v) {
  const Eigen::VectorXd act = mem.activations(v);
  std::size_t best = 0;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < mem.rows(); ++i) {
    const auto row = mem.row(i);
    double sq = 0.0;
    for (double x : row) sq += x * x;
    const double c = sq > 0.0 ? act[static_cast<Eigen::Index>(i)] / std::sqrt(sq) : 0.0;
    if (c > best_cos) {
      best_cos = c;
      best = i;
    }
  }
  return best;
}

}  // namespace

Report bench_kanerva(const SessionConfig& config, const KanervaOptions& opts) {
  config.validate();
  if (opts.sublists == 0 || opts.vocabulary == 0 || opts.max_length == 0) {
    throw Error("kanerva bench needs positive sizes");
  }
  const std::size_t n = config.dim;
  Rng rng(config.seed ^ 0x6b616e65727661ULL);
  const Permutation perm(n, config.seed);

  std::vector<Hypervector> vocab;
  for (std::size_t i = 0; i < opts.vocabulary; ++i) {
    vocab.push_back(AtomRegistry::sample(n, config.seed, "K" + std::to_string(i)));
  }
  const Hypervector nil = AtomRegistry::sample(n, config.seed, "NIL");

  // Each list contributes all its nonempty suffixes; first elements are kept
  // alongside so the car check knows the right answer. A suffix already
  // stored is skipped: two rows holding the same vector would make "nearest
  // row is itself" depend on tie order.
  std::vector<Hypervector> sublists;
  std::vector<std::size_t> heads;
  std::set<std::vector<std::size_t>> seen;
  const std::size_t distinct_limit = opts.sublists * 1000;
  for (std::size_t attempt = 0; sublists.size() < opts.sublists; ++attempt) {
    if (attempt == distinct_limit) throw Error("kanerva bench: too few distinct sublists");
    const std::size_t len = 1 + rng.below(opts.max_length);
    std::vector<std::size_t> items(len);
    for (auto& it : items) it = rng.below(opts.vocabulary);
    Hypervector acc = nil;
    for (std::size_t i = len; i-- > 0 && sublists.size() < opts.sublists;) {
      acc = vocab[items[i]] + perm.apply(acc);
      if (!seen.insert({items.begin() + static_cast<std::ptrdiff_t>(i), items.end()}).second) {
        continue;
      }
      sublists.push_back(acc);
      heads.push_back(items[i]);
    }
  }

  MemoryParams params = config.memory;
  params.dedup = 1.0 + 1e-9;  // keep every row so indices line up
  CleanupMemory mem(n, MemoryKind::Lookup, params);
  for (const auto& v : vocab) mem.append_trace(v);
  for (const auto& s : sublists) mem.append_trace(s);

  std::size_t self_hits = 0;
  std::size_t car_hits = 0;
  double self_sim = 0.0;
  for (std::size_t i = 0; i < sublists.size(); ++i) {
    const std::size_t best = nearest_row(mem, sublists[i]);
    if (best == opts.vocabulary + i) ++self_hits;
    if (best == heads[i]) ++car_hits;
    self_sim += similarity(mem.trace(best), sublists[i]);
  }
  const double m = static_cast<double>(sublists.size());

  Report r;
  r.config = describe(config, "kanerva");
  r.config.emplace_back("sublists", std::to_string(opts.sublists));
  r.config.emplace_back("vocabulary", std::to_string(opts.vocabulary));
  r.config.emplace_back("max_length", std::to_string(opts.max_length));
  r.columns = {"sublists", "memory_rows", "self_retrieval_rate", "car_retrieval_rate",
               "mean_top_similarity"};
  r.rows.push_back({std::to_string(sublists.size()), std::to_string(mem.rows()),
                    fmt(self_hits / m), fmt(car_hits / m), fmt(self_sim / m)});
  return r;
}

Report bench_capacity(const SessionConfig& config, const CapacityOptions& opts) {
  config.validate();
  if (opts.probes == 0) throw Error("capacity bench needs at least one probe");
  const std::size_t n = config.dim;

  Report r;
  r.config = describe(config, "capacity");
  r.config.emplace_back("probes", std::to_string(opts.probes));
  r.config.emplace_back("noise", fmt_g(opts.noise));
  r.columns = {"memory", "traces", "clean_accuracy", "noisy_accuracy"};

  const MemoryKind kinds[] = {MemoryKind::Lookup, MemoryKind::Mhn, MemoryKind::Minerva2,
                              MemoryKind::Hopfield, MemoryKind::Grossberg};
  for (MemoryKind kind : kinds) {
    for (std::size_t d : opts.trace_counts) {
      if (d == 0) throw Error("trace counts must be positive");
      Rng rng(splitmix64(config.seed) ^ (d * 0x9e3779b97f4a7c15ULL));
      MemoryParams params = config.memory;
      params.dedup = 1.0 + 1e-9;
      CleanupMemory mem(n, kind, params);
      for (std::size_t i = 0; i < d; ++i) mem.append_trace(unit_gaussian(n, rng));

      std::size_t clean_ok = 0;
      std::size_t noisy_ok = 0;
      for (std::size_t k = 0; k < opts.probes; ++k) {
        const std::size_t target = rng.below(d);
        const Hypervector stored = mem.trace(target);
        const Hypervector probes[2] = {stored, noisy(stored, opts.noise, rng)};
        for (int which = 0; which < 2; ++which) {
          Hypervector out;
          try {
            out = mem.recall(probes[which]);
          } catch (const ConvergenceError&) {
            continue;
          }
          if (kind == MemoryKind::Grossberg) {
            // The logistic output sits around 0.5; only its deviation carries
            // the recalled pattern.
            for (std::size_t j = 0; j < n; ++j) out[j] -= 0.5;
          }
          if (nearest_row(mem, out) == target) ++(which == 0 ? clean_ok : noisy_ok);
        }
      }
      const double p = static_cast<double>(opts.probes);
      r.rows.push_back({std::string(to_string(kind)), std::to_string(d), fmt(clean_ok / p),
                        fmt(noisy_ok / p)});
    }
  }
  return r;
}

Report bench_update_rules(const SessionConfig& config, const UpdateRuleOptions& opts) {
  config.validate();
  if (opts.traces < 2 || opts.trials == 0) throw Error("update bench needs >= 2 traces");
  const std::size_t n = config.dim;

  Report r;
  r.config = describe(config, "update_rules");
  r.config.emplace_back("traces", std::to_string(opts.traces));
  r.config.emplace_back("trials", std::to_string(opts.trials));
  r.config.emplace_back("noise", fmt_g(opts.noise));
  r.columns = {"gamma", "interference_max", "interference_mean", "target_step",
               "retained_recall"};

  for (double gamma : opts.gammas) {
    double worst = 0.0;
    double total = 0.0;
    double step = 0.0;
    std::size_t retained = 0;
    std::size_t checked = 0;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      // Identical stores and probes for every gamma, so rows differ only by
      // the rule's weighting.
      Rng rng(splitmix64(config.seed + trial));
      MemoryParams params = config.memory;
      params.gamma = gamma;
      params.dedup = 1.0 + 1e-9;
      CleanupMemory mem(n, MemoryKind::Lookup, params);
      std::vector<Hypervector> original;
      for (std::size_t i = 0; i < opts.traces; ++i) {
        original.push_back(unit_gaussian(n, rng));
        mem.append_trace(original.back());
      }
      const std::size_t target = rng.below(opts.traces);
      const Hypervector probe = noisy(original[target], opts.noise, rng);
      const Hypervector goal = unit_gaussian(n, rng);

      // Squared-error gradient of 0.5 |M_i - goal|^2 for every row.
      RowMatrix grad(static_cast<Eigen::Index>(opts.traces), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < opts.traces; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          grad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              original[i][j] - goal[j];
        }
      }
      update_rule(mem, probe, grad, UpdateRule::RE);

      for (std::size_t i = 0; i < opts.traces; ++i) {
        const double moved = (mem.trace(i) - original[i]).norm();
        if (i == target) {
          step += moved;
          continue;
        }
        worst = std::max(worst, moved);
        total += moved;
        ++checked;
        if (mem.best_row(original[i]) == i) ++retained;
      }
    }
    const double others = static_cast<double>(checked);
    char gbuf[32];
    std::snprintf(gbuf, sizeof gbuf, "%g", gamma);
    r.rows.push_back({gbuf, fmt_g(worst), fmt_g(total / others),
                      fmt(step / static_cast<double>(opts.trials)),
                      fmt(static_cast<double>(retained) / others)});
  }
  return r;
}

}  // namespace vsalisp
