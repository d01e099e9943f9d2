#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "vsalisp/hypervector.hpp"

namespace vsalisp {

// Cleanup memories share the form  tau(sigma(beta * M p) M + q)  where the
// rows of M are stored traces. Only the activation sigma and the optional
// output map tau / bias q differ between kinds.

enum class MemoryKind { Lookup, Mhn, Minerva2, Hopfield, Grossberg };

std::string_view to_string(MemoryKind kind);
std::optional<MemoryKind> parse_memory_kind(std::string_view name);

struct MemoryParams {
  double beta = 1.0;   // MHN inverse temperature
  double rho = 3.0;    // MINERVA2 power
  double gamma = 1.0;  // softmax temperature of the interpolated update rule
  double alpha = 1.0;  // multiplier of the interpolated update rule
  double eta = 0.1;    // learning rate
  std::size_t max_iters = 100;
  double tol = 1e-9;
  /// append_trace skips t if some row already has similarity >= dedup.
  double dedup = 0.99;
};

enum class UpdateRule { RC, RG, RE };

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(Hypervector last)
      : Error("hopfield recall did not converge"), last_(std::move(last)) {}
  const Hypervector& last_iterate() const { return last_; }

 private:
  Hypervector last_;
};

class CleanupMemory {
 public:
  explicit CleanupMemory(std::size_t dim, MemoryKind kind = MemoryKind::Lookup,
                         MemoryParams params = {});

  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return rows_; }
  bool empty() const { return rows_ == 0; }
  MemoryKind kind() const { return kind_; }
  const MemoryParams& params() const { return params_; }
  void set_params(const MemoryParams& p) { params_ = p; }
  void set_kind(MemoryKind k) { kind_ = k; }

  /// Appends t unless a near-duplicate row exists. Returns whether a row was added.
  bool append_trace(const Hypervector& t);
  void replace_trace(std::size_t i, const Hypervector& t);
  void clear();

  Hypervector trace(std::size_t i) const;
  std::span<const double> row(std::size_t i) const;
  Eigen::Map<const RowMatrix> matrix() const;

  /// M p: one dot product per stored row.
  Eigen::VectorXd activations(const Hypervector& p) const;
  /// Index of the largest activation; ties go to the lowest index.
  std::size_t best_row(const Hypervector& p) const;

  /// Recall with this memory's kind.
  Hypervector recall(const Hypervector& p) const;

  /// Row-weighted sum  sum_i w_i M_i, accumulated row by row.
  Hypervector combine(const Eigen::VectorXd& weights) const;

  /// Flat binary snapshot: header (dims, kind, params) then row-major f64.
  void save(std::ostream& out) const;
  static CleanupMemory load(std::istream& in);

  friend void update_rule(CleanupMemory& mem, const Hypervector& p, const RowMatrix& grad,
                          UpdateRule rule);

 private:
  void require_rows() const;
  void refresh_norms();

  std::size_t dim_;
  MemoryKind kind_;
  MemoryParams params_;
  std::size_t rows_ = 0;
  std::vector<double> data_;
  std::vector<double> norms_;
};

/// hardmax(M p) M: exactly one stored row.
Hypervector recall_lookup(const CleanupMemory& mem, const Hypervector& p);
/// softmax(beta M p) M.
Hypervector recall_mhn(const CleanupMemory& mem, const Hypervector& p);
/// (M p)^rho M for odd integer rho.
Hypervector recall_minerva2(const CleanupMemory& mem, const Hypervector& p);
/// sgn(xi) |xi|^rho M with xi = M p, for real rho.
Hypervector recall_minerva2_real(const CleanupMemory& mem, const Hypervector& p);
/// Iterated bulk hardmax recall until the step is below tol.
Hypervector recall_hopfield(const CleanupMemory& mem, const Hypervector& p);
/// logistic(v / |v|_1) applied to v = hardmax(M p) M + p.
Hypervector recall_grossberg(const CleanupMemory& mem, const Hypervector& p);

/// One step of the RC / RG / RE update family. Row i of grad is scaled by
/// the i-th rule weight before being subtracted.
void update_rule(CleanupMemory& mem, const Hypervector& p, const RowMatrix& grad, UpdateRule rule);

Eigen::VectorXd softmax(const Eigen::VectorXd& x);
Eigen::VectorXd hardmax(const Eigen::VectorXd& x);

}  // namespace vsalisp
