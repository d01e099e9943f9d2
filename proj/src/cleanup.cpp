#include "vsalisp/cleanup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

namespace vsalisp {

std::string_view to_string(MemoryKind kind) {
  switch (kind) {
    case MemoryKind::Lookup: return "lookup";
    case MemoryKind::Mhn: return "mhn";
    case MemoryKind::Minerva2: return "minerva2";
    case MemoryKind::Hopfield: return "hopfield";
    case MemoryKind::Grossberg: return "grossberg";
  }
  return "?";
}

std::optional<MemoryKind> parse_memory_kind(std::string_view name) {
  for (auto k : {MemoryKind::Lookup, MemoryKind::Mhn, MemoryKind::Minerva2, MemoryKind::Hopfield,
                 MemoryKind::Grossberg}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& x) {
  if (x.size() == 0) return x;
  const double mx = x.maxCoeff();
  Eigen::VectorXd e = (x.array() - mx).exp().matrix();
  return e / e.sum();
}

Eigen::VectorXd hardmax(const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  if (x.size() == 0) return out;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (x[i] > x[best]) best = i;
  }
  out[best] = 1.0;
  return out;
}

CleanupMemory::CleanupMemory(std::size_t dim, MemoryKind kind, MemoryParams params)
    : dim_(dim), kind_(kind), params_(params) {
  if (dim == 0) throw Error("memory dimension must be positive");
}

void CleanupMemory::require_rows() const {
  if (rows_ == 0) throw EmptyMemory();
}

std::span<const double> CleanupMemory::row(std::size_t i) const {
  return {data_.data() + i * dim_, dim_};
}

Hypervector CleanupMemory::trace(std::size_t i) const {
  auto r = row(i);
  return Hypervector(std::vector<double>(r.begin(), r.end()));
}

Eigen::Map<const RowMatrix> CleanupMemory::matrix() const {
  return {data_.data(), static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(dim_)};
}

Eigen::VectorXd CleanupMemory::activations(const Hypervector& p) const {
  if (p.size() != dim_) throw DimensionMismatch(p.size(), dim_);
  Eigen::Map<const Eigen::VectorXd> probe(p.data(), static_cast<Eigen::Index>(dim_));
  return matrix() * probe;
}

std::size_t CleanupMemory::best_row(const Hypervector& p) const {
  require_rows();
  const Eigen::VectorXd act = activations(p);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows_; ++i) {
    if (act[static_cast<Eigen::Index>(i)] > act[static_cast<Eigen::Index>(best)]) best = i;
  }
  return best;
}

bool CleanupMemory::append_trace(const Hypervector& t) {
  if (t.size() != dim_) throw DimensionMismatch(t.size(), dim_);
  if (!t.all_finite()) throw Error("trace has non-finite components");
  const double tn = t.norm();
  if (rows_ > 0 && tn > 0.0) {
    const Eigen::VectorXd act = activations(t);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double denom = norms_[i] * tn;
      if (denom > 0.0 && act[static_cast<Eigen::Index>(i)] / denom >= params_.dedup) return false;
    }
  }
  data_.insert(data_.end(), t.components().begin(), t.components().end());
  norms_.push_back(tn);
  ++rows_;
  return true;
}

void CleanupMemory::clear() {
  data_.clear();
  norms_.clear();
  rows_ = 0;
}

void CleanupMemory::replace_trace(std::size_t i, const Hypervector& t) {
  if (t.size() != dim_) throw DimensionMismatch(t.size(), dim_);
  if (i >= rows_) throw Error("trace index out of range");
  std::copy(t.components().begin(), t.components().end(), data_.begin() + i * dim_);
  norms_[i] = t.norm();
}

void CleanupMemory::refresh_norms() {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    double s = 0.0;
    for (double x : r) s += x * x;
    norms_[i] = std::sqrt(s);
  }
}

Hypervector CleanupMemory::combine(const Eigen::VectorXd& weights) const {
  Hypervector out(dim_);
  double* o = out.data();
  for (std::size_t i = 0; i < rows_; ++i) {
    const double w = weights[static_cast<Eigen::Index>(i)];
    if (w == 0.0) continue;
    const double* r = data_.data() + i * dim_;
    for (std::size_t j = 0; j < dim_; ++j) o[j] += w * r[j];
  }
  return out;
}

Hypervector CleanupMemory::recall(const Hypervector& p) const {
  switch (kind_) {
    case MemoryKind::Lookup: return recall_lookup(*this, p);
    case MemoryKind::Mhn: return recall_mhn(*this, p);
    case MemoryKind::Minerva2: {
      const double r = params_.rho;
      return r == std::floor(r) ? recall_minerva2(*this, p) : recall_minerva2_real(*this, p);
    }
    case MemoryKind::Hopfield: return recall_hopfield(*this, p);
    case MemoryKind::Grossberg: return recall_grossberg(*this, p);
  }
  throw InvariantViolation("unknown memory kind");
}

Hypervector recall_lookup(const CleanupMemory& mem, const Hypervector& p) {
  return mem.trace(mem.best_row(p));
}

Hypervector recall_mhn(const CleanupMemory& mem, const Hypervector& p) {
  if (mem.empty()) throw EmptyMemory();
  const Eigen::VectorXd act = mem.activations(p) * mem.params().beta;
  // Unnormalized weights first, then one division, so beta = 0 reproduces
  // the plain row mean exactly.
  const Eigen::VectorXd e = (act.array() - act.maxCoeff()).exp().matrix();
  Hypervector out = mem.combine(e);
  const double total = e.sum();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] /= total;
  return out;
}

namespace {

bool is_odd_integer(double r) {
  if (r != std::floor(r) || !std::isfinite(r)) return false;
  return std::fmod(std::abs(r), 2.0) == 1.0;
}

double int_power(double x, long long k) {
  double result = 1.0;
  double base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace

Hypervector recall_minerva2(const CleanupMemory& mem, const Hypervector& p) {
  if (mem.empty()) throw EmptyMemory();
  const double rho = mem.params().rho;
  if (!is_odd_integer(rho) || rho < 1.0) {
    throw Error("MINERVA2 integer recall requires a positive odd integer power");
  }
  Eigen::VectorXd act = mem.activations(p);
  const auto k = static_cast<long long>(rho);
  for (Eigen::Index i = 0; i < act.size(); ++i) act[i] = int_power(act[i], k);
  return mem.combine(act);
}

Hypervector recall_minerva2_real(const CleanupMemory& mem, const Hypervector& p) {
  if (mem.empty()) throw EmptyMemory();
  const double rho = mem.params().rho;
  Eigen::VectorXd act = mem.activations(p);
  for (Eigen::Index i = 0; i < act.size(); ++i) {
    const double xi = act[i];
    const double sgn = (xi > 0.0) - (xi < 0.0);
    act[i] = sgn * std::pow(sgn * xi, rho);
  }
  return mem.combine(act);
}

Hypervector recall_hopfield(const CleanupMemory& mem, const Hypervector& p) {
  if (mem.empty()) throw EmptyMemory();
  const auto& prm = mem.params();
  Hypervector x = p;
  for (std::size_t it = 0; it < prm.max_iters; ++it) {
    Hypervector next = recall_lookup(mem, x);
    const double step = (next - x).norm();
    x = std::move(next);
    if (step < prm.tol) return x;
  }
  throw ConvergenceError(std::move(x));
}

Hypervector recall_grossberg(const CleanupMemory& mem, const Hypervector& p) {
  if (mem.empty()) throw EmptyMemory();
  Hypervector v = recall_lookup(mem, p) + p;
  double l1 = 0.0;
  for (double x : v.span()) l1 += std::abs(x);
  if (l1 == 0.0) throw DegenerateVector("grossberg recall of a zero vector");
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = 1.0 / (1.0 + std::exp(-v[j] / l1));
  return v;
}

void update_rule(CleanupMemory& mem, const Hypervector& p, const RowMatrix& grad, UpdateRule rule) {
  if (grad.rows() != static_cast<Eigen::Index>(mem.rows_) ||
      grad.cols() != static_cast<Eigen::Index>(mem.dim_)) {
    throw DimensionMismatch(static_cast<std::size_t>(grad.rows() * grad.cols()),
                            mem.rows_ * mem.dim_);
  }
  mem.require_rows();
  const auto& prm = mem.params_;
  Eigen::VectorXd w;
  switch (rule) {
    case UpdateRule::RC:
      w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(mem.rows_));
      break;
    case UpdateRule::RG:
      w = hardmax(mem.activations(p));
      break;
    case UpdateRule::RE:
      w = prm.alpha * softmax(prm.gamma * mem.activations(p));
      break;
  }
  for (std::size_t i = 0; i < mem.rows_; ++i) {
    const double scale = prm.eta * w[static_cast<Eigen::Index>(i)];
    if (rule == UpdateRule::RG && w[static_cast<Eigen::Index>(i)] == 0.0) continue;
    double* r = mem.data_.data() + i * mem.dim_;
    for (std::size_t j = 0; j < mem.dim_; ++j) {
      r[j] -= scale * grad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  mem.refresh_norms();
}

// ---- snapshot -------------------------------------------------------------

namespace {

constexpr std::array<char, 8> kMagic = {'V', 'S', 'A', 'M', 'E', 'M', '0', '1'};

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw Error("truncated memory snapshot");
  return value;
}

}  // namespace

void CleanupMemory::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint64_t>(out, rows_);
  put<std::uint64_t>(out, dim_);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(kind_));
  put<std::uint32_t>(out, 0);
  put<double>(out, params_.beta);
  put<double>(out, params_.rho);
  put<double>(out, params_.gamma);
  put<double>(out, params_.alpha);
  put<double>(out, params_.eta);
  put<std::uint64_t>(out, params_.max_iters);
  put<double>(out, params_.tol);
  put<double>(out, params_.dedup);
  out.write(reinterpret_cast<const char*>(data_.data()),
            static_cast<std::streamsize>(data_.size() * sizeof(double)));
  if (!out) throw Error("failed to write memory snapshot");
}

CleanupMemory CleanupMemory::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error("not a memory snapshot");
  }
  const auto rows = get<std::uint64_t>(in);
  const auto dim = get<std::uint64_t>(in);
  const auto kind = get<std::uint32_t>(in);
  get<std::uint32_t>(in);
  if (kind > static_cast<std::uint32_t>(MemoryKind::Grossberg)) throw Error("bad memory kind");
  MemoryParams p;
  p.beta = get<double>(in);
  p.rho = get<double>(in);
  p.gamma = get<double>(in);
  p.alpha = get<double>(in);
  p.eta = get<double>(in);
  p.max_iters = get<std::uint64_t>(in);
  p.tol = get<double>(in);
  p.dedup = get<double>(in);
  CleanupMemory mem(dim, static_cast<MemoryKind>(kind), p);
  mem.data_.resize(rows * dim);
  if (!in.read(reinterpret_cast<char*>(mem.data_.data()),
               static_cast<std::streamsize>(mem.data_.size() * sizeof(double)))) {
    throw Error("truncated memory snapshot");
  }
  mem.rows_ = rows;
  mem.norms_.resize(rows);
  mem.refresh_norms();
  return mem;
}

}  // namespace vsalisp
