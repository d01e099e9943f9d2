#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "support.hpp"
#include "vsalisp/atom_registry.hpp"
#include "vsalisp/hypervector.hpp"

namespace vsalisp {
namespace {

using testing::gaussian;
using testing::max_abs_diff;
using testing::naive_convolve;
using testing::naive_correlate;

TEST(Registry, SameNameTwiceIsBitIdentical) {
  AtomRegistry reg(2048, 7);
  const Hypervector a = reg.atom("A");
  EXPECT_EQ(a, reg.atom("A"));
  EXPECT_EQ(reg.size(), 1u);
}

TEST(Registry, ContentsIndependentOfInsertionOrder) {
  AtomRegistry first(256, 3);
  AtomRegistry second(256, 3);
  first.atom("X");
  first.atom("Y");
  second.atom("Y");
  second.atom("X");
  EXPECT_EQ(first.atom("X"), second.atom("X"));
  EXPECT_EQ(first.atom("Y"), AtomRegistry::sample(256, 3, "Y"));
}

TEST(Registry, SeedChangesVectors) {
  EXPECT_FALSE(AtomRegistry::sample(64, 1, "A") == AtomRegistry::sample(64, 2, "A"));
}

TEST(Registry, DistinctAtomsAreDissimilar) {
  AtomRegistry reg(2048, 1);
  EXPECT_LT(std::abs(similarity(reg.atom("A"), reg.atom("B"))), 0.2);
}

TEST(Registry, MeanNormNearOne) {
  AtomRegistry reg(2048, 11);
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) total += reg.atom("N" + std::to_string(i)).norm();
  EXPECT_NEAR(total / 1000.0, 1.0, 0.02);
}

TEST(Registry, RejectsEmptyName) {
  AtomRegistry reg(16, 1);
  EXPECT_THROW(reg.atom(""), Error);
}

TEST(Registry, NearestFindsTheAtom) {
  AtomRegistry reg(1024, 5);
  for (int i = 0; i < 50; ++i) reg.atom("Z" + std::to_string(i));
  double s = 0;
  EXPECT_EQ(reg.nearest(reg.atom("Z17") * 3.0, &s), "Z17");
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Registry, ConcurrentInsertIsConsistent) {
  AtomRegistry reg(128, 9);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&reg] {
      for (int i = 0; i < 100; ++i) reg.atom("C" + std::to_string(i));
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(reg.size(), 100u);
  EXPECT_EQ(reg.atom("C42"), AtomRegistry::sample(128, 9, "C42"));
}

TEST(Superpose, IdentityAndCommutativity) {
  Rng rng(1);
  const Hypervector u = gaussian(64, rng);
  const Hypervector v = gaussian(64, rng);
  EXPECT_EQ(superpose(v, Hypervector::zeros(64)), v);
  EXPECT_EQ(superpose(u, v), superpose(v, u));
}

TEST(Superpose, SumStaysSimilarToOperands) {
  AtomRegistry reg(2048, 2);
  const Hypervector u = normalize(reg.atom("U"));
  const Hypervector v = normalize(reg.atom("V"));
  EXPECT_NEAR(similarity(u + v, u), 1.0 / std::sqrt(2.0), 0.05);
}

TEST(Superpose, DimensionMismatchThrows) {
  EXPECT_THROW(superpose(Hypervector(4), Hypervector(5)), DimensionMismatch);
  EXPECT_THROW(bind(Hypervector(4), Hypervector(5)), DimensionMismatch);
  EXPECT_THROW(similarity(Hypervector(4), Hypervector(5)), DimensionMismatch);
}

TEST(Bind, ImpulseIsIdentity) {
  Rng rng(2);
  const Hypervector v = gaussian(128, rng);
  EXPECT_LT(max_abs_diff(bind(Hypervector::impulse(128), v).components(), v.components()), 1e-12);
}

TEST(Bind, CommutativeExactly) {
  Rng rng(3);
  for (std::size_t n : {7u, 64u, 256u, 1000u, 2048u}) {
    const Hypervector u = gaussian(n, rng);
    const Hypervector v = gaussian(n, rng);
    EXPECT_EQ(bind(u, v), bind(v, u)) << "n=" << n;
  }
}

TEST(Bind, MatchesNaiveConvolution) {
  Rng rng(4);
  for (std::size_t n : {1u, 2u, 3u, 17u, 256u, 500u, 1024u}) {
    const Hypervector u = gaussian(n, rng);
    const Hypervector v = gaussian(n, rng);
    EXPECT_LT(max_abs_diff(bind(u, v).components(), naive_convolve(u.components(), v.components())),
              1e-9)
        << "n=" << n;
  }
}

TEST(Bind, HandWorkedSmallCase) {
  // (1,2,3) * (4,5,6): w0 = 1*4 + 2*6 + 3*5, w1 = 1*5 + 2*4 + 3*6, w2 = 1*6 + 2*5 + 3*4
  const Hypervector w = bind(Hypervector({1, 2, 3}), Hypervector({4, 5, 6}));
  EXPECT_NEAR(w[0], 31, 1e-12);
  EXPECT_NEAR(w[1], 31, 1e-12);
  EXPECT_NEAR(w[2], 28, 1e-12);
}

TEST(Bind, AssociativeAndDistributive) {
  Rng rng(5);
  const std::size_t n = 512;
  const Hypervector a = gaussian(n, rng), b = gaussian(n, rng), c = gaussian(n, rng);
  EXPECT_LT(max_abs_diff(bind(bind(a, b), c).components(), bind(a, bind(b, c)).components()), 1e-6);
  EXPECT_LT(max_abs_diff(bind(a, b + c).components(), (bind(a, b) + bind(a, c)).components()), 1e-9);
}

TEST(Unbind, IsCorrelation) {
  Rng rng(6);
  for (std::size_t n : {5u, 64u, 333u}) {
    const Hypervector u = gaussian(n, rng);
    const Hypervector w = gaussian(n, rng);
    EXPECT_LT(max_abs_diff(unbind(u, w).components(), naive_correlate(u.components(), w.components())),
              1e-9);
    EXPECT_LT(max_abs_diff(unbind(u, w).components(), bind(involution(u), w).components()), 1e-12);
  }
}

TEST(Unbind, ImpulseIsSelfInverse) {
  Rng rng(7);
  const Hypervector w = gaussian(100, rng);
  EXPECT_LT(max_abs_diff(unbind(Hypervector::impulse(100), w).components(), w.components()), 1e-12);
}

TEST(Unbind, InvolutionReversesIndices) {
  const Hypervector v({0, 1, 2, 3, 4});
  EXPECT_EQ(involution(v), Hypervector({0, 4, 3, 2, 1}));
}

TEST(Unbind, RecoversOperandBySimilarity) {
  AtomRegistry reg(2048, 8);
  double worst = 1.0;
  for (int i = 0; i < 100; ++i) {
    const auto& u = reg.atom("U" + std::to_string(i));
    const auto& v = reg.atom("V" + std::to_string(i));
    worst = std::min(worst, similarity(unbind(u, bind(u, v)), v));
  }
  EXPECT_GT(worst, 0.5);
}

TEST(Unitary, SpectrumHasUnitModulus) {
  Rng rng(8);
  const Hypervector u = make_unitary(testing::gaussian(64, rng));
  // Naive DFT, independent of FFTW.
  for (std::size_t k = 0; k < 64; ++k) {
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < 64; ++j) {
      const long double angle = -2.0L * 3.14159265358979323846L * static_cast<long double>(j * k) / 64.0L;
      re += u[j] * std::cos(angle);
      im += u[j] * std::sin(angle);
    }
    EXPECT_NEAR(static_cast<double>(std::sqrt(re * re + im * im)), 1.0, 1e-12) << k;
  }
}

TEST(Unitary, BindingIsExactlyInvertible) {
  Rng rng(9);
  const Hypervector u = make_unitary(testing::gaussian(1024, rng));
  const Hypervector x = testing::gaussian(1024, rng);
  const Hypervector bound = bind(u, x);
  EXPECT_NEAR(bound.norm(), x.norm(), 1e-12);
  EXPECT_LT(testing::max_abs_diff(unbind(u, bound).components(), x.components()), 1e-12);
}

TEST(Similarity, BasicValues) {
  Rng rng(9);
  const Hypervector v = gaussian(300, rng);
  EXPECT_NEAR(similarity(v, v), 1.0, 1e-12);
  EXPECT_NEAR(similarity(v, -v), -1.0, 1e-12);
  EXPECT_EQ(similarity(Hypervector::zeros(300), v), 0.0);
  const Hypervector w = gaussian(300, rng);
  EXPECT_NEAR(similarity(v, w), testing::naive_cosine(v.components(), w.components()), 1e-12);
}

TEST(Normalize, UnitNormAndSameDirection) {
  Rng rng(10);
  const Hypervector u = gaussian(200, rng), v = gaussian(200, rng);
  const Hypervector hat = normalize(v);
  EXPECT_NEAR(hat.norm(), 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(normalize(2.0 * hat).components(), hat.components()), 1e-15);
  EXPECT_NEAR(normalize(u + v).norm(), 1.0, 1e-12);
  EXPECT_NEAR(similarity(normalize(v), v), 1.0, 1e-12);
}

TEST(Normalize, ZeroVectorThrows) {
  try {
    normalize(Hypervector::zeros(8));
    FAIL();
  } catch (const DegenerateVector& e) {
    EXPECT_STREQ(e.what(), "degenerate normalization");
  }
}

TEST(Permute, InverseLawAndNorm) {
  Rng rng(11);
  const Permutation p(2048, 42);
  const Hypervector v = gaussian(2048, rng);
  EXPECT_EQ(permute(permute(v, p), p, Direction::Inverse), v);
  EXPECT_NEAR(permute(v, p).norm(), v.norm(), 1e-12);
  EXPECT_LT(std::abs(similarity(permute(v, p), v)), 0.2);
}

TEST(Permute, IsABijection) {
  const Permutation p(97, 1);
  Hypervector v(97);
  for (std::size_t i = 0; i < 97; ++i) v[i] = static_cast<double>(i);
  const Hypervector w = p.apply(v);
  std::set<double> seen(w.components().begin(), w.components().end());
  EXPECT_EQ(seen.size(), 97u);
}

TEST(Reject, Properties) {
  Rng rng(12);
  const Hypervector u = gaussian(256, rng), v = gaussian(256, rng);
  EXPECT_LT(reject(v, v).norm(), 1e-12);
  EXPECT_NEAR(similarity(reject(u, v), v), 0.0, 1e-10);
  const Hypervector x({1, 0, 0}), y({0, 2, 0});
  EXPECT_EQ(reject(x, y), x);
  EXPECT_THROW(reject(u, Hypervector::zeros(256)), DegenerateVector);
}

// ---- saturating addition ---------------------------------------------------

struct Probe {
  int calls = 0;
  Hypervector value;
  LazyVector thunk() {
    return [this] {
      ++calls;
      return value;
    };
  }
};

TEST(SaturatingAdd, UpperSaturationNeverForcesRight) {
  Rng rng(13);
  Probe a{0, normalize(gaussian(64, rng))};
  int diverging_calls = 0;
  LazyVector boom = [&]() -> Hypervector {
    ++diverging_calls;
    throw std::runtime_error("forced the excluded branch");
  };
  SatBranch taken{};
  const Hypervector out = saturating_add(a.thunk(), boom, Thresholds{}, &taken);
  EXPECT_EQ(out, a.value);
  EXPECT_EQ(taken, SatBranch::Left);
  EXPECT_EQ(a.calls, 1);
  EXPECT_EQ(diverging_calls, 0);
}

TEST(SaturatingAdd, LowerSaturationReturnsRight) {
  Rng rng(14);
  Probe a{0, 0.0 * gaussian(64, rng)};
  Probe b{0, gaussian(64, rng)};
  SatBranch taken{};
  EXPECT_EQ(saturating_add(a.thunk(), b.thunk(), Thresholds{}, &taken), b.value);
  EXPECT_EQ(taken, SatBranch::Right);
  EXPECT_EQ(b.calls, 1);
}

TEST(SaturatingAdd, MiddleBlends) {
  Rng rng(15);
  Probe a{0, 0.5 * normalize(gaussian(64, rng))};
  Probe b{0, gaussian(64, rng)};
  SatBranch taken{};
  const Hypervector out = saturating_add(a.thunk(), b.thunk(), Thresholds{}, &taken);
  EXPECT_EQ(taken, SatBranch::Blend);
  EXPECT_LT(max_abs_diff(out.components(), normalize(a.value + b.value).components()), 1e-15);
}

TEST(SaturatingAdd, ErrorsOnlyFromForcedBranches) {
  LazyVector bad = []() -> Hypervector { throw Error("left failed"); };
  LazyVector fine = [] { return Hypervector::impulse(4); };
  EXPECT_THROW(saturating_add(bad, fine, Thresholds{}), Error);
}

TEST(GatedAdd, GateSelectsWithoutForcingTheOtherSide) {
  Rng rng(16);
  Probe value{0, normalize(gaussian(32, rng))};
  Probe rest{0, normalize(gaussian(32, rng))};
  SatBranch taken{};
  EXPECT_EQ(gated_saturating_add(1.0, value.thunk(), rest.thunk(), Thresholds{}, &taken), value.value);
  EXPECT_EQ(taken, SatBranch::Left);
  EXPECT_EQ(rest.calls, 0);
  EXPECT_EQ(gated_saturating_add(0.05, value.thunk(), rest.thunk(), Thresholds{}, &taken), rest.value);
  EXPECT_EQ(taken, SatBranch::Right);
  EXPECT_EQ(value.calls, 1);
  gated_saturating_add(0.5, value.thunk(), rest.thunk(), Thresholds{}, &taken);
  EXPECT_EQ(taken, SatBranch::Blend);
  EXPECT_EQ(value.calls, 2);
  EXPECT_EQ(rest.calls, 2);
}

TEST(GatedAdd, NegativeGateUsesMagnitude) {
  Probe value{0, Hypervector({1, 0})};
  Probe rest{0, Hypervector({0, 1})};
  const Hypervector out = gated_saturating_add(-0.95, value.thunk(), rest.thunk(), Thresholds{});
  EXPECT_EQ(rest.calls, 0);
  EXPECT_NEAR(out[0], -0.95, 1e-15);
}

TEST(Thresholds, Validation) {
  EXPECT_NO_THROW((Thresholds{0.8, 0.2}.validate()));
  EXPECT_THROW((Thresholds{0.2, 0.8}.validate()), Error);
  EXPECT_THROW((Thresholds{1.5, 0.2}.validate()), Error);
  EXPECT_THROW((Thresholds{0.8, -0.1}.validate()), Error);
}

}  // namespace
}  // namespace vsalisp
