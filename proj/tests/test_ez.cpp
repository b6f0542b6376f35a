#include <gtest/gtest.h>

#include <set>

#include "looplab/ez.hpp"

using namespace looplab;
using namespace looplab::algebra;
using namespace looplab::ez;
using simplicial::omega;

namespace {

int choose(int a, int b) {
  int c = 1;
  for (int i = 1; i <= b; ++i) c = c * (a - b + i) / i;
  return c;
}

}  // namespace

TEST(Shuffles, CountsAndPartition) {
  EXPECT_EQ(enumerateShuffles(1, 1).size(), 2U);
  EXPECT_EQ(enumerateShuffles(2, 2).size(), 6U);
  EXPECT_EQ(enumerateShuffles(0, 3).size(), 1U);
  for (int p = 0; p <= 4; ++p) {
    for (int q = 0; q <= 4; ++q) {
      auto all = enumerateShuffles(p, q);
      EXPECT_EQ(all.size(), static_cast<std::size_t>(choose(p + q, p)));
      std::set<std::vector<int>> seen;
      for (const auto& s : all) {
        EXPECT_EQ(s.mu.size(), static_cast<std::size_t>(p));
        EXPECT_EQ(s.nu.size(), static_cast<std::size_t>(q));
        std::vector<int> merged = s.mu;
        merged.insert(merged.end(), s.nu.begin(), s.nu.end());
        std::sort(merged.begin(), merged.end());
        for (int i = 0; i < p + q; ++i) EXPECT_EQ(merged[i], i);
        EXPECT_TRUE(std::is_sorted(s.mu.begin(), s.mu.end()));
        EXPECT_TRUE(seen.insert(s.mu).second);
      }
      for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].mu, all[i].mu);
    }
  }
}

TEST(Rho, OmegaProducts) {
  EXPECT_TRUE(shuffleProduct(omega(1), omega(1)).isZero());
  EXPECT_EQ(shuffleProduct(omega(1), omega(2)), omega(3));
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; p + q <= 5; ++q) {
      auto r = shuffleProduct(omega(p), omega(q));
      EXPECT_EQ(r, choose(p + q, p) % 2 ? omega(p + q) : AlgebraElement::zero(p + q)) << p << "," << q;
    }
  }
}

TEST(Rho, UnitAndDegrees) {
  GradingSpec g(2, 2);
  auto b = yGen(2, 1) * dyGen(2, 2) + xGen(2, 3) * dyGen(2, 1);
  EXPECT_EQ(shuffleProduct(AlgebraElement::one(0), b), b);
  EXPECT_EQ(shuffleProduct(b, AlgebraElement::one(0)), b);
  auto a = xGen(1) * dyGen(1, 1);
  auto r = shuffleProduct(a, b);
  auto da = internalDegree(a, g);
  auto db = internalDegree(b, g);
  auto dr = internalDegree(r, g);
  ASSERT_FALSE(dr.zero);
  EXPECT_FALSE(dr.mixed);
  EXPECT_EQ(dr.degree, da.degree + db.degree);
}

TEST(Forms, Examples) {
  auto a = dyGen(1, 1);
  auto b = xGen(1) * dxGen(1);
  EXPECT_TRUE(mForm(a, a).isZero());
  EXPECT_EQ(mForm(a, b), dyGen(2, 2) * xGen(2) * dxGen(2) + xGen(2) * dxGen(2) * dyGen(2, 1));
  EXPECT_EQ(qForm(a + b), qForm(a) + qForm(b) + mForm(a, b));
  EXPECT_THROW(mForm(a, xGen(2)), UsageError);
}

TEST(DeltaTop, OmegaTwoGivesOmegaFour) {
  simplicial::ResolutionContext ctx(GradingSpec(1, 2), 5);
  EXPECT_EQ(deltaTop(ctx, omega(2)), omega(4));
  EXPECT_TRUE(deltaTop(ctx, omega(3)).isZero());
  EXPECT_THROW(deltaTop(ctx, yGen(1, 1)), UsageError);
}

TEST(DeltaTop, LandsInNormalized) {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {3, 2}}) {
    simplicial::ResolutionContext ctx(GradingSpec(n, m), 5);
    homology::HomologyEngine e(ctx);
    for (int q = 1; q <= 2; ++q) {
      for (int t = 0; t <= q * GradingSpec(n, m).degDy() + 2 * m; ++t) {
        const auto cycles = e.cycles(q, t);
        for (const auto& v : cycles.basis()) {
          auto z = fromRow(v, e.basis(q, t), q);
          EXPECT_TRUE(e.isNormalized(deltaTop(ctx, z))) << toString(z);
        }
      }
    }
  }
}

TEST(EzFaces, OmegaPairHolds) {
  simplicial::ResolutionContext ctx(GradingSpec(1, 2), 4);
  auto r = ezFaceChecks(ctx, omega(1), omega(1), 2);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checked, 3U);
}

TEST(EzFaces, ArbitraryPairsSatisfyPartOne) {
  simplicial::ResolutionContext ctx(GradingSpec(2, 2), 4);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = rng.range(0, 2);
    const int q = rng.range(0, 3 - p);
    auto a = ez::detail::randomMonomialSum(rng, p, 3);
    auto b = ez::detail::randomMonomialSum(rng, q, 3);
    auto r = ezFaceChecks(ctx, a, b, p + q);
    EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(EzFaces, BrokenProductIsCaught) {
  // A single shuffle term is not a chain map: part (i) must fail somewhere.
  simplicial::ResolutionContext ctx(GradingSpec(1, 2), 4);
  auto a = yGen(1, 1);
  auto b = xGen(1);
  auto lone = degeneracy(0, a) * degeneracy(1, b);
  auto good = shuffleProduct(a, b);
  EXPECT_NE(face(ctx, 0, lone), shuffleProduct(face(ctx, 0, a), b) + shuffleProduct(a, face(ctx, 0, b)));
  EXPECT_EQ(face(ctx, 0, good), shuffleProduct(face(ctx, 0, a), b) + shuffleProduct(a, face(ctx, 0, b)));
}

TEST(Lemmas, ProductsOnOmega) {
  simplicial::ResolutionContext ctx(GradingSpec(1, 2), 5);
  auto v = lemmaProductsCheck(ctx, omega(1), omega(1), AlgebraElement::one(0), omega(2));
  EXPECT_EQ(v.normalized, Verdict::Pass);
  EXPECT_EQ(v.cycle, Verdict::Pass);
  EXPECT_EQ(v.bounding, Verdict::Vacuous);  // d0 ω_2 = 0 ≠ ω_1
}

TEST(Lemmas, ProductsBoundingChain) {
  // n even: b = d0(x) for a normalized x with nonzero boundary.
  simplicial::ResolutionContext ctx(GradingSpec(2, 2), 5);
  homology::HomologyEngine e(ctx);
  int used = 0;
  for (int t = 0; t <= 24 && used < 5; ++t) {
    const auto normalized = e.normalizedBasis(2, t);
    for (const auto& v : normalized.basis()) {
      auto x = fromRow(v, e.basis(2, t), 2);
      auto b = face(ctx, 0, x);
      if (b.isZero()) continue;
      for (auto a : {simplicial::alpha(1), simplicial::beta(1), omega(1)}) {
        auto verdicts = lemmaProductsCheck(ctx, a, b, AlgebraElement::one(0), x);
        if (verdicts.bounding == Verdict::Vacuous) continue;
        EXPECT_EQ(verdicts.bounding, Verdict::Pass) << toString(a) << " / " << toString(x);
        EXPECT_EQ(verdicts.normalized, Verdict::Pass);
        ++used;
      }
    }
  }
  EXPECT_GT(used, 0);
}

TEST(Lemmas, SquaresOnCycles) {
  simplicial::ResolutionContext ctx(GradingSpec(2, 2), 5);
  auto v = lemmaSquaresCheck(ctx, simplicial::beta(1), AlgebraElement::one(1), simplicial::beta(2));
  EXPECT_NE(v.normalized, Verdict::Fail);
  EXPECT_NE(v.cycle, Verdict::Fail);
  EXPECT_NE(v.bounding, Verdict::Fail);
  // For even n, d0 ω_1 = x^n dx, so the cycle hypothesis fails; use odd n.
  simplicial::ResolutionContext odd(GradingSpec(1, 2), 5);
  auto w = lemmaSquaresCheck(odd, omega(1), AlgebraElement::one(1), omega(2));
  EXPECT_EQ(w.normalized, Verdict::Pass);
  EXPECT_EQ(w.cycle, Verdict::Pass);
  EXPECT_EQ(w.bounding, Verdict::Pass);
}

TEST(Lemmas, LevelMismatchIsUsageError) {
  simplicial::ResolutionContext ctx(GradingSpec(1, 2), 4);
  EXPECT_THROW(lemmaProductsCheck(ctx, omega(1), omega(2), AlgebraElement::one(0), omega(2)), UsageError);
  EXPECT_THROW(lemmaSquaresCheck(ctx, omega(1), AlgebraElement::one(0), omega(2)), UsageError);
}

TEST(Main1Relations, HoldThroughLevelFour) {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {3, 2}, {4, 2}, {1, 3}}) {
    homology::HomologyEngine e(simplicial::ResolutionContext(GradingSpec(n, m), 5));
    auto r = main1RelationChecks(e, 4);
    EXPECT_TRUE(r.pass) << "n=" << n << " m=" << m << ": " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.checked, 10U);
  }
}

TEST(Suite, PassesAndIsDeterministic) {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {3, 2}}) {
    homology::HomologyEngine e(simplicial::ResolutionContext(GradingSpec(n, m), 5));
    auto a = runSuite(e, 3, 60, 7);
    auto b = runSuite(e, 3, 60, 7);
    for (const auto* r : a.all()) {
      EXPECT_TRUE(r->pass) << n << " " << r->check << ": " << (r->failures.empty() ? "" : r->failures.front());
      EXPECT_GT(r->checked, 0U) << r->check;
    }
    for (std::size_t i = 0; i < a.all().size(); ++i) EXPECT_EQ(a.all()[i]->toJson(), b.all()[i]->toJson());
  }
}

TEST(Suite, ZeroTrialsIsVacuous) {
  homology::HomologyEngine e(simplicial::ResolutionContext(GradingSpec(1, 2), 4));
  auto r = runSuite(e, 3, 0, 7);
  EXPECT_TRUE(r.pass());
  for (const auto* c : r.all()) EXPECT_EQ(c->checked, 0U);
}
