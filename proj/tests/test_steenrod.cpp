#include <gtest/gtest.h>

#include "looplab/steenrod.hpp"

using namespace looplab;
using namespace looplab::steenrod;

namespace {

// Truncated polynomial F2[x]/(x^{n+1}), |x| = r, with the product.
FiniteAModule truncatedPolynomial(int n, int r, int degMax, int kMax) {
  FiniteAModule m(degMax, kMax);
  std::vector<BasisRef> refs;
  for (int j = 0; j <= n; ++j) refs.push_back(*m.addBasis(r * j, "x^" + std::to_string(j)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 1; i + j <= n; ++i) {
      if (r * i <= kMax && lucas(j, i)) m.setSq(r * i, refs[j], refs[i + j]);
    }
    for (int k = j; k <= n; ++k) {
      if (j + k <= n) m.setProduct(refs[j], refs[k], m.unit(refs[j + k]));
    }
  }
  m.enableProduct();
  return m;
}

// Three classes in degrees 0, 2, 4 with Sq^2 x = y and x^2 = y.
FiniteAModule threeElement() {
  FiniteAModule m(10, 6);
  auto one = *m.addBasis(0, "1");
  auto x = *m.addBasis(2, "x");
  auto y = *m.addBasis(4, "y");
  m.setSq(2, x, y);
  m.setProduct(one, one, m.unit(one));
  m.setProduct(one, x, m.unit(x));
  m.setProduct(one, y, m.unit(y));
  m.setProduct(x, x, m.unit(y));
  return m;
}

int ademDirect(int a, int b, int j) {
  // C(b-1-j, a-2j) mod 2 by Pascal's triangle, independent of the bit trick
  const int top = b - 1 - j;
  const int bottom = a - 2 * j;
  if (top < 0 || bottom < 0 || bottom > top) return 0;
  std::vector<int> row{1};
  for (int i = 1; i <= top; ++i) {
    std::vector<int> next(static_cast<std::size_t>(i) + 1, 1);
    for (int k = 1; k < i; ++k) next[k] = (row[k - 1] + row[k]) % 2;
    row = next;
  }
  return row[static_cast<std::size_t>(bottom)];
}

}  // namespace

TEST(Module, BasisAndMatrices) {
  auto m = threeElement();
  EXPECT_EQ(m.totalDim(), 3U);
  EXPECT_EQ(m.dim(2), 1U);
  EXPECT_EQ(m.label(*m.find("y")), "y");
  EXPECT_FALSE(m.find("z"));
  EXPECT_TRUE(m.applySq(2, 2, m.unit(*m.find("x"))).get(0));
  EXPECT_EQ(m.sq(0, 2), gf2::BitMatrix::identity(1));
  EXPECT_THROW(m.addBasis(6, "w"), UsageError);
}

TEST(Module, DropsAboveDegMaxAndRejectsDuplicates) {
  FiniteAModule m(5, 2);
  EXPECT_FALSE(m.addBasis(6, "a"));
  EXPECT_TRUE(m.addBasis(1, "b"));
  EXPECT_THROW(m.addBasis(2, "b"), UsageError);
  EXPECT_THROW(m.setSq(2, {1, 0}, {2, 0}), UsageError);
}

TEST(Instability, PassesOnThreeElementModule) {
  auto r = checkInstability(threeElement());
  EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checked, 0U);
}

TEST(Instability, MutatedSq3OnDegreeTwoFails) {
  FiniteAModule m(10, 6);
  m.addBasis(0, "1");
  auto x = *m.addBasis(2, "x");
  auto z = *m.addBasis(5, "z");
  m.setSq(3, x, z);
  auto r = checkInstability(m);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failureCount, 1U);
}

TEST(Instability, WrongSquareFails) {
  FiniteAModule m(10, 6);
  auto one = *m.addBasis(0, "1");
  auto x = *m.addBasis(2, "x");
  auto y = *m.addBasis(4, "y");
  m.setProduct(one, x, m.unit(x));
  m.setProduct(x, x, m.unit(y));
  EXPECT_FALSE(checkInstability(m).pass);
}

TEST(Instability, TruncationIsCountedAsSkipped) {
  FiniteAModule m(4, 6);
  m.addBasis(2, "x");
  auto r = checkInstability(m);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.skipped, 0U);
}

TEST(Cartan, PassesOnTruncatedPolynomials) {
  for (auto [n, r] : {std::pair{2, 2}, {3, 2}, {3, 4}, {2, 8}}) {
    auto m = truncatedPolynomial(n, r, 60, 16);
    auto rep = checkCartan(m);
    EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_TRUE(checkInstability(m).pass);
  }
}

TEST(Cartan, CorruptedGeneratorFails) {
  FiniteAModule m(10, 6);
  auto one = *m.addBasis(0, "1");
  auto x = *m.addBasis(1, "x");
  auto y = *m.addBasis(2, "y");
  m.setProduct(one, one, m.unit(one));
  m.setProduct(one, x, m.unit(x));
  m.setProduct(one, y, m.unit(y));
  m.setProduct(x, x, m.unit(y));
  m.setSq(1, x, y);
  EXPECT_TRUE(checkCartan(m).pass);
  // Sq^1(1) = x breaks Sq^1(1*1) = 2 Sq^1(1)
  m.setSq(1, one, x);
  EXPECT_FALSE(checkCartan(m).pass);
}

TEST(Cartan, NeedsProduct) {
  FiniteAModule m(4, 2);
  m.addBasis(0, "1");
  EXPECT_THROW(checkCartan(m), UsageError);
}

TEST(Adem, CoefficientsMatchPascal) {
  for (int a = 1; a <= 32; ++a) {
    for (int b = 1; b <= 32; ++b) {
      if (a >= 2 * b) continue;
      for (int j = 0; 2 * j <= a; ++j) EXPECT_EQ(ademCoefficient(a, b, j), ademDirect(a, b, j)) << a << "," << b << "," << j;
    }
  }
}

TEST(Adem, KnownRelations) {
  // Sq^1Sq^1 = 0, Sq^1Sq^2 = Sq^3, Sq^2Sq^2 = Sq^3Sq^1
  EXPECT_EQ(ademCoefficient(1, 1, 0), 0);
  EXPECT_EQ(ademCoefficient(1, 2, 0), 1);
  EXPECT_EQ(ademCoefficient(2, 2, 0), 0);
  EXPECT_EQ(ademCoefficient(2, 2, 1), 1);
}

TEST(Adem, PassesOnTruncatedPolynomial) {
  auto r = checkAdem(truncatedPolynomial(4, 2, 40, 16));
  EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checked, 0U);
}

TEST(Adem, Sq1Sq1NonzeroFails) {
  FiniteAModule m(10, 4);
  auto a = *m.addBasis(1, "a");
  auto b = *m.addBasis(2, "b");
  auto c = *m.addBasis(3, "c");
  m.setSq(1, a, b);
  m.setSq(1, b, c);
  EXPECT_FALSE(checkAdem(m).pass);
}

TEST(ModuleIso, IdentityPassesSwapFails) {
  auto m = truncatedPolynomial(3, 2, 30, 8);
  Dictionary id;
  for (const auto& e : m.basis()) id.emplace_back(m.label(e), m.label(e));
  EXPECT_TRUE(moduleIso(m, m, id, 8).pass);

  // Two classes in one degree, one of them hit by Sq^2; swapping them breaks Sq.
  FiniteAModule n(10, 4);
  auto u = *n.addBasis(0, "u");
  auto v = *n.addBasis(2, "v");
  auto w = *n.addBasis(2, "w");
  auto t = *n.addBasis(4, "t");
  n.setSq(2, v, t);
  (void)u;
  (void)w;
  Dictionary ok = {{"u", "u"}, {"v", "v"}, {"w", "w"}, {"t", "t"}};
  Dictionary swapped = {{"u", "u"}, {"v", "w"}, {"w", "v"}, {"t", "t"}};
  EXPECT_TRUE(moduleIso(n, n, ok, 4).pass);
  EXPECT_FALSE(moduleIso(n, n, swapped, 4).pass);
}

TEST(ModuleIso, BadDictionariesAreUsageErrors) {
  auto m = truncatedPolynomial(2, 2, 10, 4);
  EXPECT_THROW(moduleIso(m, m, {{"x^0", "x^1"}, {"x^1", "x^0"}, {"x^2", "x^2"}}, 4), UsageError);
  EXPECT_THROW(moduleIso(m, m, {{"x^0", "x^0"}, {"x^1", "x^1"}}, 4), UsageError);
  EXPECT_THROW(moduleIso(m, m, {{"x^0", "x^0"}, {"x^1", "x^1"}, {"x^2", "x^2"}, {"x^2", "x^2"}}, 4), UsageError);
  EXPECT_THROW(moduleIso(m, m, {{"q", "x^0"}}, 4), UsageError);
}

TEST(Report, JsonShape) {
  auto j = checkAdem(threeElement()).toJson();
  EXPECT_EQ(j["check"], "adem");
  EXPECT_TRUE(j.contains("skipped"));
  EXPECT_TRUE(j["pass"].get<bool>());
}
