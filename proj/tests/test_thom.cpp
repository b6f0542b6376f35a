#include <gtest/gtest.h>

#include "looplab/closedform.hpp"
#include "looplab/thom.hpp"

using namespace looplab;
using namespace looplab::thom;

namespace {

std::vector<SpaceDescriptor> nonSpheres() {
  std::vector<SpaceDescriptor> out;
  for (const auto& s : shippedSpaces()) {
    if (s.kind != SpaceKind::Sphere) out.push_back(s);
  }
  return out;
}

std::vector<int> degreesOf(const FiniteAModule& m, char kind) {
  std::vector<int> out;
  for (const auto& r : m.basis()) {
    if (m.label(r)[0] == kind) out.push_back(r.degree);
  }
  return out;
}

int sqCoefficient(const FiniteAModule& m, int k, const std::string& from, const std::string& to) {
  auto a = m.find(from);
  auto b = m.find(to);
  if (!a || !b || b->degree != a->degree + k) return 0;
  return m.applySq(k, a->degree, m.unit(*a)).get(b->index) ? 1 : 0;
}

// T_1 M by the homology Gysin sequence of S^{d-1} -> T_1 M -> M, whose
// Euler class multiplies the fundamental class by χ. Written out by hand.
GradedAbelianGroups unitTangentHomology(const SpaceDescriptor& s) {
  GradedAbelianGroups out;
  for (int j = 0; j <= s.n; ++j) {
    // kernel of ∩e on H_{rj}(M): everything except the top class when χ ≠ 0
    if (j < s.n || s.chi == 0) out.addFree(s.r * j);
    // cokernel of ∩e into H_{rj}(M), landing in degree rj + d - 1
    if (j == 0 && s.chi != 0) {
      out.addTorsion(s.d - 1, s.chi);
    } else {
      out.addFree(s.r * j + s.d - 1);
    }
  }
  return out;
}

// H_*(ΛM) = H_*(M) ⊕ ⊕_{j>=1} H_{*-λ_j}(T_1 M), λ_j = (2j-1)(r-1) + (j-1)(d-r).
GradedAbelianGroups morseBott(const SpaceDescriptor& s, int degMax) {
  GradedAbelianGroups out;
  for (int j = 0; j <= s.n; ++j) out.addFree(s.r * j);
  const auto t1 = unitTangentHomology(s);
  for (int j = 1;; ++j) {
    const int lambda = (2 * j - 1) * (s.r - 1) + (j - 1) * (s.d - s.r);
    if (lambda > degMax) break;
    out += t1.shifted(lambda);
  }
  return out.truncated(degMax);
}

}  // namespace

TEST(AbelianGroup, Normalization) {
  AbelianGroup a;
  a.addTorsion(2);
  a.addTorsion(3);
  EXPECT_EQ(a, AbelianGroup::cyclic(6));
  AbelianGroup b;
  b.addTorsion(2);
  b.addTorsion(2);
  EXPECT_NE(b, AbelianGroup::cyclic(4));
  EXPECT_EQ(b.torsion, (std::vector<std::int64_t>{2, 2}));
  AbelianGroup c = AbelianGroup::cyclic(4);
  c += AbelianGroup::cyclic(6);
  EXPECT_EQ(c.torsion, (std::vector<std::int64_t>{2, 12}));
  EXPECT_TRUE(AbelianGroup::cyclic(1).isZero());
  EXPECT_THROW(AbelianGroup::cyclic(0), StructuralError);
  EXPECT_EQ(c.toString(), "Z/2 + Z/12");
}

TEST(AbelianGroup, GradedTsv) {
  GradedAbelianGroups g;
  g.addFree(0);
  g.addTorsion(2, 3);
  g.addTorsion(2, 1);
  EXPECT_EQ(g.toTsv(2), "degree\tfreeRank\ttorsion\n0\t1\t-\n1\t0\t-\n2\t0\t3\n");
  EXPECT_EQ(g.groups().size(), 2U);
}

TEST(Smith, Invariants) {
  EXPECT_EQ(smithInvariants({{2, 4}, {6, 8}}), (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(smithInvariants({{0, 0}, {0, 0}}).size(), 0U);
  EXPECT_EQ(smithInvariants({{3}}), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(smithInvariants({{2, 0}, {0, 3}}), (std::vector<std::int64_t>{1, 6}));
  EXPECT_EQ(smithInvariants({{4, 6, 0}}), (std::vector<std::int64_t>{2}));
}

TEST(Thom, StiefelWhitney) {
  // w(qτ) = (1+x)^{q(n+1)}
  EXPECT_EQ(swTotal(SpaceDescriptor::cp(2), 1), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(swTotal(SpaceDescriptor::cp(3), 1), (std::vector<int>{1, 0, 0, 0}));
  EXPECT_EQ(swTotal(SpaceDescriptor::hp(2), 2), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(swTotal(SpaceDescriptor::cp(2), 0), (std::vector<int>{1, 0, 0}));
}

TEST(Thom, ModulesAreUnstableAlgebras) {
  for (const auto& s : {SpaceDescriptor::hp(2), SpaceDescriptor::cp(2), SpaceDescriptor::cp(3), SpaceDescriptor::cayley()}) {
    for (int q = 0; q <= 3; ++q) {
      for (bool base : {false, true}) {
        auto m = thomModule(s, q, 4 * s.d + 4, 16, base);
        for (const auto& r : {steenrod::checkInstability(m), steenrod::checkCartan(m), steenrod::checkAdem(m)}) {
          EXPECT_TRUE(r.pass) << s.name() << " q=" << q << " " << r.check << ": "
                              << (r.failures.empty() ? "" : r.failures.front());
        }
      }
    }
  }
}

TEST(Thom, EulerClassSquaresTheThomClass) {
  // u·u = w_d(τ) u = χ x^n u mod 2
  for (const auto& s : nonSpheres()) {
    auto m = thomModule(s, 1, 3 * s.d, 1);
    auto u = *m.find("u_1");
    auto sq = m.multiplyBasis(u, u);
    EXPECT_EQ(sq.isZero(), s.chi % 2 == 0) << s.name();
  }
}

TEST(Cofiber, CP2LevelOneBasis) {
  auto m = cofiberF2(SpaceDescriptor::cp(2), 1, 40, 8);
  EXPECT_EQ(degreesOf(m, 'a'), (std::vector<int>{5, 7}));
  EXPECT_EQ(degreesOf(m, 'b'), (std::vector<int>{10, 12}));
  EXPECT_EQ(sqCoefficient(m, 2, "a_1^0", "a_1^1"), 1);
  EXPECT_EQ(sqCoefficient(m, 2, "b_2^0", "b_2^1"), 1);  // C(7, 1)
  EXPECT_EQ(sqCoefficient(m, 2, "a_1^1", "b_2^0"), 0);
}

TEST(Cofiber, SteenrodFormulas) {
  // Closed formulas for every cofiber class, checked against the module
  // assembled from the exact sequence.
  for (const auto& s : nonSpheres()) {
    const int n = s.n;
    const int r = s.r;
    for (int q = 0; q <= 2; ++q) {
      const int degMax = (q + 3) * s.d + 2 * r;
      auto m = cofiberF2(s, q, degMax, 64);
      const int step = q * r * (n + 1) - 2 * q;
      const int nextStep = (q + 1) * r * (n + 1) - 2 * (q + 1);
      std::size_t expectedSize = 0;
      if (n % 2 == 0) {
        for (int j = 0; j < n; ++j) {
          ASSERT_TRUE(m.find(cofiberLabel('a', q, j))) << s.name();
          EXPECT_EQ(m.find(cofiberLabel('a', q, j))->degree, step + r - 1 + r * j);
          EXPECT_EQ(m.find(cofiberLabel('b', q + 1, j))->degree, nextStep + r + r * j);
          for (int i = 1; i + j < n && r * i <= 64; ++i) {
            EXPECT_EQ(sqCoefficient(m, r * i, cofiberLabel('a', q, j), cofiberLabel('a', q, i + j)),
                      lucas(q * (n + 1) + j, i));
            EXPECT_EQ(sqCoefficient(m, r * i, cofiberLabel('b', q + 1, j), cofiberLabel('b', q + 1, i + j)),
                      lucas((q + 1) * (n + 1) + 1 + j, i));
          }
        }
        expectedSize = 2 * n;
      } else {
        for (int j = 0; j <= n; ++j) {
          ASSERT_TRUE(m.find(cofiberLabel('c', q, j))) << s.name();
          EXPECT_EQ(m.find(cofiberLabel('c', q, j))->degree, step + r - 1 + r * j);
          EXPECT_EQ(m.find(cofiberLabel('d', q + 1, j))->degree, nextStep + r * j);
          for (int i = 1; i + j <= n && r * i <= 64; ++i) {
            EXPECT_EQ(sqCoefficient(m, r * i, cofiberLabel('c', q, j), cofiberLabel('c', q, i + j)),
                      lucas(q * (n + 1) + j, i));
            EXPECT_EQ(sqCoefficient(m, r * i, cofiberLabel('d', q + 1, j), cofiberLabel('d', q + 1, i + j)),
                      lucas((q + 1) * (n + 1) + j, i));
          }
        }
        EXPECT_EQ(sqCoefficient(m, 1, cofiberLabel('d', q + 1, 0), cofiberLabel('c', q, n)), s.chi % 4 == 2 ? 1 : 0);
        expectedSize = 2 * (n + 1);
      }
      EXPECT_EQ(m.totalDim(), expectedSize) << s.name() << " q=" << q;
    }
  }
}

TEST(Cofiber, IntegralExamples) {
  auto c = cofiberZ(SpaceDescriptor::cp(2), 1);
  GradedAbelianGroups want;
  for (int k : {5, 7, 10, 12}) want.addFree(k);
  want.addTorsion(8, 3);
  EXPECT_EQ(c, want);

  GradedAbelianGroups hp1;
  hp1.addFree(1);
  hp1.addFree(8);
  hp1.addTorsion(4, 2);
  EXPECT_EQ(cofiberZ(SpaceDescriptor::hp(1), 0), hp1);
}

TEST(Cofiber, IntegralRanks) {
  for (const auto& s : nonSpheres()) {
    for (int q = 0; q <= 3; ++q) {
      int free = 0;
      std::vector<std::int64_t> torsion;
      const auto groups = cofiberZ(s, q);
      for (const auto& [k, g] : groups.groups()) {
        EXPECT_LE(k, (q + 2) * s.d) << s.name();
        free += g.freeRank;
        torsion.insert(torsion.end(), g.torsion.begin(), g.torsion.end());
      }
      EXPECT_EQ(free, 2 * s.n) << s.name();
      EXPECT_EQ(torsion, (std::vector<std::int64_t>{s.chi})) << s.name();
    }
  }
}

TEST(Cofiber, VanishingEulerCharacteristicIsRefused) {
  EXPECT_THROW(cofiberZ(SpaceDescriptor::sphere(3), 0), UsageError);
  EXPECT_THROW(cofiberF2(SpaceDescriptor::sphere(5), 1, 40, 8), UsageError);
  EXPECT_NO_THROW(cofiberZ(SpaceDescriptor::sphere(4), 0));
}

TEST(Spheres, CofiberCells) {
  EXPECT_EQ(sphereCq(2, 0), (std::vector<StableCell>{StableCell::moore(2), StableCell::sphere(4), StableCell::sphere(1)}));
  EXPECT_EQ(sphereCq(3, 0), (std::vector<StableCell>{StableCell::sphere(4), StableCell::sphere(7), StableCell::sphere(2),
                                                     StableCell::sphere(5)}));
  EXPECT_THROW(sphereCq(1, 0), UsageError);
}

TEST(Spheres, EvenCellsAgreeWithExactSequence) {
  for (int m : {2, 4, 6}) {
    const auto s = SpaceDescriptor::sphere(m);
    for (int q = 0; q <= 3; ++q) {
      EXPECT_EQ(cellHomology(sphereCq(m, q)), cofiberZ(s, q).shifted((m - 2) * (q + 1))) << m << " " << q;
      const int degMax = 2 * (q + 2) * m;
      auto cells = cellCohomology(sphereCq(m, q)).build(degMax, 2 * m);
      auto les = cofiberF2(s, q, degMax, 2 * m);
      steenrod::Dictionary id;
      for (const auto& r : cells.basis()) id.emplace_back(cells.label(r), cells.label(r));
      auto rep = steenrod::moduleIso(cells, les, id, 2 * m);
      EXPECT_TRUE(rep.pass) << m << " " << q << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    }
  }
}

TEST(Spheres, StableSummands) {
  EXPECT_EQ(dkSummand(4, 2), (std::vector<StableCell>{StableCell::moore(6)}));
  EXPECT_EQ(dkSummand(3, 2), (std::vector<StableCell>{StableCell::sphere(4), StableCell::sphere(5)}));
  EXPECT_EQ(dkSummand(4, 3), (std::vector<StableCell>{StableCell::sphere(9), StableCell::sphere(10)}));
  EXPECT_THROW(dkSummand(4, 0), UsageError);
}

TEST(Spheres, BothSplittingsAgree) {
  for (int m = 2; m <= 6; ++m) {
    const auto s = SpaceDescriptor::sphere(m);
    EXPECT_EQ(dkWedgeZ(m, 80), ctAssembleZ(s, 80)) << m;
  }
}

TEST(Ziller, Examples) {
  AbelianGroup z4 = AbelianGroup::free();
  z4.addTorsion(4);
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::cp(3), 12), z4);
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::cp(3), 5), AbelianGroup::free());
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::hp(2), 10), AbelianGroup::cyclic(3));
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::cayley(), 22), AbelianGroup::cyclic(3));
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::cayley(), 7), AbelianGroup::free());
  EXPECT_EQ(zillerLoopZ(SpaceDescriptor::sphere(4), 6), AbelianGroup::cyclic(2));
  EXPECT_TRUE(zillerLoopZ(SpaceDescriptor::sphere(4), 1).isZero());
}

TEST(Ziller, MatchesMorseBottOracle) {
  for (const auto& s : shippedSpaces()) {
    EXPECT_EQ(zillerTable(s, 90), morseBott(s, 90)) << s.name();
  }
}

TEST(CT, IntegralAssemblyMatchesLoopHomology) {
  for (const auto& s : shippedSpaces()) {
    const auto ct = ctAssembleZ(s, 90);
    const auto ref = morseBott(s, 90);
    for (int k = 0; k <= 90; ++k) {
      EXPECT_EQ(ct.at(k), ref.at(k)) << s.name() << " k=" << k << ": " << ct.at(k).toString() << " vs "
                                     << ref.at(k).toString();
    }
  }
}

TEST(CT, Sq1RuleMatchesLoopConstant) {
  for (const auto& s : shippedSpaces()) {
    EXPECT_EQ(cofiberSq1Rule(s), sq1Constant(s) == Sq1Constant::One) << s.name();
  }
}

TEST(CT, ModDimensionsMatchLoopCohomology) {
  for (const auto& s : shippedSpaces()) {
    auto ct = ctAssembleF2(s, 70, 16);
    auto loop = closedform::loopCohomology(s, 70, 16);
    for (int t = 0; t <= 70; ++t) EXPECT_EQ(ct.dim(t), loop.dim(t)) << s.name() << " t=" << t;
  }
}

TEST(Spheres, SummandsForTheCircleCase) {
  EXPECT_EQ(dkSummand(2, 2), (std::vector<StableCell>{StableCell::moore(2)}));
  EXPECT_EQ(dkSummand(2, 3), (std::vector<StableCell>{StableCell::sphere(3), StableCell::sphere(4)}));
}

TEST(Cofiber, MoreExamples) {
  EXPECT_EQ(cofiberZ(SpaceDescriptor::cayley(), 0).at(16), AbelianGroup::cyclic(3));
  auto hp1 = cofiberF2(SpaceDescriptor::hp(1), 0, 40, 8);
  EXPECT_EQ(sqCoefficient(hp1, 1, "d_1^0", "c_0^1"), 1);
  auto hp3 = cofiberF2(SpaceDescriptor::hp(3), 0, 60, 8);
  EXPECT_EQ(sqCoefficient(hp3, 1, "d_1^0", "c_0^3"), 0);
}
