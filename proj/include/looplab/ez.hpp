#pragma once

// Shuffle products on Ω(R_•) with the top homotopy operation and the forms
// m and q, plus executable versions of the statements made about them.

#include <string>
#include <vector>

#include "looplab/algebra.hpp"
#include "looplab/closedform.hpp"
#include "looplab/errors.hpp"
#include "looplab/homology.hpp"
#include "looplab/random.hpp"
#include "looplab/report.hpp"
#include "looplab/simplicial.hpp"

namespace looplab::ez {

using algebra::AlgebraElement;
using simplicial::degeneracy;
using simplicial::face;
using simplicial::ResolutionContext;

/// A (p, q)-shuffle: mu (length p) and nu (length q) partition {0, ..., p+q-1}.
struct Shuffle {
  int p = 0;
  int q = 0;
  std::vector<int> mu;
  std::vector<int> nu;
  friend bool operator==(const Shuffle&, const Shuffle&) = default;
};

/// All C(p+q, p) shuffles, mu in lexicographic order.
inline std::vector<Shuffle> enumerateShuffles(int p, int q) {
  if (p < 0 || q < 0) throw UsageError("enumerateShuffles: negative sizes");
  std::vector<Shuffle> out;
  const int total = p + q;
  std::vector<int> mu;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(mu.size()) == p) {
      Shuffle s{p, q, mu, {}};
      std::size_t k = 0;
      for (int i = 0; i < total; ++i) {
        if (k < mu.size() && mu[k] == i) {
          ++k;
        } else {
          s.nu.push_back(i);
        }
      }
      out.push_back(std::move(s));
      return;
    }
    for (int i = next; i + (p - static_cast<int>(mu.size())) <= total; ++i) {
      mu.push_back(i);
      self(self, i + 1);
      mu.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// s_{idx_k} ... s_{idx_1}(a): the first index is applied first.
inline AlgebraElement degeneracies(const std::vector<int>& idx, AlgebraElement a) {
  for (int i : idx) a = degeneracy(i, a);
  return a;
}

/// ρ(a ⊗ b) = Σ s_ν(a) s_μ(b) over (p, q)-shuffles. Signs are trivial over F2.
inline AlgebraElement shuffleProduct(const AlgebraElement& a, const AlgebraElement& b) {
  const int p = a.level();
  const int q = b.level();
  AlgebraElement out(p + q);
  if (a.isZero() || b.isZero()) return out;
  for (const auto& s : enumerateShuffles(p, q)) out += degeneracies(s.nu, a) * degeneracies(s.mu, b);
  return out;
}

inline bool allFacesVanish(const ResolutionContext& ctx, const AlgebraElement& z) {
  if (z.level() == 0) return true;
  for (int i = 0; i <= z.level(); ++i) {
    if (!face(ctx, i, z).isZero()) return false;
  }
  return true;
}

/// δ_q(z) for a normalized cycle z at level q. The full (q, q)-shuffle sum
/// pairs (μ, ν) with (ν, μ) and cancels over F2; one term of each pair is
/// kept, namely the shuffles with μ_1 = 0.
inline AlgebraElement deltaTop(const ResolutionContext& ctx, const AlgebraElement& z) {
  const int q = z.level();
  if (q < 1) throw UsageError("deltaTop: level must be >= 1");
  if (!allFacesVanish(ctx, z)) throw UsageError("deltaTop: not a normalized cycle: " + algebra::toString(z));
  AlgebraElement out(2 * q);
  for (const auto& s : enumerateShuffles(q, q)) {
    if (s.mu.front() != 0) continue;
    out += degeneracies(s.nu, z) * degeneracies(s.mu, z);
  }
  return out;
}

inline AlgebraElement mForm(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.level() != b.level()) throw UsageError("mForm: level mismatch");
  return degeneracy(0, a) * degeneracy(1, b) + degeneracy(0, b) * degeneracy(1, a);
}

inline AlgebraElement qForm(const AlgebraElement& a) { return degeneracy(0, a) * degeneracy(1, a); }

// Checks ------------------------------------------------------------------

inline void record(CheckReport& r, bool ok, const std::string& what) {
  ++r.checked;
  if (!ok) r.fail(what);
}

/// (i) d_0 ρ(a⊗b) = ρ(d_0 a⊗b) + ρ(a⊗d_0 b), with d_0 of a level-0 element read as 0.
/// (ii) for 1 ≤ i ≤ iMax: if d_t a = 0 for 1 ≤ t ≤ min(i, p) and d_t b = 0 for
/// 1 ≤ t ≤ min(i, q), then d_i ρ(a⊗b) = 0.
inline CheckReport ezFaceChecks(const ResolutionContext& ctx, const AlgebraElement& a, const AlgebraElement& b,
                                int iMax) {
  CheckReport r{"ezFaces"};
  const int p = a.level();
  const int q = b.level();
  const AlgebraElement rho = shuffleProduct(a, b);
  if (p + q >= 1) {
    AlgebraElement rhs(p + q - 1);
    if (p >= 1) rhs += shuffleProduct(face(ctx, 0, a), b);
    if (q >= 1) rhs += shuffleProduct(a, face(ctx, 0, b));
    record(r, face(ctx, 0, rho) == rhs,
           "d0 rho(" + algebra::toString(a) + " (x) " + algebra::toString(b) + ")");
  }
  auto killed = [&](const AlgebraElement& z, int upTo) {
    for (int t = 1; t <= std::min(upTo, z.level()); ++t) {
      if (!face(ctx, t, z).isZero()) return false;
    }
    return true;
  };
  for (int i = 1; i <= std::min(iMax, p + q); ++i) {
    if (!killed(a, i) || !killed(b, i)) {
      ++r.vacuous;
      continue;
    }
    record(r, face(ctx, i, rho).isZero(),
           "d" + std::to_string(i) + " rho(" + algebra::toString(a) + " (x) " + algebra::toString(b) + ") != 0");
  }
  return r;
}

enum class Verdict { Pass, Fail, Vacuous };

inline const char* toString(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

struct LemmaVerdicts {
  Verdict normalized = Verdict::Vacuous;  // the formed element lies in N
  Verdict cycle = Verdict::Vacuous;       // ... and is a cycle
  Verdict bounding = Verdict::Vacuous;    // the explicit bounding chain works
};

inline Verdict verdict(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

inline bool normalized(const ResolutionContext& ctx, const AlgebraElement& z) {
  for (int i = 1; i <= z.level(); ++i) {
    if (!face(ctx, i, z).isZero()) return false;
  }
  return true;
}

/// Products lemma, with a, b at level l ≥ 1, c at level l-1 and x at level l+1:
///   a, b ∈ N             ⇒ s1s0(c) m(a,b) ∈ N;
///   also d0(a)c = d0(b)c = 0 ⇒ it is a cycle;
///   d0(a)c = 0, x ∈ N, b = d0 x ⇒ y = s2s1s0(c)[s2s1(a)s0(x) + s2s0(a)s1(x) + s1s0(a)s2(x)]
///   lies in N with d0 y = s1s0(c) m(a,b).
inline LemmaVerdicts lemmaProductsCheck(const ResolutionContext& ctx, const AlgebraElement& a, const AlgebraElement& b,
                                        const AlgebraElement& c, const AlgebraElement& x) {
  const int l = a.level();
  if (l < 1 || b.level() != l || c.level() != l - 1 || x.level() != l + 1) {
    throw UsageError("lemmaProductsCheck: levels must be (l, l, l-1, l+1) with l >= 1");
  }
  LemmaVerdicts v;
  if (!normalized(ctx, a) || !normalized(ctx, b)) return v;
  const AlgebraElement s10c = degeneracy(1, degeneracy(0, c));
  const AlgebraElement z = s10c * mForm(a, b);
  v.normalized = verdict(normalized(ctx, z));
  const bool aKilled = (face(ctx, 0, a) * c).isZero();
  if (aKilled && (face(ctx, 0, b) * c).isZero()) v.cycle = verdict(face(ctx, 0, z).isZero());
  if (aKilled && normalized(ctx, x) && face(ctx, 0, x) == b) {
    const AlgebraElement y = degeneracy(2, s10c) *
                             (degeneracy(2, degeneracy(1, a)) * degeneracy(0, x) +
                              degeneracy(2, degeneracy(0, a)) * degeneracy(1, x) +
                              degeneracy(1, degeneracy(0, a)) * degeneracy(2, x));
    v.bounding = verdict(normalized(ctx, y) && face(ctx, 0, y) == z);
  }
  return v;
}

/// Squares lemma, with a, c at level l ≥ 1 and b at level l+1:
///   a ∈ N, c a² = 0             ⇒ s0(c) q(a) ∈ N;
///   also c a s0d0(a) = 0        ⇒ it is a cycle;
///   b ∈ N, s0(c) b² = 0         ⇒ w = s1s0(c) s1(b) s2(b) lies in N with d0 w = s0(c) q(d0 b).
inline LemmaVerdicts lemmaSquaresCheck(const ResolutionContext& ctx, const AlgebraElement& a, const AlgebraElement& c,
                                       const AlgebraElement& b) {
  const int l = a.level();
  if (l < 1 || c.level() != l || b.level() != l + 1) {
    throw UsageError("lemmaSquaresCheck: levels must be (l, l, l+1) with l >= 1");
  }
  LemmaVerdicts v;
  if (normalized(ctx, a) && (c * a * a).isZero()) {
    const AlgebraElement z = degeneracy(0, c) * qForm(a);
    v.normalized = verdict(normalized(ctx, z));
    if ((c * a * degeneracy(0, face(ctx, 0, a))).isZero()) v.cycle = verdict(face(ctx, 0, z).isZero());
  }
  const AlgebraElement s0c = degeneracy(0, c);
  if (normalized(ctx, b) && (s0c * b * b).isZero()) {
    const AlgebraElement w = degeneracy(1, s0c) * degeneracy(1, b) * degeneracy(2, b);
    v.bounding = verdict(normalized(ctx, w) && face(ctx, 0, w) == s0c * qForm(face(ctx, 0, b)));
  }
  return v;
}

inline void tally(CheckReport& r, Verdict v, const std::string& what) {
  if (v == Verdict::Vacuous) {
    ++r.vacuous;
    return;
  }
  record(r, v == Verdict::Pass, what);
}

// Relations of the bigraded answer, checked through homology -----------------

/// For every pair of basis labels with p + q ≤ maxSum, the class of
/// ρ(rep A ⊗ rep B) equals the class of the predicted product; δ_q on the
/// generators at levels 2 ≤ q with 2q ≤ maxSum matches the predicted value.
inline CheckReport main1RelationChecks(const homology::HomologyEngine& e, int maxSum) {
  CheckReport r{"main1Relations"};
  const auto& g = e.grading();
  using closedform::Main1Label;
  auto classMatches = [&](const AlgebraElement& z, int level, int t, const std::optional<Main1Label>& expected) {
    const AlgebraElement want = expected ? closedform::representative(*expected) : AlgebraElement::zero(level);
    return e.classOf(z, t) == e.classOf(want, t);
  };
  for (int p = 0; p <= maxSum; ++p) {
    for (int q = p; p + q <= maxSum; ++q) {
      for (const auto& A : closedform::main1Basis(g.n, p)) {
        for (const auto& B : closedform::main1Basis(g.n, q)) {
          const AlgebraElement z = shuffleProduct(closedform::representative(A), closedform::representative(B));
          const int t = closedform::internalDegree(A, g) + closedform::internalDegree(B, g);
          const auto expected = closedform::main1Product(A, B, g.n);
          try {
            record(r, classMatches(z, p + q, t, expected),
                   closedform::toString(A) + " * " + closedform::toString(B));
          } catch (const UsageError& err) {
            r.fail(closedform::toString(A) + " * " + closedform::toString(B) + ": " + err.what());
          }
        }
      }
    }
  }
  for (int q = 2; 2 * q <= maxSum; ++q) {
    std::vector<Main1Label> gens;
    if (g.n % 2 == 1) {
      gens = {Main1Label::gamma(q)};
    } else {
      gens = {Main1Label::a(q), Main1Label::b(q)};
    }
    for (const auto& l : gens) {
      const AlgebraElement z = deltaTop(e.context(), closedform::representative(l));
      const int t = 2 * closedform::internalDegree(l, g);
      record(r, classMatches(z, 2 * q, t, closedform::main1Delta(q, l, g.n)),
             "delta_" + std::to_string(q) + "(" + closedform::toString(l) + ")");
    }
  }
  return r;
}

// Seeded property suite --------------------------------------------------------

struct SuiteReport {
  CheckReport faces{"ezFaces"};
  CheckReport products{"lemmaProducts"};
  CheckReport squares{"lemmaSquares"};
  CheckReport commutativity{"rhoCommutative"};

  std::vector<const CheckReport*> all() const { return {&faces, &products, &squares, &commutativity}; }
  bool pass() const {
    for (const auto* r : all()) {
      if (!r->pass) return false;
    }
    return true;
  }
};

namespace detail {

inline AlgebraElement randomMonomialSum(SplitMix64& rng, int level, int terms) {
  AlgebraElement a(level);
  for (int k = 0; k < terms; ++k) {
    algebra::Monomial m = algebra::Monomial::unit(level);
    m.xExp = static_cast<std::uint16_t>(rng.range(0, 3));
    m.dx = rng.coin();
    for (int j = 0; j < level; ++j) {
      m.yExp[j] = static_cast<std::uint16_t>(rng.range(0, 1));
      if (rng.coin()) m.dyMask = static_cast<std::uint16_t>(m.dyMask | (1U << j));
    }
    a += AlgebraElement::of(m);
  }
  return a;
}

/// A random element of the subspace S inside the (q, t) slice.
inline AlgebraElement randomIn(SplitMix64& rng, const homology::HomologyEngine& e, const gf2::Subspace& s, int q,
                               int t) {
  gf2::BitRow v(s.ambientDim());
  for (const auto& b : s.basis()) {
    if (rng.coin()) v ^= b;
  }
  return algebra::fromRow(v, e.basis(q, t), q);
}

/// Internal degrees at level q with a nonzero subspace chosen by `pick`.
template <class Pick>
std::vector<int> usefulDegrees(const homology::HomologyEngine& e, int q, int tMax, Pick&& pick) {
  std::vector<int> out;
  for (int t = 0; t <= tMax; ++t) {
    if (pick(q, t).dim() > 0) out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// `trials` seeded rounds at levels ≤ maxLevel: EZ face identities on random
/// pairs, both lemmas on random normalized elements, and homology
/// commutativity of ρ on random normalized cycles.
inline SuiteReport runSuite(const homology::HomologyEngine& e, int maxLevel, int trials, std::uint64_t seed) {
  SuiteReport rep;
  if (trials <= 0) return rep;
  if (maxLevel < 1) throw UsageError("runSuite: maxLevel must be >= 1");
  const auto& ctx = e.context();
  const auto& g = e.grading();
  const int tMax = (maxLevel + 1) * g.degDy() + 2 * g.m;
  SplitMix64 rng(seed);

  auto normalizedAt = [&](int q, int t) { return e.normalizedBasis(q, t); };
  auto cyclesAt = [&](int q, int t) { return e.cycles(q, t); };
  std::vector<std::vector<int>> nDeg(static_cast<std::size_t>(maxLevel) + 2);
  std::vector<std::vector<int>> zDeg(static_cast<std::size_t>(maxLevel) + 1);
  for (int q = 0; q <= maxLevel + 1; ++q) nDeg[q] = detail::usefulDegrees(e, q, tMax, normalizedAt);
  for (int q = 0; q <= maxLevel; ++q) zDeg[q] = detail::usefulDegrees(e, q, tMax, cyclesAt);
  auto pickDeg = [&](const std::vector<int>& v) { return v[rng.below(v.size())]; };
  auto randomNormalized = [&](int q) {
    const int t = pickDeg(nDeg[q]);
    return detail::randomIn(rng, e, e.normalizedBasis(q, t), q, t);
  };
  auto randomCycle = [&](int q) {
    const int t = pickDeg(zDeg[q]);
    return detail::randomIn(rng, e, e.cycles(q, t), q, t);
  };
  auto randomCoefficient = [&](int level) {
    switch (rng.below(3)) {
      case 0: return AlgebraElement::one(level);
      case 1: return algebra::xGen(level, rng.range(1, 2));
      default: return detail::randomMonomialSum(rng, level, rng.range(1, 2));
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    const std::string tag = "trial " + std::to_string(trial) + ": ";

    // Face identities: half arbitrary pairs, half normalized pairs.
    {
      const int p = rng.range(0, maxLevel - 1);
      const int q = rng.range(0, maxLevel - p);
      AlgebraElement a = rng.coin() ? detail::randomMonomialSum(rng, p, rng.range(1, 3)) : randomNormalized(p);
      AlgebraElement b = rng.coin() ? detail::randomMonomialSum(rng, q, rng.range(1, 3)) : randomNormalized(q);
      const auto r = ezFaceChecks(ctx, a, b, p + q);
      rep.faces.checked += r.checked;
      rep.faces.vacuous += r.vacuous;
      for (const auto& f : r.failures) rep.faces.fail(tag + f);
    }

    // Products lemma at level l, with l + 2 ≤ maxLevel + 1 for the bounding chain.
    {
      const int l = rng.range(1, std::max(1, maxLevel - 1));
      AlgebraElement a = rng.coin() ? randomCycle(l) : randomNormalized(l);
      AlgebraElement x = randomNormalized(l + 1);
      AlgebraElement b = rng.coin() ? face(ctx, 0, x) : randomCycle(l);
      AlgebraElement c = randomCoefficient(l - 1);
      const auto v = lemmaProductsCheck(ctx, a, b, c, x);
      const std::string args = algebra::toString(a) + ", " + algebra::toString(b) + ", c=" + algebra::toString(c);
      tally(rep.products, v.normalized, tag + "s1s0(c)m(a,b) not normalized for " + args);
      tally(rep.products, v.cycle, tag + "s1s0(c)m(a,b) not a cycle for " + args);
      tally(rep.products, v.bounding, tag + "bounding chain fails for " + args);
    }

    // Squares lemma.
    {
      const int l = rng.range(1, std::max(1, maxLevel - 1));
      AlgebraElement a = rng.coin() ? randomCycle(l) : randomNormalized(l);
      AlgebraElement c = randomCoefficient(l);
      AlgebraElement b = randomNormalized(l + 1);
      const auto v = lemmaSquaresCheck(ctx, a, c, b);
      const std::string args = algebra::toString(a) + ", c=" + algebra::toString(c) + ", b=" + algebra::toString(b);
      tally(rep.squares, v.normalized, tag + "s0(c)q(a) not normalized for " + args);
      tally(rep.squares, v.cycle, tag + "s0(c)q(a) not a cycle for " + args);
      tally(rep.squares, v.bounding, tag + "bounding chain fails for " + args);
    }

    // ρ is commutative in homology.
    {
      const int p = rng.range(0, maxLevel - 1);
      const int q = rng.range(0, maxLevel - p);
      const AlgebraElement a = randomCycle(p);
      const AlgebraElement b = randomCycle(q);
      const AlgebraElement sum = shuffleProduct(a, b) + shuffleProduct(b, a);
      record(rep.commutativity, e.isCycle(sum) && e.isBoundary(sum),
             tag + "rho(a,b) + rho(b,a) not a boundary for " + algebra::toString(a) + ", " + algebra::toString(b));
    }
  }
  return rep;
}

}  // namespace looplab::ez
