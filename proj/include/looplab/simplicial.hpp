#pragma once

// The almost-free simplicial resolution R_q = F2[x, y_1..y_q] of F2[x]/(x^{n+1})
// and its levelwise de Rham complexes.

#include <optional>
#include <string>
#include <vector>

#include "looplab/algebra.hpp"
#include "looplab/errors.hpp"
#include "looplab/gf2.hpp"

namespace looplab::simplicial {

using algebra::AlgebraElement;
using algebra::GradingSpec;
using algebra::Monomial;

/// Deliberate corruption of the face table, for negative controls only:
/// d_face(y_yIndex) := 0 on level `level`.
struct FaceMutation {
  int level = 1;
  int face = 0;
  int yIndex = 1;
};

struct ResolutionContext {
  GradingSpec grading;
  int maxLevel = 3;
  std::optional<FaceMutation> mutation;

  ResolutionContext() = default;
  ResolutionContext(GradingSpec g, int maxLevel_) : grading(g), maxLevel(maxLevel_) {
    if (maxLevel < 0) throw UsageError("ResolutionContext: maxLevel must be >= 0");
  }
};

namespace detail {

// Image of y_j under d_i at level q, as (target index or 0 for x^{n+1}, or
// nullopt for zero). Returns the target y-index; 0 encodes "x^{n+1}".
inline std::optional<int> faceOfY(const ResolutionContext& ctx, int q, int i, int j) {
  if (ctx.mutation && ctx.mutation->level == q && ctx.mutation->face == i && ctx.mutation->yIndex == j) {
    return std::nullopt;
  }
  if (i == 0 && j == 1) return 0;
  if (i < j) return j - 1;
  if (j < q) return j;
  return std::nullopt;  // i = q = j
}

}  // namespace detail

/// d_i applied to a single monomial at level q; nullopt means the image is zero.
inline std::optional<Monomial> faceMonomial(const ResolutionContext& ctx, int i, const Monomial& mono) {
  const int q = mono.level;
  if (q < 1) throw UsageError("face: level must be >= 1");
  if (i < 0 || i > q) throw UsageError("face: index out of range");
  const int n = ctx.grading.n;
  Monomial out = Monomial::unit(q - 1);
  out.xExp = mono.xExp;
  out.dx = mono.dx;
  for (int j = 1; j <= q; ++j) {
    const int e = mono.yExp[j - 1];
    const bool dy = mono.hasDy(j);
    if (e == 0 && !dy) continue;
    const std::optional<int> target = detail::faceOfY(ctx, q, i, j);
    if (!target) return std::nullopt;
    if (*target == 0) {
      // y_1 -> x^{n+1}, dy_1 -> d(x^{n+1}) = (n+1) x^n dx
      out.xExp = static_cast<std::uint16_t>(out.xExp + (n + 1) * e);
      if (dy) {
        if (n % 2 == 1 || out.dx) return std::nullopt;
        out.xExp = static_cast<std::uint16_t>(out.xExp + n);
        out.dx = true;
      }
    } else {
      const int k = *target;
      out.yExp[k - 1] = static_cast<std::uint16_t>(out.yExp[k - 1] + e);
      if (dy) {
        if (out.hasDy(k)) return std::nullopt;
        out.dyMask = static_cast<std::uint16_t>(out.dyMask | (1U << (k - 1)));
      }
    }
  }
  return out;
}

/// s_i applied to a monomial at level q (never zero).
inline Monomial degeneracyMonomial(int i, const Monomial& mono) {
  const int q = mono.level;
  if (i < 0 || i > q) throw UsageError("degeneracy: index out of range");
  if (q + 1 > algebra::kMaxLevel) throw UsageError("degeneracy: level limit exceeded");
  Monomial out = Monomial::unit(q + 1);
  out.xExp = mono.xExp;
  out.dx = mono.dx;
  for (int j = 1; j <= q; ++j) {
    const int k = (i >= j) ? j : j + 1;
    out.yExp[k - 1] = mono.yExp[j - 1];
    if (mono.hasDy(j)) out.dyMask = static_cast<std::uint16_t>(out.dyMask | (1U << (k - 1)));
  }
  return out;
}

inline AlgebraElement face(const ResolutionContext& ctx, int i, const AlgebraElement& a) {
  if (a.level() < 1) throw UsageError("face: level must be >= 1");
  if (i < 0 || i > a.level()) throw UsageError("face: index out of range");
  return a.mapTerms(a.level() - 1, [&](const Monomial& m) { return faceMonomial(ctx, i, m); });
}

inline AlgebraElement degeneracy(int i, const AlgebraElement& a) {
  if (i < 0 || i > a.level()) throw UsageError("degeneracy: index out of range");
  return a.mapTerms(a.level() + 1, [&](const Monomial& m) { return std::optional<Monomial>(degeneracyMonomial(i, m)); });
}

// ---------------------------------------------------------------------------
// Distinguished elements.

/// ω_q = dy_1 ... dy_q (ω_0 = 1).
inline AlgebraElement omega(int q) {
  Monomial mono = Monomial::unit(q);
  mono.dyMask = static_cast<std::uint16_t>((1U << q) - 1U);
  return AlgebraElement::of(mono);
}

/// (ω_q)_i: ω_q with dy_i removed.
inline AlgebraElement omegaHat(int q, int i) {
  if (i < 1 || i > q) throw UsageError("omegaHat: need 1 <= i <= q");
  Monomial mono = Monomial::unit(q);
  mono.dyMask = static_cast<std::uint16_t>(((1U << q) - 1U) & ~(1U << (i - 1)));
  return AlgebraElement::of(mono);
}

/// (ω_q)_{i,j}: ω_q with dy_i and dy_j removed.
inline AlgebraElement omegaHatHat(int q, int i, int j) {
  if (!(1 <= i && i < j && j <= q)) throw UsageError("omegaHatHat: need 1 <= i < j <= q");
  Monomial mono = Monomial::unit(q);
  mono.dyMask = static_cast<std::uint16_t>(((1U << q) - 1U) & ~(1U << (i - 1)) & ~(1U << (j - 1)));
  return AlgebraElement::of(mono);
}

inline AlgebraElement alpha(int q) { return algebra::dxGen(q) * omega(q); }

inline AlgebraElement beta(int q) {
  AlgebraElement b = algebra::xGen(q) * omega(q);
  for (int i = 1; i <= q; ++i) b += algebra::dxGen(q) * algebra::yGen(q, i) * omegaHat(q, i);
  return b;
}

enum class Distinguished { Omega, Alpha, Beta, OmegaHat, OmegaHatHat };

inline AlgebraElement distinguished(Distinguished kind, int q, int i = 0, int j = 0) {
  if (q < 0 || q > algebra::kMaxLevel) throw UsageError("distinguished: level out of range");
  switch (kind) {
    case Distinguished::Omega: return omega(q);
    case Distinguished::Alpha: return alpha(q);
    case Distinguished::Beta: return beta(q);
    case Distinguished::OmegaHat: return omegaHat(q, i);
    case Distinguished::OmegaHatHat: return omegaHatHat(q, i, j);
  }
  throw UsageError("distinguished: unknown kind");
}

// ---------------------------------------------------------------------------
// Certification of the operator tables.

struct CheckResult {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void expectEqual(const AlgebraElement& lhs, const AlgebraElement& rhs, const std::string& what) {
    ++checked;
    if (!(lhs == rhs)) {
      pass = false;
      failures.push_back(what + ": " + algebra::toString(lhs) + " != " + algebra::toString(rhs));
    }
  }
};

/// Algebra generators x, dx, y_j, dy_j of Ω(R_level).
inline std::vector<std::pair<std::string, AlgebraElement>> generators(int level) {
  std::vector<std::pair<std::string, AlgebraElement>> out;
  out.emplace_back("x", algebra::xGen(level));
  out.emplace_back("dx", algebra::dxGen(level));
  for (int j = 1; j <= level; ++j) {
    out.emplace_back("y" + std::to_string(j), algebra::yGen(level, j));
    out.emplace_back("dy" + std::to_string(j), algebra::dyGen(level, j));
  }
  return out;
}

/// Simplicial identities on the generators of levels q and q+1 (both maps are
/// algebra maps, so generators suffice). Covering level q+1 is what lets a
/// corrupted level-q face surface through the d_i d_j relations.
inline CheckResult checkSimplicialIdentities(const ResolutionContext& ctx, int q) {
  if (q < 0 || q > ctx.maxLevel) throw UsageError("checkSimplicialIdentities: level out of range");
  CheckResult r;
  for (int level = q; level <= q + 1; ++level) {
    for (const auto& [name, g] : generators(level)) {
      const std::string at = " on " + name + " at level " + std::to_string(level);
      // d_i d_j = d_{j-1} d_i for i < j
      if (level >= 2) {
        for (int j = 1; j <= level; ++j) {
          for (int i = 0; i < j; ++i) {
            r.expectEqual(face(ctx, i, face(ctx, j, g)), face(ctx, j - 1, face(ctx, i, g)),
                          "d" + std::to_string(i) + "d" + std::to_string(j) + at);
          }
        }
      }
      // face/degeneracy relations
      for (int j = 0; j <= level; ++j) {
        const AlgebraElement sj = degeneracy(j, g);
        for (int i = 0; i <= level + 1; ++i) {
          const std::string what = "d" + std::to_string(i) + "s" + std::to_string(j) + at;
          if (i < j) {
            r.expectEqual(face(ctx, i, sj), degeneracy(j - 1, face(ctx, i, g)), what);
          } else if (i == j || i == j + 1) {
            r.expectEqual(face(ctx, i, sj), g, what);
          } else {
            r.expectEqual(face(ctx, i, sj), degeneracy(j, face(ctx, i - 1, g)), what);
          }
        }
      }
      // s_i s_j = s_{j+1} s_i for i <= j
      for (int j = 0; j <= level; ++j) {
        for (int i = 0; i <= j; ++i) {
          r.expectEqual(degeneracy(i, degeneracy(j, g)), degeneracy(j + 1, degeneracy(i, g)),
                        "s" + std::to_string(i) + "s" + std::to_string(j) + at);
        }
      }
    }
  }
  return r;
}

/// Matrix of a monomial map between two sorted bases (rows = target).
template <typename F>
gf2::BitMatrix monomialMapMatrix(const std::vector<Monomial>& source, const std::vector<Monomial>& target, F&& f) {
  gf2::BitMatrix mat(target.size(), source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    if (std::optional<Monomial> image = f(source[c])) {
      const long r = algebra::indexIn(target, *image);
      if (r < 0) throw StructuralError("monomialMapMatrix: image outside the target basis");
      mat.flip(static_cast<std::size_t>(r), c);
    }
  }
  return mat;
}

struct Pi0Report {
  bool pass = true;
  /// dim H_0 in internal degrees 0..bound.
  std::vector<std::size_t> h0;
  std::vector<std::string> failures;
};

/// H_*(R_•) through the unnormalized complex with differential Σ d_i; expects
/// F2[x]/(x^{n+1}) in level 0 and nothing in levels 1..maxLevel-1.
inline Pi0Report checkPi0(const ResolutionContext& ctx, int degreeBound) {
  const GradingSpec& g = ctx.grading;
  Pi0Report rep;
  auto boundaryMatrix = [&](int q, int t) {
    const auto src = algebra::monomialBasis(q, g, t, true);
    const auto dst = algebra::monomialBasis(q - 1, g, t, true);
    gf2::BitMatrix total(dst.size(), src.size());
    for (int i = 0; i <= q; ++i) {
      const auto mat = monomialMapMatrix(src, dst, [&](const Monomial& m) { return faceMonomial(ctx, i, m); });
      for (std::size_t r = 0; r < mat.rows(); ++r) {
        for (auto c : mat.row(r).setBits()) total.flip(r, c);
      }
    }
    return total;
  };
  for (int t = 0; t <= degreeBound; ++t) {
    for (int q = 0; q < std::max(1, ctx.maxLevel); ++q) {
      const std::size_t dim = algebra::monomialBasis(q, g, t, true).size();
      const std::size_t rankOut = q >= 1 ? gf2::rank(boundaryMatrix(q, t)) : 0;
      const std::size_t rankIn = gf2::rank(boundaryMatrix(q + 1, t));
      const std::size_t h = dim - rankOut - rankIn;
      if (q == 0) {
        rep.h0.push_back(h);
        const bool expectOne = t % g.m == 0 && t / g.m <= g.n;
        if (h != (expectOne ? 1U : 0U)) {
          rep.pass = false;
          rep.failures.push_back("H_0 in degree " + std::to_string(t) + " has dim " + std::to_string(h));
        }
      } else if (h != 0) {
        rep.pass = false;
        rep.failures.push_back("H_" + std::to_string(q) + " in degree " + std::to_string(t) + " has dim " +
                               std::to_string(h));
      }
    }
  }
  return rep;
}

/// Membership in the degenerate subcomplex D_q: the span of all s_i-images of
/// level q-1, tested one internal degree at a time.
inline bool isDegenerate(const ResolutionContext& ctx, const AlgebraElement& a) {
  const int q = a.level();
  if (a.isZero()) return true;
  if (q == 0) return false;
  for (const auto& [t, part] : algebra::homogeneousParts(a, ctx.grading)) {
    const auto below = algebra::monomialBasis(q - 1, ctx.grading, t);
    const auto here = algebra::monomialBasis(q, ctx.grading, t);
    std::vector<gf2::BitRow> images;
    for (const auto& mono : below) {
      for (int i = 0; i < q; ++i) {
        images.push_back(algebra::toRow(AlgebraElement::of(degeneracyMonomial(i, mono)), here));
      }
    }
    const gf2::Subspace span = gf2::Subspace::span(here.size(), images);
    if (!gf2::solveInSpan(span, algebra::toRow(part, here)).member) return false;
  }
  return true;
}

}  // namespace looplab::simplicial
