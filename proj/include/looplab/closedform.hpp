#pragma once

// The answers as data: the bigraded algebra H_*(H*X; Ω) with its products and
// top δ-operation, and H*(ΛX) as an unstable A-algebra with explicit Sq matrices.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "looplab/algebra.hpp"
#include "looplab/binomial.hpp"
#include "looplab/errors.hpp"
#include "looplab/simplicial.hpp"
#include "looplab/space.hpp"
#include "looplab/steenrod.hpp"

namespace looplab::closedform {

using algebra::AlgebraElement;
using algebra::GradingSpec;

/// A basis label of the bigraded answer.
///   n odd:  x^t dx^ε γ_q               (kind Gamma, 0 ≤ t ≤ n)
///   n even: 1, x^t a_q, x^t b_q        (kinds Unit, A, B, 0 ≤ t < n)
struct Main1Label {
  enum class Kind { Unit, Gamma, A, B };
  Kind kind = Kind::Unit;
  int q = 0;
  int xPow = 0;
  int dx = 0;

  static Main1Label unit() { return {}; }
  static Main1Label gamma(int q, int t = 0, int eps = 0) { return {Kind::Gamma, q, t, eps}; }
  static Main1Label a(int q, int t = 0) { return {Kind::A, q, t, 0}; }
  static Main1Label b(int q, int t = 0) { return {Kind::B, q, t, 0}; }

  friend bool operator==(const Main1Label&, const Main1Label&) = default;
  friend auto operator<=>(const Main1Label&, const Main1Label&) = default;
};

inline std::string xPrefix(int t) {
  if (t == 0) return "";
  if (t == 1) return "x*";
  return "x^" + std::to_string(t) + "*";
}

inline std::string toString(const Main1Label& l) {
  switch (l.kind) {
    case Main1Label::Kind::Unit: return "1";
    case Main1Label::Kind::Gamma: return xPrefix(l.xPow) + (l.dx ? "dx*" : "") + "gamma_" + std::to_string(l.q);
    case Main1Label::Kind::A: return xPrefix(l.xPow) + "a_" + std::to_string(l.q);
    case Main1Label::Kind::B: return xPrefix(l.xPow) + "b_" + std::to_string(l.q);
  }
  return "?";
}

inline void checkLabel(const Main1Label& l, int n) {
  const bool odd = n % 2 == 1;
  bool ok = l.q >= 0 && l.xPow >= 0 && (l.dx == 0 || l.dx == 1);
  switch (l.kind) {
    case Main1Label::Kind::Unit: ok = ok && !odd && l.q == 0 && l.xPow == 0 && l.dx == 0; break;
    case Main1Label::Kind::Gamma: ok = ok && odd && l.xPow <= n; break;
    case Main1Label::Kind::A:
    case Main1Label::Kind::B: ok = ok && !odd && l.xPow < n && l.dx == 0; break;
  }
  if (!ok) throw UsageError("invalid label " + toString(l) + " for n = " + std::to_string(n));
}

/// Internal degree t of the class (the simplicial level is l.q).
inline int internalDegree(const Main1Label& l, const GradingSpec& g) {
  const int m = g.m;
  const int top = l.q * g.degDy();
  switch (l.kind) {
    case Main1Label::Kind::Unit: return 0;
    case Main1Label::Kind::Gamma: return l.xPow * m + l.dx * (m - 1) + top;
    case Main1Label::Kind::A: return l.xPow * m + (m - 1) + top;
    case Main1Label::Kind::B: return l.xPow * m + m + top;
  }
  return 0;
}

/// Degree in H*(ΛX): internal degree minus simplicial level.
inline int totalDegree(const Main1Label& l, const GradingSpec& g) { return internalDegree(l, g) - l.q; }

/// Chain representative at level l.q.
inline AlgebraElement representative(const Main1Label& l) {
  const int q = l.q;
  const AlgebraElement xt = algebra::xGen(q, l.xPow);
  switch (l.kind) {
    case Main1Label::Kind::Unit: return AlgebraElement::one(0);
    case Main1Label::Kind::Gamma: return l.dx ? xt * algebra::dxGen(q) * simplicial::omega(q) : xt * simplicial::omega(q);
    case Main1Label::Kind::A: return xt * simplicial::alpha(q);
    case Main1Label::Kind::B: return xt * simplicial::beta(q);
  }
  return AlgebraElement::zero(q);
}

/// All labels at simplicial level q.
inline std::vector<Main1Label> main1Basis(int n, int q) {
  std::vector<Main1Label> out;
  if (n % 2 == 1) {
    for (int t = 0; t <= n; ++t) {
      for (int eps = 0; eps <= 1; ++eps) out.push_back(Main1Label::gamma(q, t, eps));
    }
  } else {
    if (q == 0) out.push_back(Main1Label::unit());
    for (int t = 0; t < n; ++t) {
      out.push_back(Main1Label::a(q, t));
      out.push_back(Main1Label::b(q, t));
    }
  }
  return out;
}

inline std::vector<Main1Label> main1BasisAt(const GradingSpec& g, int q, int t) {
  std::vector<Main1Label> out;
  for (const auto& l : main1Basis(g.n, q)) {
    if (internalDegree(l, g) == t) out.push_back(l);
  }
  return out;
}

inline std::size_t main1Dims(const GradingSpec& g, int q, int t) { return main1BasisAt(g, q, t).size(); }

/// Product of two basis labels; nullopt means zero.
inline std::optional<Main1Label> main1Product(const Main1Label& a, const Main1Label& b, int n) {
  checkLabel(a, n);
  checkLabel(b, n);
  using K = Main1Label::Kind;
  if (a.kind == K::Unit) return b;
  if (b.kind == K::Unit) return a;
  const int q = a.q + b.q;
  if (!lucas(q, a.q)) return std::nullopt;
  if (a.kind == K::Gamma) {
    if (a.xPow + b.xPow > n || a.dx + b.dx > 1) return std::nullopt;
    return Main1Label::gamma(q, a.xPow + b.xPow, a.dx + b.dx);
  }
  if (a.kind == K::A && b.kind == K::A) return std::nullopt;
  const int t = a.xPow + b.xPow + 1;
  if (t >= n) return std::nullopt;
  if (a.kind == K::B && b.kind == K::B) return Main1Label::b(q, t);
  return Main1Label::a(q, t);
}

/// δ_i on the generators γ_q, a_q, b_q for 2 ≤ i ≤ q; nullopt means zero.
/// Only the top operation i = q can be nonzero.
inline std::optional<Main1Label> main1Delta(int i, const Main1Label& l, int n) {
  checkLabel(l, n);
  if (l.kind == Main1Label::Kind::Unit || l.xPow != 0 || l.dx != 0) {
    throw UsageError("main1Delta: defined on the generators gamma_q, a_q, b_q only");
  }
  if (i < 2 || i > l.q) throw UsageError("main1Delta: need 2 <= i <= q");
  if (i < l.q) return std::nullopt;
  const int q = l.q;
  if (!lucas(2 * q - 1, q)) return std::nullopt;
  switch (l.kind) {
    case Main1Label::Kind::Gamma: return Main1Label::gamma(2 * q);
    case Main1Label::Kind::B: return 1 < n ? std::optional(Main1Label::b(2 * q, 1)) : std::nullopt;
    default: return std::nullopt;
  }
}

// H*(ΛX) ------------------------------------------------------------------

/// Total-degree basis of H*(ΛX) with Sq matrices and products, up to degMax.
/// Uses Sq^{mi} from the binomial formulas and Sq^1 γ_q = c x^n dx γ_{q-1}.
inline steenrod::FiniteAModule loopCohomology(int n, int m, Sq1Constant c, int degMax, int kMax) {
  if (n < 1 || m < 2) throw UsageError("loopCohomology: need n >= 1, m >= 2");
  if (n % 2 == 1 && c == Sq1Constant::Undetermined) {
    throw UsageError("loopCohomology: Sq^1 constant c_q is undetermined for this space");
  }
  const GradingSpec g(n, m);
  steenrod::FiniteAModule mod(degMax, kMax);
  const int step = m * (n + 1) - 2;  // total degree added per level
  std::map<Main1Label, steenrod::BasisRef> refs;
  std::vector<Main1Label> labels;
  for (int q = 0; q * step <= degMax; ++q) {
    for (const auto& l : main1Basis(n, q)) {
      if (auto r = mod.addBasis(totalDegree(l, g), toString(l))) {
        refs.emplace(l, *r);
        labels.push_back(l);
      }
    }
  }
  auto find = [&](const Main1Label& l) -> std::optional<steenrod::BasisRef> {
    auto it = refs.find(l);
    if (it == refs.end()) return std::nullopt;
    return it->second;
  };

  for (const auto& l : labels) {
    const auto src = refs.at(l);
    if (l.kind == Main1Label::Kind::Unit) continue;
    // weight w with Sq^{mi}(x^j z_q) = C(w + j, i) x^{i+j} z_q
    int w = l.q * (n + 1);
    if (l.kind == Main1Label::Kind::B) w += 1;
    const int xMax = n % 2 == 1 ? n : n - 1;
    for (int i = 1; l.xPow + i <= xMax && m * i <= kMax; ++i) {
      if (!lucas(w + l.xPow, i)) continue;
      Main1Label t = l;
      t.xPow += i;
      if (auto dst = find(t)) mod.setSq(m * i, src, *dst);
    }
    if (l.kind == Main1Label::Kind::Gamma && l.q >= 1 && l.xPow == 0 && l.dx == 0 && c == Sq1Constant::One) {
      if (auto dst = find(Main1Label::gamma(l.q - 1, n, 1))) mod.setSq(1, src, *dst);
    }
  }

  mod.enableProduct();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i; j < labels.size(); ++j) {
      const auto ra = refs.at(labels[i]);
      const auto rb = refs.at(labels[j]);
      if (ra.degree + rb.degree > degMax) continue;
      gf2::BitRow row(mod.dim(ra.degree + rb.degree));
      if (auto p = main1Product(labels[i], labels[j], n)) row.set(find(*p)->index);
      mod.setProduct(ra, rb, row);
    }
  }
  return mod;
}

inline steenrod::FiniteAModule loopCohomology(const SpaceDescriptor& s, int degMax, int kMax) {
  return loopCohomology(s.n, s.r, sq1Constant(s), degMax, kMax);
}

}  // namespace looplab::closedform
