#pragma once

// The stable side. Thom modules of qτ feed the cofibers C_q(M) of
// T(qτ) -> T((q+1)τ), which assemble into CT(M); ΛM's integral homology
// is kept here as the reference it is compared against.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "looplab/binomial.hpp"
#include "looplab/errors.hpp"
#include "looplab/gf2.hpp"
#include "looplab/space.hpp"
#include "looplab/steenrod.hpp"

namespace looplab::thom {

using steenrod::FiniteAModule;

// Abelian groups ------------------------------------------------------------

/// Z^freeRank ⊕ Z/t_1 ⊕ ... with invariant factors t_1 | t_2 | ..., all > 1.
struct AbelianGroup {
  int freeRank = 0;
  std::vector<std::int64_t> torsion;

  static AbelianGroup free(int rank = 1) { return {rank, {}}; }
  static AbelianGroup cyclic(std::int64_t order) {
    AbelianGroup g;
    g.addTorsion(order);
    return g;
  }

  bool isZero() const { return freeRank == 0 && torsion.empty(); }

  void addTorsion(std::int64_t order) {
    if (order == 0) throw StructuralError("Z/0 is not a torsion group; use a free summand");
    order = std::llabs(order);
    if (order == 1) return;
    torsion.push_back(order);
    normalize();
  }

  AbelianGroup& operator+=(const AbelianGroup& o) {
    freeRank += o.freeRank;
    torsion.insert(torsion.end(), o.torsion.begin(), o.torsion.end());
    normalize();
    return *this;
  }

  std::string toString() const {
    if (isZero()) return "0";
    std::string s;
    auto add = [&](const std::string& part) { s += (s.empty() ? "" : " + ") + part; };
    if (freeRank == 1) add("Z");
    if (freeRank > 1) add("Z^" + std::to_string(freeRank));
    for (auto t : torsion) add("Z/" + std::to_string(t));
    return s;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  // Split into prime powers, then recombine the largest powers of each prime
  // into the largest invariant factor, and so on.
  void normalize() {
    std::map<std::int64_t, std::vector<std::int64_t>> primary;
    for (auto t : torsion) {
      std::int64_t v = t;
      for (std::int64_t p = 2; p * p <= v; ++p) {
        if (v % p) continue;
        std::int64_t pk = 1;
        while (v % p == 0) {
          v /= p;
          pk *= p;
        }
        primary[p].push_back(pk);
      }
      if (v > 1) primary[v].push_back(v);
    }
    std::size_t count = 0;
    for (auto& [p, powers] : primary) {
      std::sort(powers.rbegin(), powers.rend());
      count = std::max(count, powers.size());
    }
    std::vector<std::int64_t> factors(count, 1);
    for (const auto& [p, powers] : primary) {
      for (std::size_t i = 0; i < powers.size(); ++i) factors[i] *= powers[i];
    }
    std::sort(factors.begin(), factors.end());
    torsion = factors;
  }
};

/// Degree-indexed abelian groups; zero groups are not stored.
class GradedAbelianGroups {
 public:
  void add(int degree, const AbelianGroup& g) {
    if (g.isZero()) return;
    groups_[degree] += g;
  }
  void addFree(int degree, int rank = 1) { add(degree, AbelianGroup::free(rank)); }
  void addTorsion(int degree, std::int64_t order) { add(degree, AbelianGroup::cyclic(order)); }

  AbelianGroup at(int degree) const {
    auto it = groups_.find(degree);
    return it == groups_.end() ? AbelianGroup{} : it->second;
  }

  GradedAbelianGroups shifted(int s) const {
    GradedAbelianGroups out;
    for (const auto& [d, g] : groups_) out.add(d + s, g);
    return out;
  }

  GradedAbelianGroups truncated(int degMax) const {
    GradedAbelianGroups out;
    for (const auto& [d, g] : groups_) {
      if (d <= degMax) out.add(d, g);
    }
    return out;
  }

  GradedAbelianGroups& operator+=(const GradedAbelianGroups& o) {
    for (const auto& [d, g] : o.groups_) add(d, g);
    return *this;
  }

  const std::map<int, AbelianGroup>& groups() const { return groups_; }

  /// `degree<TAB>freeRank<TAB>torsion` for every degree 0..degMax.
  std::string toTsv(int degMax) const {
    std::ostringstream os;
    os << "degree\tfreeRank\ttorsion\n";
    for (int d = 0; d <= degMax; ++d) {
      const AbelianGroup g = at(d);
      std::string t;
      for (auto v : g.torsion) t += (t.empty() ? "" : ",") + std::to_string(v);
      os << d << '\t' << g.freeRank << '\t' << (t.empty() ? "-" : t) << '\n';
    }
    return os.str();
  }

  nlohmann::json toJson() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [d, g] : groups_) j.push_back({{"degree", d}, {"freeRank", g.freeRank}, {"torsion", g.torsion}});
    return j;
  }

  friend bool operator==(const GradedAbelianGroups&, const GradedAbelianGroups&) = default;

 private:
  std::map<int, AbelianGroup> groups_;
};

// Integer linear algebra ------------------------------------------------------

/// Nonzero diagonal entries of the Smith normal form of an integer matrix.
inline std::vector<std::int64_t> smithInvariants(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the remaining block becomes the pivot
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return out;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t f = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t f = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= f * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    out.push_back(std::llabs(a[t][t]));
  }
  return out;
}

// Module descriptions -----------------------------------------------------------

/// Basis and Sq entries by label, so wedges can be assembled before the
/// (basis-freezing) FiniteAModule is built.
struct ModuleSpec {
  std::vector<std::pair<int, std::string>> basis;
  std::vector<std::tuple<int, std::string, std::string>> sq;  // (k, source, target)

  void addBasis(int degree, std::string label) { basis.emplace_back(degree, std::move(label)); }
  void addSq(int k, std::string source, std::string target) { sq.emplace_back(k, std::move(source), std::move(target)); }

  ModuleSpec& operator+=(const ModuleSpec& o) {
    basis.insert(basis.end(), o.basis.begin(), o.basis.end());
    sq.insert(sq.end(), o.sq.begin(), o.sq.end());
    return *this;
  }

  FiniteAModule build(int degMax, int kMax) const {
    FiniteAModule m(degMax, kMax);
    auto sorted = basis;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [d, l] : sorted) m.addBasis(d, l);
    for (const auto& [k, s, t] : sq) {
      auto a = m.find(s);
      auto b = m.find(t);
      if (!a || !b || k > kMax) continue;
      m.setSq(k, *a, *b);
    }
    return m;
  }
};

inline std::string powerLabel(int j) {
  if (j == 0) return "1";
  if (j == 1) return "x";
  return "x^" + std::to_string(j);
}

inline std::string thomLabel(int j, int q) {
  const std::string u = "u_" + std::to_string(q);
  if (j == 0) return u;
  return powerLabel(j) + "*" + u;
}

/// Labels of the cofiber classes, e.g. a_1^0, d_2^3.
inline std::string cofiberLabel(char kind, int q, int j) {
  return std::string(1, kind) + "_" + std::to_string(q) + "^" + std::to_string(j);
}

// Thom modules ----------------------------------------------------------------

/// w(qτ) = (1 + x)^{q(n+1)} truncated at x^n, as coefficients of 1, x, ..., x^n.
inline std::vector<int> swTotal(const SpaceDescriptor& s, int q) {
  if (q < 0) throw UsageError("swTotal: q must be >= 0");
  std::vector<int> w(static_cast<std::size_t>(s.n) + 1);
  for (int i = 0; i <= s.n; ++i) w[i] = lucas(static_cast<std::int64_t>(q) * (s.n + 1), i);
  return w;
}

/// H*(M) = F2[x]/(x^{n+1}) with Sq^{ri} x^j = C(j, i) x^{i+j}.
inline ModuleSpec baseSpec(const SpaceDescriptor& s) {
  ModuleSpec spec;
  for (int j = 0; j <= s.n; ++j) spec.addBasis(s.r * j, powerLabel(j));
  for (int j = 0; j <= s.n; ++j) {
    for (int i = 1; i + j <= s.n; ++i) {
      if (lucas(j, i)) spec.addSq(s.r * i, powerLabel(j), powerLabel(i + j));
    }
  }
  return spec;
}

/// H~*(T(qτ)): x^j u_q in degree rj + qd with Sq^{ri} u_q = w_i(qτ) u_q,
/// extended by the Cartan formula to Sq^{ri}(x^j u_q) = C(q(n+1)+j, i) x^{i+j} u_q.
inline ModuleSpec thomSpec(const SpaceDescriptor& s, int q) {
  if (q < 0) throw UsageError("thomModule: q must be >= 0");
  ModuleSpec spec;
  const std::int64_t weight = static_cast<std::int64_t>(q) * (s.n + 1);
  for (int j = 0; j <= s.n; ++j) spec.addBasis(s.r * j + q * s.d, thomLabel(j, q));
  for (int j = 0; j <= s.n; ++j) {
    for (int i = 1; i + j <= s.n; ++i) {
      if (lucas(weight + j, i)) spec.addSq(s.r * i, thomLabel(j, q), thomLabel(i + j, q));
    }
  }
  return spec;
}

/// The Thom module, with products (x^i u)(x^j u) = x^{i+j} w_top(qτ) u; with
/// `withBase` the H*(M)-module structure is included as well.
inline FiniteAModule thomModule(const SpaceDescriptor& s, int q, int degMax, int kMax, bool withBase = false) {
  ModuleSpec spec = thomSpec(s, q);
  if (withBase) spec += baseSpec(s);
  FiniteAModule m = spec.build(degMax, kMax);
  m.enableProduct();
  // w_top(qτ) = C(q(n+1), qn) x^{qn}, zero once qn > n
  const int topPow = q * s.n;
  const int wTop = topPow <= s.n ? lucas(static_cast<std::int64_t>(q) * (s.n + 1), topPow) : 0;
  auto set = [&](const std::string& a, const std::string& b, const std::string& c) {
    auto ra = m.find(a);
    auto rb = m.find(b);
    if (!ra || !rb || ra->degree + rb->degree > degMax) return;
    gf2::BitRow row(m.dim(ra->degree + rb->degree));
    if (!c.empty()) {
      if (auto rc = m.find(c)) row.set(rc->index);
    }
    m.setProduct(*ra, *rb, row);
  };
  for (int i = 0; i <= s.n; ++i) {
    for (int j = i; j <= s.n; ++j) {
      const int e = i + j + topPow;
      set(thomLabel(i, q), thomLabel(j, q), wTop && e <= s.n ? thomLabel(e, q) : "");
    }
  }
  if (withBase) {
    for (int i = 0; i <= s.n; ++i) {
      for (int j = 0; j <= s.n; ++j) {
        set(powerLabel(i), thomLabel(j, q), i + j <= s.n ? thomLabel(i + j, q) : "");
        if (i <= j) set(powerLabel(i), powerLabel(j), i + j <= s.n ? powerLabel(i + j) : "");
      }
    }
  }
  return m;
}

/// The multiplier of s_q^*(u_{(q+1)τ}) = χ(M) u_{qτ} u_0.
inline int eulerRestriction(const SpaceDescriptor& s, int /*q*/ = 0) { return s.chi; }

/// Sq^1 d_{q+1}^0 = c_q^n exactly when χ(M) = 2 mod 4 (and n is odd).
inline bool cofiberSq1Rule(const SpaceDescriptor& s) { return s.n % 2 == 1 && s.chi % 4 == 2; }

// Cofibers ----------------------------------------------------------------------

/// H~*(Σ^{(r-2)(q+1)} C_q; F2) from the long exact sequence of
/// T(qτ) -> T((q+1)τ) -> C_q. The restriction s^* sends x^j u_{q+1} to
/// χ x^{j+n} u_q; its cokernel (suspended once) and kernel give the basis,
/// Sq acts through the two Thom modules, and the one extension Sq^1 d^0 = c^n
/// comes from the χ mod 4 rule.
inline ModuleSpec cofiberF2Spec(const SpaceDescriptor& s, int q, int degMax, int kMax) {
  if (s.chi == 0) throw UsageError("cofiberF2: χ(M) = 0, use sphereCq");
  const int shift = (s.r - 2) * (q + 1);
  const FiniteAModule lower = thomSpec(s, q).build(degMax, kMax);
  const FiniteAModule upper = thomSpec(s, q + 1).build(degMax, kMax);
  const bool odd = s.n % 2 == 1;

  // x-exponent of the basis element of a Thom module in degree k (one per degree)
  auto exponent = [&](int k, int level) { return (k - level * s.d) / s.r; };
  auto restriction = [&](int k) {
    gf2::BitMatrix S(lower.dim(k), upper.dim(k));
    for (std::size_t c = 0; c < upper.dim(k); ++c) {
      const int j = exponent(k, q + 1);
      if (s.chi % 2 != 0 && j + s.n <= s.n) {
        auto target = lower.find(thomLabel(j + s.n, q));
        if (target && target->degree == k) S.set(target->index, c);
      }
    }
    return S;
  };

  struct Piece {
    std::vector<gf2::BitRow> basis;       // vectors in the Thom module
    std::vector<std::string> labels;
    std::vector<gf2::BitRow> complement;  // image of s^* (cokernel side only)
  };
  std::map<int, Piece> coker;  // keyed by degree in T(qτ)
  std::map<int, Piece> ker;    // keyed by degree in T((q+1)τ)
  auto unitIndex = [](const gf2::BitRow& v) {
    if (v.popcount() != 1) throw StructuralError("cofiberF2: non-monomial class in the exact sequence");
    return v.lowestSetBit();
  };
  for (int k = 0; k <= degMax; ++k) {
    const gf2::BitMatrix S = restriction(k);
    if (upper.dim(k)) {
      Piece p;
      const gf2::Subspace kernel = gf2::kernelBasis(S);
      for (const auto& v : kernel.basis()) {
        const int j = exponent(k, q + 1);
        (void)unitIndex(v);
        p.basis.push_back(v);
        p.labels.push_back(odd ? cofiberLabel('d', q + 1, j) : cofiberLabel('b', q + 1, j - 1));
      }
      ker[k] = std::move(p);
    }
    if (lower.dim(k)) {
      std::vector<gf2::BitRow> images;
      for (std::size_t c = 0; c < S.cols(); ++c) images.push_back(S.apply(gf2::BitRow::unit(S.cols(), c)));
      const gf2::Subspace im = gf2::Subspace::span(lower.dim(k), images);
      const gf2::Quotient qt = gf2::quotientDim(gf2::Subspace::full(lower.dim(k)), im);
      Piece p;
      for (const auto& v : qt.representatives) {
        (void)unitIndex(v);
        p.basis.push_back(v);
        p.labels.push_back(cofiberLabel(odd ? 'c' : 'a', q, exponent(k, q)));
      }
      p.complement = im.basis();
      coker[k] = std::move(p);
    }
  }

  ModuleSpec spec;
  for (const auto& [k, p] : coker) {
    for (const auto& l : p.labels) spec.addBasis(k + 1 + shift, l);
  }
  for (const auto& [k, p] : ker) {
    for (const auto& l : p.labels) spec.addBasis(k + shift, l);
  }
  // Sq on the cokernel part: act in T(qτ), then read off modulo the image.
  for (const auto& [k, p] : coker) {
    for (std::size_t b = 0; b < p.basis.size(); ++b) {
      for (int i = 1; i <= kMax && lower.stored(i, k); ++i) {
        auto it = coker.find(k + i);
        if (it == coker.end()) continue;
        std::vector<gf2::BitRow> gens = it->second.basis;
        gens.insert(gens.end(), it->second.complement.begin(), it->second.complement.end());
        gf2::CombinationSolver solver(lower.dim(k + i), gens);
        auto combo = solver.solve(lower.applySq(i, k, p.basis[b]));
        if (!combo) throw StructuralError("cofiberF2: Sq leaves the Thom module");
        for (std::size_t c = 0; c < it->second.basis.size(); ++c) {
          if (combo->get(c)) spec.addSq(i, p.labels[b], it->second.labels[c]);
        }
      }
    }
  }
  // Sq on the kernel part: s^* is A-linear, so the kernel is a submodule.
  for (const auto& [k, p] : ker) {
    for (std::size_t b = 0; b < p.basis.size(); ++b) {
      for (int i = 1; i <= kMax && upper.stored(i, k); ++i) {
        const gf2::BitRow image = upper.applySq(i, k, p.basis[b]);
        if (image.isZero()) continue;
        auto it = ker.find(k + i);
        gf2::CombinationSolver solver(upper.dim(k + i), it == ker.end() ? std::vector<gf2::BitRow>{} : it->second.basis);
        auto combo = solver.solve(image);
        if (!combo) throw StructuralError("cofiberF2: kernel of s^* is not Sq-stable");
        for (std::size_t c = 0; c < it->second.basis.size(); ++c) {
          if (combo->get(c)) spec.addSq(i, p.labels[b], it->second.labels[c]);
        }
      }
    }
  }
  if (cofiberSq1Rule(s)) spec.addSq(1, cofiberLabel('d', q + 1, 0), cofiberLabel('c', q, s.n));
  return spec;
}

inline FiniteAModule cofiberF2(const SpaceDescriptor& s, int q, int degMax, int kMax) {
  return cofiberF2Spec(s, q, degMax, kMax).build(degMax, kMax);
}

/// H~_*(C_q; Z), unsuspended, from the integral exact sequence. In homology
/// s_* sends the top class [M] u_q to χ(M) times the bottom class u_{q+1}, so
/// H_k(C_q) = coker(s_*)_k ⊕ ker(s_*)_{k-1}.
inline GradedAbelianGroups cofiberZ(const SpaceDescriptor& s, int q) {
  if (s.chi == 0) throw UsageError("cofiberZ: χ(M) = 0, use sphereCq");
  if (q < 0) throw UsageError("cofiberZ: q must be >= 0");
  // H_k(T(lτ)) has one generator e_j u_l per k = ld + rj, 0 <= j <= n.
  auto rank = [&](int level, int k) {
    const int rel = k - level * s.d;
    return rel >= 0 && rel % s.r == 0 && rel / s.r <= s.n ? 1 : 0;
  };
  auto matrix = [&](int k) {
    std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(rank(q + 1, k)),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(rank(q, k)), 0));
    if (!a.empty() && !a[0].empty() && k == (q + 1) * s.d) a[0][0] = s.chi;
    return a;
  };
  GradedAbelianGroups out;
  const int top = (q + 2) * s.d + 1;
  for (int k = 0; k <= top; ++k) {
    const auto a = matrix(k);
    const auto inv = smithInvariants(a);
    AbelianGroup g;
    g.freeRank = rank(q + 1, k) - static_cast<int>(inv.size());
    for (auto d : inv) g.addTorsion(d);
    const auto below = matrix(k - 1);
    g.freeRank += rank(q, k - 1) - static_cast<int>(smithInvariants(below).size());
    out.add(k, g);
  }
  return out;
}

// Stable cells ------------------------------------------------------------------

/// A sphere S^dim or a mod-2 Moore space M(Z/2, dim) (cells in dim, dim+1).
struct StableCell {
  enum class Kind { Sphere, Moore2 };
  Kind kind = Kind::Sphere;
  int dim = 0;
  std::string bottom;
  std::string top;  // Moore spaces only

  static StableCell sphere(int dim, std::string label = {}) { return {Kind::Sphere, dim, std::move(label), {}}; }
  static StableCell moore(int dim, std::string bottom = {}, std::string top = {}) {
    return {Kind::Moore2, dim, std::move(bottom), std::move(top)};
  }

  std::string toString() const {
    return kind == Kind::Sphere ? "S^" + std::to_string(dim) : "M(Z/2," + std::to_string(dim) + ")";
  }

  friend bool operator==(const StableCell& a, const StableCell& b) { return a.kind == b.kind && a.dim == b.dim; }
};

inline GradedAbelianGroups cellHomology(const std::vector<StableCell>& cells) {
  GradedAbelianGroups out;
  for (const auto& c : cells) {
    if (c.kind == StableCell::Kind::Sphere) {
      out.addFree(c.dim);
    } else {
      out.addTorsion(c.dim, 2);
    }
  }
  return out;
}

inline ModuleSpec cellCohomology(const std::vector<StableCell>& cells) {
  ModuleSpec spec;
  for (const auto& c : cells) {
    spec.addBasis(c.dim, c.bottom);
    if (c.kind == StableCell::Kind::Moore2) {
      spec.addBasis(c.dim + 1, c.top);
      spec.addSq(1, c.bottom, c.top);
    }
  }
  return spec;
}

/// Σ^{(m-2)(q+1)} C_q(S^m) as a wedge of stable cells, labelled like the
/// cofiber classes: d_{q+1}^0, d_{q+1}^1, c_q^0, c_q^1.
inline std::vector<StableCell> sphereCq(int m, int q) {
  if (m < 2) throw UsageError("sphereCq: m must be >= 2");
  if (q < 0) throw UsageError("sphereCq: q must be >= 0");
  const int base = 2 * (q + 1) * (m - 1);
  const std::string d0 = cofiberLabel('d', q + 1, 0);
  const std::string d1 = cofiberLabel('d', q + 1, 1);
  const std::string c0 = cofiberLabel('c', q, 0);
  const std::string c1 = cofiberLabel('c', q, 1);
  if (m % 2 == 1) {
    return {StableCell::sphere(base, d0), StableCell::sphere(base + m, d1), StableCell::sphere((2 * q + 1) * (m - 1), c0),
            StableCell::sphere(base + 1, c1)};
  }
  return {StableCell::moore(base, d0, c1), StableCell::sphere(base + m, d1), StableCell::sphere((2 * q + 1) * (m - 1), c0)};
}

/// D_k(S^{m-1}) stably: M(Z/2, (m-1)k) when m and k are even, else
/// S^{(m-1)k} ∨ S^{(m-1)k+1}.
inline std::vector<StableCell> dkSummand(int m, int k) {
  if (k < 1) throw UsageError("dkSummand: k must be >= 1");
  if (m < 2) throw UsageError("dkSummand: m must be >= 2");
  const int dim = (m - 1) * k;
  const std::string tag = "D_" + std::to_string(k);
  if (m % 2 == 0 && k % 2 == 0) return {StableCell::moore(dim, tag + "^0", tag + "^1")};
  return {StableCell::sphere(dim, tag + "^0"), StableCell::sphere(dim + 1, tag + "^1")};
}

/// H~_*(⋁_k D_k(S^{m-1})) plus the unit class in degree 0, up to degMax.
inline GradedAbelianGroups dkWedgeZ(int m, int degMax) {
  GradedAbelianGroups out;
  out.addFree(0);
  for (int k = 1; (m - 1) * k <= degMax; ++k) out += cellHomology(dkSummand(m, k));
  return out.truncated(degMax);
}

// CT(M) = M_+ ∨ ⋁_q Σ^{(r-2)(q+1)} C_q(M) --------------------------------------

inline int lowestCofiberDegree(const SpaceDescriptor& s, int q) { return q * (s.r * (s.n + 1) - 2); }

inline FiniteAModule ctAssembleF2(const SpaceDescriptor& s, int degMax, int kMax) {
  ModuleSpec spec = baseSpec(s);
  for (int q = 0; lowestCofiberDegree(s, q) <= degMax; ++q) {
    if (s.kind == SpaceKind::Sphere) {
      spec += cellCohomology(sphereCq(s.param, q));
    } else {
      spec += cofiberF2Spec(s, q, degMax, kMax);
    }
  }
  return spec.build(degMax, kMax);
}

inline GradedAbelianGroups ctAssembleZ(const SpaceDescriptor& s, int degMax) {
  GradedAbelianGroups out;
  for (int j = 0; j <= s.n; ++j) out.addFree(s.r * j);
  for (int q = 0; lowestCofiberDegree(s, q) <= degMax; ++q) {
    if (s.kind == SpaceKind::Sphere) {
      out += cellHomology(sphereCq(s.param, q));
    } else {
      out += cofiberZ(s, q).shifted((s.r - 2) * (q + 1));
    }
  }
  return out.truncated(degMax);
}

// Reference integral homology of ΛM -------------------------------------------------

/// H_k(ΛM; Z) from the closed descriptions: CP^n and HP^n by their degree
/// sets, CaP² and spheres by the Morse-Bott sum H_*(M) ⊕ ⊕_c H_{*-λ_c}(T_1 M).
inline AbelianGroup zillerLoopZ(const SpaceDescriptor& s, int k) {
  AbelianGroup g;
  if (k < 0) return g;
  const int n = s.n;
  switch (s.kind) {
    case SpaceKind::CP: {
      g.freeRank = 1;
      if (k > 0 && k % (2 * n) == 0) g.addTorsion(n + 1);
      return g;
    }
    case SpaceKind::HP: {
      const int period = 2 * (2 * n + 1);
      if (k % 4 == 0 && k / 4 <= n) ++g.freeRank;
      for (int c = 1; c * period <= k + 4 * n; ++c) {
        for (int l = 1; l <= n; ++l) {
          if (c * period + 4 * l == k) ++g.freeRank;
        }
        for (int l = 0; l <= n - 1; ++l) {
          if (c * period + 4 * l - 4 * n + 1 == k) ++g.freeRank;
        }
        if (c * period == k) g.addTorsion(n + 1);
      }
      return g;
    }
    case SpaceKind::CaP2: {
      if (k == 0 || k == 8 || k == 16) ++g.freeRank;
      for (int c = 1; 22 * c - 15 <= k; ++c) {
        const int rel = k - (22 * c - 15);
        if (rel == 0 || rel == 8 || rel == 23 || rel == 31) ++g.freeRank;
        if (rel == 15) g.addTorsion(3);
      }
      return g;
    }
    case SpaceKind::Sphere: {
      const int m = s.param;
      if (k == 0 || k == m) ++g.freeRank;
      for (int c = 1; (2 * c - 1) * (m - 1) <= k; ++c) {
        const int rel = k - (2 * c - 1) * (m - 1);
        if (m % 2 == 1) {
          if (rel == 0 || rel == m - 1 || rel == m || rel == 2 * m - 1) ++g.freeRank;
        } else {
          if (rel == 0 || rel == 2 * m - 1) ++g.freeRank;
          if (rel == m - 1) g.addTorsion(2);
        }
      }
      return g;
    }
  }
  throw UsageError("zillerLoopZ: unknown space");
}

inline GradedAbelianGroups zillerTable(const SpaceDescriptor& s, int degMax) {
  GradedAbelianGroups out;
  for (int k = 0; k <= degMax; ++k) out.add(k, zillerLoopZ(s, k));
  return out;
}

}  // namespace looplab::thom
