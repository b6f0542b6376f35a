#pragma once

// Monomial calculus in Ω(R_q) = F2[x, y_1..y_q] ⊗ Λ(dx, dy_1..dy_q).
//
// All coefficients are in F2, so graded commutativity carries no signs and an
// element is just a set of monomials.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "looplab/errors.hpp"
#include "looplab/gf2.hpp"

namespace looplab::algebra {

/// Largest simplicial level a monomial can live at.
inline constexpr int kMaxLevel = 12;

/// Truncation exponent n (the algebra is F2[x]/(x^{n+1})) and m = |x|.
struct GradingSpec {
  int n = 1;
  int m = 2;

  GradingSpec() = default;
  GradingSpec(int n_, int m_) : n(n_), m(m_) {
    if (n < 1 || m < 1) throw UsageError("GradingSpec: need n >= 1 and m >= 1");
  }

  int degX() const { return m; }
  int degDx() const { return m - 1; }
  int degY() const { return (n + 1) * m; }
  int degDy() const { return (n + 1) * m - 1; }

  friend bool operator==(const GradingSpec&, const GradingSpec&) = default;
};

struct Monomial {
  std::uint8_t level = 0;
  std::uint16_t xExp = 0;
  bool dx = false;
  /// Entries at index >= level are always zero; index j-1 holds the power of y_j.
  std::array<std::uint16_t, kMaxLevel> yExp{};
  /// Bit j-1 set iff dy_j divides the monomial.
  std::uint16_t dyMask = 0;

  static Monomial unit(int level) {
    if (level < 0 || level > kMaxLevel) throw UsageError("Monomial: level out of range");
    Monomial mono;
    mono.level = static_cast<std::uint8_t>(level);
    return mono;
  }

  bool hasDy(int j) const { return (dyMask >> (j - 1)) & 1U; }
  int dyCount() const { return std::popcount(dyMask); }
  int ySum() const {
    int s = 0;
    for (int j = 0; j < level; ++j) s += yExp[j];
    return s;
  }
  bool isPolynomial() const { return !dx && dyMask == 0; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Canonical order: level, then lexicographic on (xExp, dx, yExp, dyFlags).
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    if (auto c = a.xExp <=> b.xExp; c != 0) return c;
    if (auto c = a.dx <=> b.dx; c != 0) return c;
    for (int j = 0; j < a.level; ++j) {
      if (auto c = a.yExp[j] <=> b.yExp[j]; c != 0) return c;
    }
    const std::uint16_t diff = a.dyMask ^ b.dyMask;
    if (diff == 0) return std::strong_ordering::equal;
    const int first = std::countr_zero(diff);
    return ((a.dyMask >> first) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
};

/// Product of two monomials at the same level; nullopt when an exterior
/// generator repeats.
inline std::optional<Monomial> multiplyMonomials(const Monomial& a, const Monomial& b) {
  if (a.level != b.level) throw UsageError("multiply: level mismatch");
  if (a.dx && b.dx) return std::nullopt;
  if ((a.dyMask & b.dyMask) != 0) return std::nullopt;
  Monomial c = a;
  c.xExp = static_cast<std::uint16_t>(a.xExp + b.xExp);
  c.dx = a.dx || b.dx;
  for (int j = 0; j < a.level; ++j) c.yExp[j] = static_cast<std::uint16_t>(a.yExp[j] + b.yExp[j]);
  c.dyMask = a.dyMask | b.dyMask;
  return c;
}

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(int level) : level_(level) {
    if (level < 0 || level > kMaxLevel) throw UsageError("AlgebraElement: level out of range");
  }
  AlgebraElement(int level, std::vector<Monomial> terms) : AlgebraElement(level) {
    for (const auto& t : terms) {
      if (t.level != level) throw UsageError("AlgebraElement: term at wrong level");
    }
    terms_ = std::move(terms);
    canonicalize();
  }

  static AlgebraElement zero(int level) { return AlgebraElement(level); }
  static AlgebraElement one(int level) { return AlgebraElement(level, {Monomial::unit(level)}); }
  static AlgebraElement of(const Monomial& mono) { return AlgebraElement(mono.level, {mono}); }

  int level() const { return level_; }
  bool isZero() const { return terms_.empty(); }
  const std::vector<Monomial>& terms() const { return terms_; }

  AlgebraElement& operator+=(const AlgebraElement& other) {
    requireSameLevel(other);
    std::vector<Monomial> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
      if (j == other.terms_.size() || (i < terms_.size() && terms_[i] < other.terms_[j])) {
        merged.push_back(terms_[i++]);
      } else if (i == terms_.size() || other.terms_[j] < terms_[i]) {
        merged.push_back(other.terms_[j++]);
      } else {
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.requireSameLevel(b);
    std::vector<Monomial> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        if (auto p = multiplyMonomials(s, t)) out.push_back(*p);
      }
    }
    return AlgebraElement(a.level_, std::move(out));
  }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  /// Applies a monomial-to-(monomial or zero) map termwise and re-canonicalizes.
  template <typename F>
  AlgebraElement mapTerms(int targetLevel, F&& f) const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (std::optional<Monomial> image = f(t)) out.push_back(*image);
    }
    return AlgebraElement(targetLevel, std::move(out));
  }

 private:
  void requireSameLevel(const AlgebraElement& other) const {
    if (other.level_ != level_) throw UsageError("AlgebraElement: level mismatch");
  }

  // Sort and cancel equal pairs (coefficients are in F2).
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end());
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!out.empty() && out.back() == t) {
        out.pop_back();
      } else {
        out.push_back(t);
      }
    }
    terms_ = std::move(out);
  }

  int level_ = 0;
  std::vector<Monomial> terms_;
};

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

// Generators as elements.
inline AlgebraElement xGen(int level, int power = 1) {
  Monomial mono = Monomial::unit(level);
  mono.xExp = static_cast<std::uint16_t>(power);
  return AlgebraElement::of(mono);
}
inline AlgebraElement dxGen(int level) {
  Monomial mono = Monomial::unit(level);
  mono.dx = true;
  return AlgebraElement::of(mono);
}
inline AlgebraElement yGen(int level, int j, int power = 1) {
  if (j < 1 || j > level) throw UsageError("yGen: index out of range");
  Monomial mono = Monomial::unit(level);
  mono.yExp[j - 1] = static_cast<std::uint16_t>(power);
  return AlgebraElement::of(mono);
}
inline AlgebraElement dyGen(int level, int j) {
  if (j < 1 || j > level) throw UsageError("dyGen: index out of range");
  Monomial mono = Monomial::unit(level);
  mono.dyMask = static_cast<std::uint16_t>(1U << (j - 1));
  return AlgebraElement::of(mono);
}

/// The de Rham derivation x -> dx, y_j -> dy_j on a single monomial, as a sum.
inline std::vector<Monomial> deRhamTerms(const Monomial& mono) {
  std::vector<Monomial> out;
  if ((mono.xExp & 1U) && !mono.dx) {
    Monomial t = mono;
    --t.xExp;
    t.dx = true;
    out.push_back(t);
  }
  for (int j = 1; j <= mono.level; ++j) {
    if ((mono.yExp[j - 1] & 1U) && !mono.hasDy(j)) {
      Monomial t = mono;
      --t.yExp[j - 1];
      t.dyMask = static_cast<std::uint16_t>(t.dyMask | (1U << (j - 1)));
      out.push_back(t);
    }
  }
  return out;
}

inline AlgebraElement deRhamD(const AlgebraElement& a) {
  std::vector<Monomial> out;
  for (const auto& t : a.terms()) {
    auto d = deRhamTerms(t);
    out.insert(out.end(), d.begin(), d.end());
  }
  return AlgebraElement(a.level(), std::move(out));
}

inline int monomialDegree(const Monomial& mono, const GradingSpec& g) {
  return g.degX() * mono.xExp + (mono.dx ? g.degDx() : 0) + g.degY() * mono.ySum() +
         g.degDy() * mono.dyCount();
}

struct DegreeInfo {
  int degree = 0;
  bool mixed = false;
  bool zero = true;
};

/// Degree of the first term plus a flag telling whether all terms agree.
inline DegreeInfo internalDegree(const AlgebraElement& a, const GradingSpec& g) {
  DegreeInfo info;
  if (a.isZero()) return info;
  info.zero = false;
  info.degree = monomialDegree(a.terms().front(), g);
  for (const auto& t : a.terms()) {
    if (monomialDegree(t, g) != info.degree) info.mixed = true;
  }
  return info;
}

/// Wedge grading w and polynomial grading p of a monomial.
struct Bigrading {
  int w = 0;
  int p = 0;
  friend bool operator==(const Bigrading&, const Bigrading&) = default;
};

inline Bigrading monomialBigrading(const Monomial& mono, int n) {
  Bigrading b;
  b.w = (mono.dx ? 1 : 0) + mono.dyCount();
  b.p = 2 * mono.xExp + (mono.dx ? 1 : 0) + (2 * n + 2) * mono.ySum() + (2 * n + 1) * mono.dyCount();
  return b;
}

inline std::vector<Bigrading> bigrading(const AlgebraElement& a, int n) {
  std::vector<Bigrading> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) out.push_back(monomialBigrading(t, n));
  return out;
}

/// All monomials at `level` with internal degree exactly t, canonically ordered.
inline std::vector<Monomial> monomialBasis(int level, const GradingSpec& g, int t,
                                           bool polynomialOnly = false) {
  if (level < 0 || level > kMaxLevel) throw UsageError("monomialBasis: level out of range");
  std::vector<Monomial> out;
  if (t < 0) return out;
  const int maxMask = 1 << level;
  for (int dx = 0; dx <= (polynomialOnly ? 0 : 1); ++dx) {
    for (int mask = 0; mask < (polynomialOnly ? 1 : maxMask); ++mask) {
      const int exterior = dx * g.degDx() + std::popcount(static_cast<unsigned>(mask)) * g.degDy();
      const int rest = t - exterior;
      if (rest < 0 || rest % g.m != 0) continue;
      const int units = rest / g.m;  // xExp + (n+1) * Σ yExp
      Monomial base = Monomial::unit(level);
      base.dx = dx == 1;
      base.dyMask = static_cast<std::uint16_t>(mask);
      // Distribute s = Σ yExp over the y_j, x takes what remains.
      std::function<void(int, int, Monomial&)> place = [&](int j, int remaining, Monomial& mono) {
        if (j == level) {
          mono.xExp = static_cast<std::uint16_t>(remaining);
          out.push_back(mono);
          return;
        }
        for (int e = 0; (g.n + 1) * e <= remaining; ++e) {
          mono.yExp[j] = static_cast<std::uint16_t>(e);
          place(j + 1, remaining - (g.n + 1) * e, mono);
        }
        mono.yExp[j] = 0;
      };
      place(0, units, base);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Position of `mono` in a canonically sorted basis, or -1.
inline long indexIn(const std::vector<Monomial>& basis, const Monomial& mono) {
  auto it = std::lower_bound(basis.begin(), basis.end(), mono);
  if (it == basis.end() || !(*it == mono)) return -1;
  return static_cast<long>(it - basis.begin());
}

/// Coordinates of `a` with respect to a sorted monomial basis.
inline gf2::BitRow toRow(const AlgebraElement& a, const std::vector<Monomial>& basis) {
  gf2::BitRow row(basis.size());
  for (const auto& t : a.terms()) {
    const long i = indexIn(basis, t);
    if (i < 0) throw UsageError("toRow: term outside the basis");
    row.flip(static_cast<std::size_t>(i));
  }
  return row;
}

inline AlgebraElement fromRow(const gf2::BitRow& row, const std::vector<Monomial>& basis, int level) {
  std::vector<Monomial> terms;
  for (auto i : row.setBits()) terms.push_back(basis[i]);
  return AlgebraElement(level, std::move(terms));
}

/// Splits an element into its homogeneous components, keyed by internal degree.
inline std::vector<std::pair<int, AlgebraElement>> homogeneousParts(const AlgebraElement& a,
                                                                    const GradingSpec& g) {
  std::vector<std::pair<int, std::vector<Monomial>>> buckets;
  for (const auto& t : a.terms()) {
    const int deg = monomialDegree(t, g);
    auto it = std::find_if(buckets.begin(), buckets.end(), [deg](const auto& b) { return b.first == deg; });
    if (it == buckets.end()) {
      buckets.push_back({deg, {t}});
    } else {
      it->second.push_back(t);
    }
  }
  std::sort(buckets.begin(), buckets.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<int, AlgebraElement>> out;
  for (auto& [deg, terms] : buckets) out.emplace_back(deg, AlgebraElement(a.level(), std::move(terms)));
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: terms joined by " + ", factors by "*", e.g. "x^2*dx*dy1*dy3".

inline std::string toString(const Monomial& mono) {
  std::string s;
  auto append = [&s](const std::string& f) {
    if (!s.empty()) s += '*';
    s += f;
  };
  if (mono.xExp == 1) append("x");
  if (mono.xExp > 1) append("x^" + std::to_string(mono.xExp));
  if (mono.dx) append("dx");
  for (int j = 1; j <= mono.level; ++j) {
    const int e = mono.yExp[j - 1];
    if (e == 1) append("y" + std::to_string(j));
    if (e > 1) append("y" + std::to_string(j) + "^" + std::to_string(e));
  }
  for (int j = 1; j <= mono.level; ++j) {
    if (mono.hasDy(j)) append("dy" + std::to_string(j));
  }
  return s.empty() ? "1" : s;
}

inline std::string toString(const AlgebraElement& a) {
  if (a.isZero()) return "0";
  std::string s;
  for (const auto& t : a.terms()) {
    if (!s.empty()) s += " + ";
    s += toString(t);
  }
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline int parseInt(std::string_view s, std::string_view context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw UsageError("parseElement: bad integer in '" + std::string(context) + "'");
  }
  return std::stoi(std::string(s));
}

inline AlgebraElement parseFactor(std::string_view f, int level) {
  f = trim(f);
  int power = 1;
  if (auto caret = f.find('^'); caret != std::string_view::npos) {
    power = parseInt(f.substr(caret + 1), f);
    f = f.substr(0, caret);
  }
  AlgebraElement base(level);
  if (f == "1") {
    base = AlgebraElement::one(level);
  } else if (f == "x") {
    base = xGen(level);
  } else if (f == "dx") {
    base = dxGen(level);
  } else if (f.starts_with("dy")) {
    base = dyGen(level, parseInt(f.substr(2), f));
  } else if (f.starts_with("y")) {
    base = yGen(level, parseInt(f.substr(1), f));
  } else {
    throw UsageError("parseElement: unknown factor '" + std::string(f) + "'");
  }
  AlgebraElement result = AlgebraElement::one(level);
  for (int i = 0; i < power; ++i) result = result * base;
  return result;
}

}  // namespace detail

/// Inverse of toString for elements at the given level.
inline AlgebraElement parseElement(std::string_view text, int level) {
  AlgebraElement sum(level);
  text = detail::trim(text);
  if (text.empty()) throw UsageError("parseElement: empty input");
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    if (plus == std::string_view::npos) plus = text.size();
    std::string_view term = detail::trim(text.substr(start, plus - start));
    if (term.empty()) throw UsageError("parseElement: empty term");
    if (term != "0") {
      AlgebraElement product = AlgebraElement::one(level);
      std::size_t fs = 0;
      while (fs <= term.size()) {
        std::size_t star = term.find('*', fs);
        if (star == std::string_view::npos) star = term.size();
        product = product * detail::parseFactor(term.substr(fs, star - fs), level);
        fs = star + 1;
      }
      sum += product;
    }
    start = plus + 1;
  }
  return sum;
}

}  // namespace looplab::algebra
