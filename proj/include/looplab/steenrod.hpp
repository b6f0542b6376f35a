#pragma once

// Finite graded F2-modules with explicit Sq^k matrices, plus checkers for
// instability, Cartan and Adem.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "looplab/binomial.hpp"
#include "looplab/errors.hpp"
#include "looplab/gf2.hpp"
#include "looplab/report.hpp"

namespace looplab::steenrod {

using gf2::BitMatrix;
using gf2::BitRow;

struct BasisRef {
  int degree = 0;
  std::size_t index = 0;
  friend bool operator==(const BasisRef&, const BasisRef&) = default;
};

class FiniteAModule {
 public:
  FiniteAModule(int degMax, int kMax) : degMax_(degMax), kMax_(kMax), labels_(static_cast<std::size_t>(degMax) + 1) {
    if (degMax < 0 || kMax < 0) throw UsageError("FiniteAModule: negative bounds");
  }

  int degMax() const { return degMax_; }
  int kMax() const { return kMax_; }

  /// Adds a basis element; elements above degMax are silently dropped and
  /// nullopt is returned. Labels must be unique.
  std::optional<BasisRef> addBasis(int degree, const std::string& label) {
    if (allocated_) throw UsageError("FiniteAModule: basis is frozen once operations are set");
    if (degree < 0) throw UsageError("FiniteAModule: negative degree");
    if (degree > degMax_) return std::nullopt;
    if (index_.count(label)) throw UsageError("FiniteAModule: duplicate label " + label);
    auto& bucket = labels_[static_cast<std::size_t>(degree)];
    BasisRef ref{degree, bucket.size()};
    bucket.push_back(label);
    index_.emplace(label, ref);
    return ref;
  }

  std::size_t dim(int t) const {
    if (t < 0 || t > degMax_) return 0;
    return labels_[static_cast<std::size_t>(t)].size();
  }
  std::size_t totalDim() const {
    std::size_t s = 0;
    for (const auto& b : labels_) s += b.size();
    return s;
  }
  const std::string& label(const BasisRef& r) const { return labels_.at(static_cast<std::size_t>(r.degree)).at(r.index); }
  std::optional<BasisRef> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<BasisRef> basis() const {
    std::vector<BasisRef> out;
    for (int t = 0; t <= degMax_; ++t) {
      for (std::size_t i = 0; i < dim(t); ++i) out.push_back({t, i});
    }
    return out;
  }

  /// Whether Sq^k out of degree t is stored (and hence checkable).
  bool stored(int k, int t) const { return k >= 0 && k <= kMax_ && t >= 0 && t + k <= degMax_; }

  /// Sets the coefficient of `target` in Sq^k(`source`).
  void setSq(int k, const BasisRef& source, const BasisRef& target, bool value = true) {
    if (k < 1) throw UsageError("setSq: k must be >= 1 (Sq^0 is the identity)");
    if (target.degree != source.degree + k) throw UsageError("setSq: Sq^k must raise degree by k");
    if (!stored(k, source.degree)) return;
    matrix(k, source.degree).set(target.index, source.index, value);
  }

  /// Sq^k as a matrix dim(t+k) x dim(t); k = 0 gives the identity.
  BitMatrix sq(int k, int t) const {
    if (!stored(k, t)) throw UsageError("sq: Sq^" + std::to_string(k) + " out of degree " + std::to_string(t) + " is not stored");
    if (k == 0) return BitMatrix::identity(dim(t));
    auto it = sq_.find({k, t});
    if (it == sq_.end()) return BitMatrix(dim(t + k), dim(t));
    return it->second;
  }

  BitRow applySq(int k, int t, const BitRow& v) const { return sq(k, t).apply(v); }

  BitRow unit(const BasisRef& r) const { return BitRow::unit(dim(r.degree), r.index); }

  // Products -----------------------------------------------------------------

  bool hasProduct() const { return hasProduct_; }
  void enableProduct() { hasProduct_ = true; }

  void setProduct(const BasisRef& a, const BasisRef& b, const BitRow& value) {
    if (a.degree + b.degree > degMax_) return;
    if (value.size() != dim(a.degree + b.degree)) throw UsageError("setProduct: wrong target dimension");
    hasProduct_ = true;
    allocated_ = true;
    products_[key(a, b)] = value;
  }

  /// Product of basis elements (graded commutative, coefficients in F2).
  BitRow multiplyBasis(const BasisRef& a, const BasisRef& b) const {
    const int t = a.degree + b.degree;
    if (t > degMax_) throw UsageError("multiply: product degree beyond degMax");
    auto it = products_.find(key(a, b));
    if (it == products_.end()) return BitRow(dim(t));
    return it->second;
  }

  BitRow multiply(int s, const BitRow& a, int t, const BitRow& b) const {
    BitRow out(dim(s + t));
    for (auto i : a.setBits()) {
      for (auto j : b.setBits()) out ^= multiplyBasis({s, i}, {t, j});
    }
    return out;
  }

  nlohmann::json toJson() const {
    nlohmann::json j;
    j["degMax"] = degMax_;
    j["kMax"] = kMax_;
    nlohmann::json degrees = nlohmann::json::array();
    for (int t = 0; t <= degMax_; ++t) {
      if (dim(t) == 0) continue;
      degrees.push_back({{"degree", t}, {"labels", labels_[static_cast<std::size_t>(t)]}});
    }
    j["basis"] = degrees;
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& [kt, mat] : sq_) {
      for (std::size_t c = 0; c < mat.cols(); ++c) {
        std::vector<std::string> image;
        for (std::size_t r = 0; r < mat.rows(); ++r) {
          if (mat.get(r, c)) image.push_back(label({kt.second + kt.first, r}));
        }
        if (!image.empty()) ops.push_back({{"k", kt.first}, {"source", label({kt.second, c})}, {"image", image}});
      }
    }
    j["sq"] = ops;
    return j;
  }

 private:
  BitMatrix& matrix(int k, int t) {
    allocated_ = true;
    auto it = sq_.find({k, t});
    if (it == sq_.end()) it = sq_.emplace(std::make_pair(k, t), BitMatrix(dim(t + k), dim(t))).first;
    return it->second;
  }

  std::pair<std::pair<int, std::size_t>, std::pair<int, std::size_t>> key(const BasisRef& a, const BasisRef& b) const {
    auto x = std::make_pair(a.degree, a.index);
    auto y = std::make_pair(b.degree, b.index);
    if (y < x) std::swap(x, y);
    return {x, y};
  }

  int degMax_;
  int kMax_;
  bool allocated_ = false;
  bool hasProduct_ = false;
  std::vector<std::vector<std::string>> labels_;
  std::unordered_map<std::string, BasisRef> index_;
  std::map<std::pair<int, int>, BitMatrix> sq_;
  std::map<std::pair<std::pair<int, std::size_t>, std::pair<int, std::size_t>>, BitRow> products_;
};

namespace detail {

inline std::string rowLabels(const FiniteAModule& m, int t, const BitRow& v) {
  if (v.isZero()) return "0";
  std::string s;
  for (auto i : v.setBits()) {
    if (!s.empty()) s += " + ";
    s += m.label({t, i});
  }
  return s;
}

}  // namespace detail

/// Sq^k z = 0 for k > |z|; with a product also Sq^{|z|} z = z^2.
inline CheckReport checkInstability(const FiniteAModule& m) {
  CheckReport r{"instability"};
  for (const auto& e : m.basis()) {
    const int t = e.degree;
    for (int k = t + 1; k <= m.kMax(); ++k) {
      if (!m.stored(k, t)) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      const BitRow image = m.applySq(k, t, m.unit(e));
      if (!image.isZero()) {
        r.fail("Sq^" + std::to_string(k) + "(" + m.label(e) + ") = " + detail::rowLabels(m, t + k, image));
      }
    }
    if (m.hasProduct()) {
      if (!m.stored(t, t)) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      const BitRow top = m.applySq(t, t, m.unit(e));
      const BitRow square = m.multiplyBasis(e, e);
      if (!(top == square)) {
        r.fail("Sq^" + std::to_string(t) + "(" + m.label(e) + ") = " + detail::rowLabels(m, 2 * t, top) +
               " but square is " + detail::rowLabels(m, 2 * t, square));
      }
    }
  }
  return r;
}

/// Sq^k(ab) = Σ_i Sq^i(a) Sq^{k-i}(b) on all basis pairs within range.
inline CheckReport checkCartan(const FiniteAModule& m) {
  CheckReport r{"cartan"};
  if (!m.hasProduct()) throw UsageError("checkCartan: module has no product");
  const auto basis = m.basis();
  for (std::size_t ia = 0; ia < basis.size(); ++ia) {
    for (std::size_t ib = ia; ib < basis.size(); ++ib) {
      const BasisRef a = basis[ia];
      const BasisRef b = basis[ib];
      const int s = a.degree;
      const int t = b.degree;
      for (int k = 1; k <= m.kMax(); ++k) {
        if (s + t + k > m.degMax()) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        const BitRow lhs = m.applySq(k, s + t, m.multiplyBasis(a, b));
        BitRow rhs(m.dim(s + t + k));
        for (int i = 0; i <= k; ++i) {
          rhs ^= m.multiply(s + i, m.applySq(i, s, m.unit(a)), t + k - i, m.applySq(k - i, t, m.unit(b)));
        }
        if (!(lhs == rhs)) {
          r.fail("Sq^" + std::to_string(k) + "(" + m.label(a) + " * " + m.label(b) + "): " +
                 detail::rowLabels(m, s + t + k, lhs) + " vs " + detail::rowLabels(m, s + t + k, rhs));
        }
      }
    }
  }
  return r;
}

/// Coefficient of Sq^{a+b-j}Sq^j in the Adem expansion of Sq^a Sq^b (a < 2b).
inline int ademCoefficient(int a, int b, int j) { return lucas(b - 1 - j, a - 2 * j); }

inline CheckReport checkAdem(const FiniteAModule& m) {
  CheckReport r{"adem"};
  for (int b = 1; b <= m.kMax(); ++b) {
    for (int a = 1; a < 2 * b && a + b <= m.kMax(); ++a) {
      for (const auto& e : m.basis()) {
        const int t = e.degree;
        if (t + a + b > m.degMax()) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        const BitRow v = m.unit(e);
        const BitRow lhs = m.applySq(a, t + b, m.applySq(b, t, v));
        BitRow rhs(m.dim(t + a + b));
        for (int j = 0; 2 * j <= a; ++j) {
          if (ademCoefficient(a, b, j)) rhs ^= m.applySq(a + b - j, t + j, m.applySq(j, t, v));
        }
        if (!(lhs == rhs)) {
          r.fail("Sq^" + std::to_string(a) + "Sq^" + std::to_string(b) + "(" + m.label(e) + "): " +
                 detail::rowLabels(m, t + a + b, lhs) + " vs " + detail::rowLabels(m, t + a + b, rhs));
        }
      }
    }
  }
  return r;
}

using Dictionary = std::vector<std::pair<std::string, std::string>>;

/// Checks that `dict` is a degree-preserving bijection M -> N commuting with
/// every stored Sq^k, k <= kMax.
inline CheckReport moduleIso(const FiniteAModule& M, const FiniteAModule& N, const Dictionary& dict, int kMax) {
  CheckReport r{"moduleIso"};
  const int degMax = std::min(M.degMax(), N.degMax());
  std::map<std::pair<int, std::size_t>, BasisRef> forward;
  std::set<std::pair<int, std::size_t>> hit;
  for (const auto& [ml, nl] : dict) {
    auto a = M.find(ml);
    auto b = N.find(nl);
    if (!a) throw UsageError("moduleIso: unknown source label " + ml);
    if (!b) throw UsageError("moduleIso: unknown target label " + nl);
    if (a->degree != b->degree) throw UsageError("moduleIso: " + ml + " and " + nl + " differ in degree");
    if (a->degree > degMax) continue;
    if (!forward.emplace(std::make_pair(a->degree, a->index), *b).second) {
      throw UsageError("moduleIso: source label used twice: " + ml);
    }
    if (!hit.emplace(b->degree, b->index).second) throw UsageError("moduleIso: target label used twice: " + nl);
  }
  for (int t = 0; t <= degMax; ++t) {
    ++r.checked;
    if (M.dim(t) != N.dim(t)) {
      r.fail("dimension differs in degree " + std::to_string(t) + ": " + std::to_string(M.dim(t)) + " vs " +
             std::to_string(N.dim(t)));
    }
    for (std::size_t i = 0; i < M.dim(t); ++i) {
      if (!forward.count({t, i})) throw UsageError("moduleIso: dictionary misses " + M.label({t, i}));
    }
  }
  if (!r.pass) return r;
  auto push = [&](int t, const BitRow& v) {
    BitRow out(N.dim(t));
    for (auto i : v.setBits()) out.flip(forward.at({t, i}).index);
    return out;
  };
  for (const auto& e : M.basis()) {
    for (int k = 1; k <= kMax; ++k) {
      if (e.degree + k > degMax || !M.stored(k, e.degree) || !N.stored(k, e.degree)) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      const BitRow viaM = push(e.degree + k, M.applySq(k, e.degree, M.unit(e)));
      const BasisRef image = forward.at({e.degree, e.index});
      const BitRow viaN = N.applySq(k, e.degree, N.unit(image));
      if (!(viaM == viaN)) {
        r.fail("Sq^" + std::to_string(k) + " on " + M.label(e) + " -> " + N.label(image) + ": " +
               detail::rowLabels(N, e.degree + k, viaM) + " vs " + detail::rowLabels(N, e.degree + k, viaN));
      }
    }
  }
  return r;
}

}  // namespace looplab::steenrod
