#pragma once

// Dense linear algebra over the two-element field.
//
// Vectors are bit-packed into 64-bit words. Subspaces are kept in fully
// reduced row echelon form where the pivot of a row is its lowest set bit and
// rows are sorted by increasing pivot; this makes every basis canonical.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "looplab/errors.hpp"

namespace looplab::gf2 {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitRow& operator^=(const BitRow& other) {
    if (other.size_ != size_) throw UsageError("BitRow: length mismatch in xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }

  bool isZero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t lowestSetBit() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return npos;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Parity of the bitwise AND, i.e. the dot product over F2.
  bool dot(const BitRow& other) const {
    if (other.size_ != size_) throw UsageError("BitRow: length mismatch in dot");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  std::vector<std::size_t> setBits() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        out.push_back((w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitRow&, const BitRow&) = default;

  std::string toString() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  static BitRow fromString(const std::string& bits) {
    BitRow r(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        r.set(i);
      } else if (bits[i] != '0') {
        throw UsageError("BitRow: expected only '0' and '1'");
      }
    }
    return r;
  }

  static BitRow unit(std::size_t size, std::size_t i) {
    BitRow r(size);
    r.set(i);
    return r;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitRow(cols)) {}

  static BitMatrix fromRows(std::size_t cols, std::vector<BitRow> rows) {
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (const auto& r : rows) {
      if (r.size() != cols) throw UsageError("BitMatrix: row has wrong length");
    }
    m.data_ = std::move(rows);
    return m;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].set(i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }
  const BitRow& row(std::size_t r) const { return data_[r]; }
  const std::vector<BitRow>& rowData() const { return data_; }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c : data_[r].setBits()) t.data_[c].set(r);
    }
    return t;
  }

  /// Matrix-vector product Mv, with v of length cols().
  BitRow apply(const BitRow& v) const {
    if (v.size() != cols_) throw UsageError("BitMatrix::apply: vector length != cols");
    BitRow out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (data_[r].dot(v)) out.set(r);
    }
    return out;
  }

  /// Vertical concatenation; both matrices must have the same column count.
  BitMatrix stackedWith(const BitMatrix& below) const {
    if (below.cols_ != cols_) throw UsageError("BitMatrix: column mismatch when stacking");
    BitMatrix m = *this;
    m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
    m.rows_ += below.rows_;
    return m;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitRow> data_;
};

namespace detail {

// Fully reduced echelon accumulator: rows sorted by pivot (lowest set bit),
// each pivot column cleared in every other row.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<BitRow>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  void reduce(BitRow& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) v ^= rows_[k];
    }
  }

  /// Returns true when v enlarged the span.
  bool insert(BitRow v) {
    if (v.size() != dim_) throw UsageError("gf2: vector length does not match ambient dimension");
    reduce(v);
    const std::size_t p = v.lowestSetBit();
    if (p == npos) return false;
    for (auto& r : rows_) {
      if (r.get(p)) r ^= v;
    }
    const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto pos = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<BitRow> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambientDim) { return Subspace(ambientDim, {}, {}); }

  static Subspace full(std::size_t ambientDim) {
    std::vector<BitRow> rows;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < ambientDim; ++i) {
      rows.push_back(BitRow::unit(ambientDim, i));
      pivots.push_back(i);
    }
    return Subspace(ambientDim, std::move(rows), std::move(pivots));
  }

  static Subspace span(std::size_t ambientDim, const std::vector<BitRow>& vectors) {
    detail::Echelon e(ambientDim);
    for (const auto& v : vectors) e.insert(v);
    return Subspace(ambientDim, e.rows(), e.pivots());
  }

  std::size_t ambientDim() const { return ambientDim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BitRow>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const BitRow& v) const {
    if (v.size() != ambientDim_) throw UsageError("Subspace::contains: length mismatch");
    BitRow w = v;
    reduce(w);
    return w.isZero();
  }

  /// Clears every pivot column of v using the basis (projection onto the
  /// canonical complement).
  void reduce(BitRow& v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (v.get(pivots_[k])) v ^= basis_[k];
    }
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Subspace(std::size_t dim, std::vector<BitRow> rows, std::vector<std::size_t> pivots)
      : ambientDim_(dim), basis_(std::move(rows)), pivots_(std::move(pivots)) {}

  std::size_t ambientDim_ = 0;
  std::vector<BitRow> basis_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const BitMatrix& m) {
  detail::Echelon e(m.cols());
  for (const auto& r : m.rowData()) e.insert(r);
  return e.rank();
}

/// Basis of {v : Mv = 0}.
inline Subspace kernelBasis(const BitMatrix& m) {
  detail::Echelon e(m.cols());
  for (const auto& r : m.rowData()) e.insert(r);
  const auto& pivots = e.pivots();
  std::vector<bool> isPivot(m.cols(), false);
  for (auto p : pivots) isPivot[p] = true;
  std::vector<BitRow> kernel;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    BitRow v(m.cols());
    v.set(f);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (e.rows()[k].get(f)) v.set(pivots[k]);
    }
    kernel.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), kernel);
}

/// Zassenhaus: echelonize [a|a] and [b|0]; rows with vanishing left half span A ∩ B.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambientDim() != b.ambientDim()) throw UsageError("intersect: ambient dimensions differ");
  const std::size_t d = a.ambientDim();
  detail::Echelon e(2 * d);
  auto widen = [d](const BitRow& v, bool copyRight) {
    BitRow w(2 * d);
    for (auto i : v.setBits()) {
      w.set(i);
      if (copyRight) w.set(d + i);
    }
    return w;
  };
  for (const auto& v : a.basis()) e.insert(widen(v, true));
  for (const auto& v : b.basis()) e.insert(widen(v, false));
  std::vector<BitRow> meet;
  for (std::size_t k = 0; k < e.rank(); ++k) {
    if (e.pivots()[k] < d) continue;
    BitRow v(d);
    for (auto i : e.rows()[k].setBits()) v.set(i - d);
    meet.push_back(std::move(v));
  }
  return Subspace::span(d, meet);
}

struct Quotient {
  std::size_t dim = 0;
  /// Vectors of Z whose classes form a basis of Z/B; canonical (the echelon
  /// basis of Z projected onto the complement of B's pivot columns).
  std::vector<BitRow> representatives;
};

inline Quotient quotientDim(const Subspace& z, const Subspace& b) {
  if (z.ambientDim() != b.ambientDim()) throw UsageError("quotientDim: ambient dimensions differ");
  for (const auto& v : b.basis()) {
    if (!z.contains(v)) {
      throw StructuralError("quotientDim: B is not contained in Z (differential does not square to zero?)");
    }
  }
  std::vector<BitRow> projected;
  projected.reserve(z.dim());
  for (auto v : z.basis()) {
    b.reduce(v);
    projected.push_back(std::move(v));
  }
  Subspace w = Subspace::span(z.ambientDim(), projected);
  if (w.dim() + b.dim() != z.dim()) throw StructuralError("quotientDim: dimension bookkeeping failed");
  return Quotient{w.dim(), w.basis()};
}

struct SpanMembership {
  bool member = false;
  /// Indices into S.basis() whose sum is v (only meaningful when member).
  std::vector<std::size_t> coordinates;
};

inline SpanMembership solveInSpan(const Subspace& s, const BitRow& v) {
  if (v.size() != s.ambientDim()) throw UsageError("solveInSpan: length mismatch");
  SpanMembership out;
  BitRow w = v;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    if (v.get(s.pivots()[k])) {
      out.coordinates.push_back(k);
      w ^= s.basis()[k];
    }
  }
  out.member = w.isZero();
  if (!out.member) out.coordinates.clear();
  return out;
}

/// Expresses vectors as combinations of an arbitrary ordered generator list.
class CombinationSolver {
 public:
  CombinationSolver(std::size_t ambientDim, const std::vector<BitRow>& generators)
      : dim_(ambientDim), count_(generators.size()) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      BitRow v = generators[g];
      if (v.size() != dim_) throw UsageError("CombinationSolver: generator length mismatch");
      BitRow combo(count_);
      combo.set(g);
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (v.get(pivots_[k])) {
          v ^= rows_[k];
          combo ^= combos_[k];
        }
      }
      const std::size_t p = v.lowestSetBit();
      if (p == npos) {
        dependent_ = true;
        continue;
      }
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (rows_[k].get(p)) {
          rows_[k] ^= v;
          combos_[k] ^= combo;
        }
      }
      rows_.push_back(std::move(v));
      combos_.push_back(std::move(combo));
      pivots_.push_back(p);
    }
  }

  /// True when the generators were linearly dependent.
  bool dependent() const { return dependent_; }

  /// Coefficients (one bit per generator) with Σ c_g·g = v, if v is in the span.
  std::optional<BitRow> solve(const BitRow& v) const {
    if (v.size() != dim_) throw UsageError("CombinationSolver::solve: length mismatch");
    BitRow w = v;
    BitRow combo(count_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (w.get(pivots_[k])) {
        w ^= rows_[k];
        combo ^= combos_[k];
      }
    }
    if (!w.isZero()) return std::nullopt;
    return combo;
  }

 private:
  std::size_t dim_;
  std::size_t count_;
  bool dependent_ = false;
  std::vector<BitRow> rows_;
  std::vector<BitRow> combos_;
  std::vector<std::size_t> pivots_;
};

}  // namespace looplab::gf2
