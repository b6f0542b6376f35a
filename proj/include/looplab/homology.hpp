#pragma once

// Bidegree-wise homology of the normalized complex N_q Ω(R_•) with
// differential d_0, plus the Koszul-type complex used as an independent oracle.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "looplab/algebra.hpp"
#include "looplab/errors.hpp"
#include "looplab/gf2.hpp"
#include "looplab/simplicial.hpp"

namespace looplab::homology {

using algebra::AlgebraElement;
using algebra::GradingSpec;
using algebra::Monomial;
using simplicial::ResolutionContext;

/// Worker count: LOOPLAB_THREADS if set and positive, else hardware concurrency.
inline unsigned threadBudget() {
  if (const char* env = std::getenv("LOOPLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

/// Runs `job(i)` for i in [0, count) on at most threadBudget() threads.
/// Results are written by index, so the outcome never depends on scheduling.
template <typename Job>
void parallelFor(std::size_t count, Job&& job) {
  const unsigned workers = std::min<unsigned>(threadBudget(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    }));
  }
  for (auto& f : futures) f.get();
}

struct BidegreeSlice {
  int q = 0;
  int t = 0;
  std::vector<Monomial> basis;
  /// d_0..d_q into the (q-1, t) slice; empty at q = 0.
  std::vector<gf2::BitMatrix> faceMatrices;
};

/// Everything derived from one (q, t) slice.
struct SliceData {
  BidegreeSlice slice;
  gf2::Subspace normalized;  // N_q = ∩_{i>=1} ker d_i
  gf2::Subspace cycles;      // N_q ∩ ker d_0
};

struct HomologyCell {
  int q = 0;
  int t = 0;
  std::size_t dim = 0;
  std::vector<AlgebraElement> representatives;
};

class HomologyEngine {
 public:
  explicit HomologyEngine(ResolutionContext ctx, std::size_t maxSliceSize = 40000)
      : ctx_(std::move(ctx)), maxSliceSize_(maxSliceSize) {}

  const ResolutionContext& context() const { return ctx_; }
  const GradingSpec& grading() const { return ctx_.grading; }

  /// Slice data for (q, t), built once and then shared. Thread safe.
  std::shared_ptr<const SliceData> slice(int q, int t) const {
    if (q < 0 || q > algebra::kMaxLevel) throw UsageError("slice: level out of range");
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = slices_.find({q, t}); it != slices_.end()) return it->second;
    }
    auto built = std::make_shared<const SliceData>(build(q, t));
    std::lock_guard<std::mutex> lock(mutex_);
    return slices_.try_emplace({q, t}, std::move(built)).first->second;
  }

  const std::vector<Monomial>& basis(int q, int t) const { return slice(q, t)->slice.basis; }

  gf2::Subspace normalizedBasis(int q, int t) const { return slice(q, t)->normalized; }

  gf2::Subspace cycles(int q, int t) const { return slice(q, t)->cycles; }

  /// B_q = d_0(N_{q+1}) inside the (q, t) slice.
  gf2::Subspace boundaries(int q, int t) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = boundaries_.find({q, t}); it != boundaries_.end()) return *it->second;
    }
    auto above = slice(q + 1, t);
    const auto& d0 = above->slice.faceMatrices.at(0);
    std::vector<gf2::BitRow> images;
    images.reserve(above->normalized.dim());
    for (const auto& v : above->normalized.basis()) images.push_back(d0.apply(v));
    auto b = std::make_shared<const gf2::Subspace>(gf2::Subspace::span(d0.rows(), images));
    std::lock_guard<std::mutex> lock(mutex_);
    return *boundaries_.try_emplace({q, t}, std::move(b)).first->second;
  }

  HomologyCell homologyAt(int q, int t) const {
    const auto z = cycles(q, t);
    const auto b = boundaries(q, t);
    const gf2::Quotient h = gf2::quotientDim(z, b);
    HomologyCell cell{q, t, h.dim, {}};
    const auto& B = basis(q, t);
    for (const auto& v : h.representatives) cell.representatives.push_back(algebra::fromRow(v, B, q));
    return cell;
  }

  /// Degree of a homogeneous element; zero elements report `fallback`.
  int degreeOf(const AlgebraElement& z, int fallback = 0) const {
    const auto info = algebra::internalDegree(z, grading());
    if (info.zero) return fallback;
    if (info.mixed) throw UsageError("element is not homogeneous: " + algebra::toString(z));
    return info.degree;
  }

  bool isNormalized(const AlgebraElement& z) const {
    if (z.isZero() || z.level() == 0) return true;
    for (int i = 1; i <= z.level(); ++i) {
      if (!simplicial::face(ctx_, i, z).isZero()) return false;
    }
    return true;
  }

  bool isCycle(const AlgebraElement& z) const {
    requireNormalized(z);
    if (z.isZero() || z.level() == 0) return true;
    return simplicial::face(ctx_, 0, z).isZero();
  }

  bool isBoundary(const AlgebraElement& z) const {
    requireNormalized(z);
    if (z.isZero()) return true;
    const int t = degreeOf(z);
    const auto& B = basis(z.level(), t);
    return boundaries(z.level(), t).contains(algebra::toRow(z, B));
  }

  /// Coordinates of [z] in the representative basis of homologyAt(q, t).
  gf2::BitRow classOf(const AlgebraElement& z, int t) const {
    if (!z.isZero() && degreeOf(z) != t) throw UsageError("classOf: degree mismatch");
    if (!isCycle(z)) throw UsageError("classOf: not a cycle: " + algebra::toString(z));
    const int q = z.level();
    const HomologyCell cell = homologyAt(q, t);
    const auto& B = basis(q, t);
    const gf2::Subspace bnd = boundaries(q, t);
    std::vector<gf2::BitRow> gens;
    for (const auto& r : cell.representatives) gens.push_back(algebra::toRow(r, B));
    for (const auto& v : bnd.basis()) gens.push_back(v);
    gf2::CombinationSolver solver(B.size(), gens);
    auto combo = solver.solve(algebra::toRow(z, B));
    if (!combo) throw StructuralError("classOf: cycle outside span of representatives and boundaries");
    gf2::BitRow coords(cell.dim);
    for (std::size_t i = 0; i < cell.dim; ++i) coords.set(i, combo->get(i));
    return coords;
  }

  gf2::BitRow classOf(const AlgebraElement& z) const { return classOf(z, degreeOf(z)); }

  /// True when a and b are homologous cycles (a + b is a boundary).
  bool homologous(const AlgebraElement& a, const AlgebraElement& b) const {
    const AlgebraElement sum = a + b;
    return isCycle(sum) && isBoundary(sum);
  }

 private:
  void requireNormalized(const AlgebraElement& z) const {
    if (!isNormalized(z)) throw UsageError("element is not normalized: " + algebra::toString(z));
  }

  SliceData build(int q, int t) const {
    BidegreeSlice s;
    s.q = q;
    s.t = t;
    s.basis = algebra::monomialBasis(q, ctx_.grading, t);
    if (s.basis.size() > maxSliceSize_) {
      throw ResourceLimit("slice (" + std::to_string(q) + "," + std::to_string(t) + ") has " +
                          std::to_string(s.basis.size()) + " monomials, above the cutoff");
    }
    const std::size_t n = s.basis.size();
    if (q == 0) {
      gf2::Subspace full = gf2::Subspace::full(n);
      return SliceData{std::move(s), full, full};
    }
    const auto target = algebra::monomialBasis(q - 1, ctx_.grading, t);
    for (int i = 0; i <= q; ++i) {
      s.faceMatrices.push_back(simplicial::monomialMapMatrix(
          s.basis, target, [&](const Monomial& m) { return simplicial::faceMonomial(ctx_, i, m); }));
    }
    gf2::BitMatrix positive(0, n);
    for (int i = 1; i <= q; ++i) positive = positive.stackedWith(s.faceMatrices[i]);
    gf2::Subspace normalized = gf2::kernelBasis(positive);
    gf2::Subspace cycles = gf2::kernelBasis(positive.stackedWith(s.faceMatrices[0]));
    return SliceData{std::move(s), std::move(normalized), std::move(cycles)};
  }

  ResolutionContext ctx_;
  std::size_t maxSliceSize_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const SliceData>> slices_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const gf2::Subspace>> boundaries_;
};

// ---------------------------------------------------------------------------

class HomologyTable {
 public:
  std::map<std::pair<int, int>, HomologyCell> cells;

  /// Evaluates every (q, t) with q <= maxLevel and t <= maxDegree.
  static HomologyTable build(const HomologyEngine& engine, int maxLevel, int maxDegree) {
    std::vector<std::pair<int, int>> keys;
    for (int q = 0; q <= maxLevel; ++q) {
      for (int t = 0; t <= maxDegree; ++t) keys.emplace_back(q, t);
    }
    std::vector<HomologyCell> results(keys.size());
    parallelFor(keys.size(), [&](std::size_t i) { results[i] = engine.homologyAt(keys[i].first, keys[i].second); });
    HomologyTable table;
    for (std::size_t i = 0; i < keys.size(); ++i) table.cells.emplace(keys[i], std::move(results[i]));
    return table;
  }

  std::size_t dim(int q, int t) const {
    auto it = cells.find({q, t});
    return it == cells.end() ? 0 : it->second.dim;
  }

  std::string toTsv(bool includeZero = false) const {
    std::string out = "q\tt\tdim\trepresentatives\n";
    for (const auto& [key, cell] : cells) {
      if (cell.dim == 0 && !includeZero) continue;
      out += std::to_string(cell.q) + "\t" + std::to_string(cell.t) + "\t" + std::to_string(cell.dim) + "\t";
      for (std::size_t i = 0; i < cell.representatives.size(); ++i) {
        if (i) out += "; ";
        out += algebra::toString(cell.representatives[i]);
      }
      out += "\n";
    }
    return out;
  }

  nlohmann::json toJson(bool includeZero = false) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, cell] : cells) {
      if (cell.dim == 0 && !includeZero) continue;
      nlohmann::json reps = nlohmann::json::array();
      for (const auto& r : cell.representatives) reps.push_back(algebra::toString(r));
      arr.push_back({{"q", cell.q}, {"t", cell.t}, {"dim", cell.dim}, {"representatives", reps}});
    }
    return arr;
  }
};

// ---------------------------------------------------------------------------
// Koszul oracle: Λ(v) ⊗ Γ[w] ⊗ F2[x] ⊗ Λ(dx) with ∂v = x^{n+1} and
// ∂γ_i(w) = (n+1) γ_{i-1}(w) x^n dx. Built without the resolution.

namespace detail {

struct KoszulGen {
  int eps;  // power of v
  int i;    // divided power index
  int a;    // power of x
  int dx;   // power of dx
  friend bool operator<(const KoszulGen& l, const KoszulGen& r) {
    return std::tie(l.eps, l.i, l.a, l.dx) < std::tie(r.eps, r.i, r.a, r.dx);
  }
  friend bool operator==(const KoszulGen&, const KoszulGen&) = default;
};

inline std::vector<KoszulGen> koszulBasis(const GradingSpec& g, int q, int t) {
  std::vector<KoszulGen> out;
  if (q < 0) return out;
  const int vDeg = (g.n + 1) * g.m;
  const int wDeg = (g.n + 1) * g.m - 1;
  for (int eps = 0; eps <= 1 && eps <= q; ++eps) {
    const int i = q - eps;
    for (int dx = 0; dx <= 1; ++dx) {
      const int rest = t - eps * vDeg - i * wDeg - dx * (g.m - 1);
      if (rest < 0 || rest % g.m != 0) continue;
      out.push_back({eps, i, rest / g.m, dx});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline gf2::BitMatrix koszulDifferential(const GradingSpec& g, int q, int t) {
  const auto src = koszulBasis(g, q, t);
  const auto dst = koszulBasis(g, q - 1, t);
  gf2::BitMatrix mat(dst.size(), src.size());
  auto put = [&](std::size_t col, KoszulGen target) {
    auto it = std::find(dst.begin(), dst.end(), target);
    if (it == dst.end()) throw StructuralError("koszul: image outside target basis");
    mat.flip(static_cast<std::size_t>(it - dst.begin()), col);
  };
  for (std::size_t c = 0; c < src.size(); ++c) {
    const KoszulGen& b = src[c];
    if (b.eps == 1) put(c, {0, b.i, b.a + g.n + 1, b.dx});
    if ((g.n + 1) % 2 == 1 && b.i >= 1 && b.dx == 0) put(c, {b.eps, b.i - 1, b.a + g.n, 1});
  }
  return mat;
}

}  // namespace detail

/// dim H_q of the Koszul-type complex in internal degree t.
inline std::size_t koszulDim(const GradingSpec& g, int q, int t) {
  const std::size_t dim = detail::koszulBasis(g, q, t).size();
  const std::size_t rankOut = q >= 1 ? gf2::rank(detail::koszulDifferential(g, q, t)) : 0;
  const std::size_t rankIn = gf2::rank(detail::koszulDifferential(g, q + 1, t));
  return dim - rankOut - rankIn;
}

}  // namespace looplab::homology
