#pragma once

// Batch verification runners behind the command-line tool. Each returns a
// RunReport: one schema for every command, tagged by the command name.

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "looplab/closedform.hpp"
#include "looplab/errors.hpp"
#include "looplab/ez.hpp"
#include "looplab/homology.hpp"
#include "looplab/report.hpp"
#include "looplab/simplicial.hpp"
#include "looplab/space.hpp"
#include "looplab/steenrod.hpp"
#include "looplab/thom.hpp"

namespace looplab::verify {

using nlohmann::ordered_json;

struct RunReport {
  std::string command;
  ordered_json parameters = ordered_json::object();
  std::vector<CheckReport> checks;
  bool truncated = false;
  double wallSeconds = 0;
  std::vector<std::string> tableHeader;
  std::vector<std::vector<std::string>> table;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  int exitCode() const { return pass() ? 0 : 1; }

  ordered_json toJson() const {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    ordered_json checkList = ordered_json::array();
    for (const auto& c : checks) {
      (c.pass ? passed : failed) += 1;
      skipped += c.skipped;
      checkList.push_back(ordered_json{{"check", c.check}, {"pass", c.pass}, {"checked", c.checked},
                                       {"skipped", c.skipped}, {"vacuous", c.vacuous},
                                       {"failureCount", c.failureCount}, {"failures", c.failures}});
    }
    ordered_json rows = ordered_json::array();
    for (const auto& row : table) {
      ordered_json r = ordered_json::object();
      for (std::size_t i = 0; i < tableHeader.size() && i < row.size(); ++i) r[tableHeader[i]] = row[i];
      rows.push_back(r);
    }
    return ordered_json{{"command", command},
                        {"parameters", parameters},
                        {"pass", pass()},
                        {"counts", {{"pass", passed}, {"fail", failed}, {"skipped", skipped}}},
                        {"truncated", truncated},
                        {"checks", checkList},
                        {"table", rows},
                        {"wallSeconds", wallSeconds}};
  }

  std::string toTsv() const {
    std::ostringstream os;
    os << "# command\t" << command << '\n';
    for (const auto& [k, v] : parameters.items()) os << "# " << k << '\t' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    os << "check\tverdict\tchecked\tskipped\tvacuous\tfailures\n";
    for (const auto& c : checks) {
      os << c.check << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.checked << '\t' << c.skipped << '\t' << c.vacuous
         << '\t' << c.failureCount << '\n';
      for (const auto& f : c.failures) os << "#   " << f << '\n';
    }
    os << "# result\t" << (pass() ? "pass" : "FAIL") << (truncated ? "\ttruncated" : "") << '\n';
    if (!tableHeader.empty()) {
      for (std::size_t i = 0; i < tableHeader.size(); ++i) os << (i ? "\t" : "") << tableHeader[i];
      os << '\n';
      for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
        os << '\n';
      }
    }
    return os.str();
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void record(CheckReport& r, bool ok, const std::string& what) {
  ++r.checked;
  if (!ok) r.fail(what);
}

}  // namespace detail

// Comparison dictionary ------------------------------------------------------------

/// CT-basis label ↔ loop-basis label, every class of total degree ≤ degMax.
///   n odd:  x^j ↔ x^j γ_0,  c_q^j ↔ x^j dx γ_q,  d_{q+1}^j ↔ x^j γ_{q+1}
///   n even: 1 ↔ 1,  x^j ↔ x^{j-1} b_0,  a_q^j ↔ x^j a_q,  b_{q+1}^j ↔ x^j b_{q+1}
/// The CT side is read off the assembled module; any degree disagreement is
/// a transcription bug and raises StructuralError.
inline steenrod::Dictionary buildDictionary(const SpaceDescriptor& s, int degMax) {
  using closedform::Main1Label;
  const algebra::GradingSpec g(s.n, s.r);
  const auto ct = thom::ctAssembleF2(s, degMax, 1);
  std::vector<std::pair<std::string, Main1Label>> pairs;
  const bool odd = s.n % 2 == 1;
  for (int j = 0; j <= s.n; ++j) {
    if (odd) {
      pairs.emplace_back(thom::powerLabel(j), Main1Label::gamma(0, j));
    } else {
      pairs.emplace_back(thom::powerLabel(j), j == 0 ? Main1Label::unit() : Main1Label::b(0, j - 1));
    }
  }
  for (int q = 0; thom::lowestCofiberDegree(s, q) <= degMax; ++q) {
    if (odd) {
      for (int j = 0; j <= s.n; ++j) {
        pairs.emplace_back(thom::cofiberLabel('c', q, j), Main1Label::gamma(q, j, 1));
        pairs.emplace_back(thom::cofiberLabel('d', q + 1, j), Main1Label::gamma(q + 1, j));
      }
    } else {
      for (int j = 0; j < s.n; ++j) {
        pairs.emplace_back(thom::cofiberLabel('a', q, j), Main1Label::a(q, j));
        pairs.emplace_back(thom::cofiberLabel('b', q + 1, j), Main1Label::b(q + 1, j));
      }
    }
  }
  steenrod::Dictionary dict;
  for (const auto& [ctLabel, loop] : pairs) {
    const int loopDeg = closedform::totalDegree(loop, g);
    const auto ref = ct.find(ctLabel);
    if (!ref && loopDeg > degMax) continue;
    const std::string loopLabel = closedform::toString(loop);
    if (!ref || ref->degree != loopDeg) {
      throw StructuralError("buildDictionary(" + s.name() + "): " + ctLabel + " in degree " +
                            (ref ? std::to_string(ref->degree) : std::string("(absent)")) + " vs " + loopLabel +
                            " in degree " + std::to_string(loopDeg));
    }
    dict.emplace_back(ctLabel, loopLabel);
  }
  if (dict.size() != ct.totalDim()) {
    throw StructuralError("buildDictionary(" + s.name() + "): dictionary covers " + std::to_string(dict.size()) +
                          " of " + std::to_string(ct.totalDim()) + " CT classes");
  }
  return dict;
}

// verify main1 ------------------------------------------------------------------------

struct Main1Options {
  int n = 1;
  int m = 2;
  int maxLevel = 3;
  int maxDegree = -1;  // default (n+1) m max(maxLevel, 1)
  std::optional<simplicial::FaceMutation> mutation;
  std::size_t maxSliceSize = 40000;
};

inline int defaultMain1Degree(int n, int m, int maxLevel) { return (n + 1) * m * std::max(maxLevel, 1); }

inline RunReport verifyMain1(const Main1Options& o) {
  if (o.n < 1 || o.m < 2 || o.maxLevel < 0) throw UsageError("verify main1: need n >= 1, m >= 2, max-level >= 0");
  detail::Stopwatch clock;
  const int maxDegree = o.maxDegree < 0 ? defaultMain1Degree(o.n, o.m, o.maxLevel) : o.maxDegree;
  const algebra::GradingSpec g(o.n, o.m);
  simplicial::ResolutionContext ctx(g, o.maxLevel + 1);
  ctx.mutation = o.mutation;
  homology::HomologyEngine engine(ctx, o.maxSliceSize);

  RunReport rep;
  rep.command = "verify main1";
  rep.parameters = {{"n", o.n}, {"m", o.m}, {"maxLevel", o.maxLevel}, {"maxDegree", maxDegree}};
  if (o.mutation) {
    rep.parameters["mutateFace"] = std::to_string(o.mutation->level) + ":" + std::to_string(o.mutation->face) + ":" +
                                   std::to_string(o.mutation->yIndex);
  }

  CheckReport identities{"simplicialIdentities"};
  for (int q = 0; q <= o.maxLevel; ++q) {
    const auto r = simplicial::checkSimplicialIdentities(ctx, q);
    ++identities.checked;
    for (const auto& f : r.failures) identities.fail(f);
  }

  CheckReport dims{"dims"};
  CheckReport koszul{"koszul"};
  rep.tableHeader = {"q", "t", "bruteForce", "closedForm", "koszul", "match"};
  for (int q = 0; q <= o.maxLevel; ++q) {
    for (int t = 0; t <= maxDegree; ++t) {
      const std::string where = "(q,t)=(" + std::to_string(q) + "," + std::to_string(t) + ")";
      std::size_t brute = 0;
      try {
        brute = engine.homologyAt(q, t).dim;
      } catch (const ResourceLimit&) {
        ++dims.skipped;
        ++koszul.skipped;
        rep.truncated = true;
        continue;
      } catch (const StructuralError& e) {
        dims.fail(where + ": " + e.what());
        continue;
      }
      const std::size_t closed = closedform::main1Dims(g, q, t);
      const std::size_t kz = homology::koszulDim(g, q, t);
      detail::record(dims, brute == closed, where + ": brute force " + std::to_string(brute) + ", closed form " +
                                                std::to_string(closed));
      detail::record(koszul, brute == kz, where + ": brute force " + std::to_string(brute) + ", Koszul " +
                                              std::to_string(kz));
      if (brute || closed || kz) {
        rep.table.push_back({std::to_string(q), std::to_string(t), std::to_string(brute), std::to_string(closed),
                             std::to_string(kz), brute == closed && brute == kz ? "yes" : "NO"});
      }
    }
  }

  // Each representative is a normalized cycle outside the boundaries; together they span H_{q,t}.
  CheckReport reps{"representatives"};
  for (int q = 0; q <= o.maxLevel; ++q) {
    std::map<int, std::vector<closedform::Main1Label>> byDegree;
    for (const auto& l : closedform::main1Basis(o.n, q)) {
      const int t = closedform::internalDegree(l, g);
      if (t <= maxDegree) byDegree[t].push_back(l);
    }
    for (const auto& [t, labels] : byDegree) {
      try {
        std::vector<gf2::BitRow> classes;
        for (const auto& l : labels) {
          const auto z = closedform::representative(l);
          const bool ok = engine.isNormalized(z) && engine.isCycle(z) && !engine.isBoundary(z);
          detail::record(reps, ok, closedform::toString(l) + " is not a normalized non-boundary cycle");
          if (ok) classes.push_back(engine.classOf(z, t));
        }
        const std::size_t h = engine.homologyAt(q, t).dim;
        const auto mat = gf2::BitMatrix::fromRows(h, classes);
        detail::record(reps, classes.size() == labels.size() && gf2::rank(mat) == h,
                       "representatives do not span H at (q,t)=(" + std::to_string(q) + "," + std::to_string(t) + ")");
      } catch (const ResourceLimit&) {
        ++reps.skipped;
        rep.truncated = true;
      } catch (const StructuralError& e) {
        reps.fail(e.what());
      }
    }
  }

  // The hat elements of the cycle lemma lie in the degenerate subcomplex.
  CheckReport degenerate{"degenerateHats"};
  for (int q = 1; q <= o.maxLevel; ++q) {
    for (int r = 1; r <= q; ++r) {
      detail::record(degenerate, simplicial::isDegenerate(ctx, simplicial::omegaHat(q, r)),
                     "omegaHat(" + std::to_string(q) + "," + std::to_string(r) + ") is not degenerate");
    }
    for (int j = 1; j <= q; ++j) {
      for (int k = j + 1; k <= q; ++k) {
        const auto hh = simplicial::omegaHatHat(q, j, k);
        detail::record(degenerate, simplicial::isDegenerate(ctx, hh), "omegaHatHat is not degenerate");
        for (int r = 1; r <= q; ++r) {
          detail::record(degenerate, simplicial::isDegenerate(ctx, algebra::yGen(q, r) * hh),
                         "y_r omegaHatHat is not degenerate");
        }
      }
    }
  }

  CheckReport relations{"productsAndDelta"};
  try {
    relations = ez::main1RelationChecks(engine, o.maxLevel);
    relations.check = "productsAndDelta";
  } catch (const ResourceLimit&) {
    ++relations.skipped;
    rep.truncated = true;
  } catch (const StructuralError& e) {
    relations.fail(e.what());
  }

  rep.checks = {identities, dims, koszul, reps, degenerate, relations};
  rep.wallSeconds = clock.seconds();
  return rep;
}

// verify steenrod ------------------------------------------------------------------

inline RunReport verifySteenrod(const SpaceDescriptor& s, int degMax, int kMax) {
  detail::Stopwatch clock;
  const auto m = closedform::loopCohomology(s, degMax, kMax);
  RunReport rep;
  rep.command = "verify steenrod";
  rep.parameters = {{"space", s.name()}, {"maxDegree", degMax}, {"maxSq", kMax}};
  rep.checks = {steenrod::checkInstability(m), steenrod::checkCartan(m), steenrod::checkAdem(m)};
  // nonzero Sq^k entries, per k
  rep.tableHeader = {"k", "nonzeroEntries"};
  for (int k = 1; k <= kMax; ++k) {
    std::size_t count = 0;
    for (int t = 0; t + k <= degMax; ++t) {
      const auto mat = m.sq(k, t);
      for (std::size_t r = 0; r < mat.rows(); ++r) count += mat.row(r).popcount();
    }
    if (count) rep.table.push_back({std::to_string(k), std::to_string(count)});
  }
  rep.wallSeconds = clock.seconds();
  return rep;
}

// compare ---------------------------------------------------------------------------

inline RunReport compareF2(const SpaceDescriptor& s, int degMax, int kMax) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.command = "compare";
  rep.parameters = {{"space", s.name()}, {"coeff", "f2"}, {"maxDegree", degMax}, {"maxSq", kMax}};
  const auto ct = thom::ctAssembleF2(s, degMax, kMax);
  const auto loop = closedform::loopCohomology(s, degMax, kMax);

  CheckReport dict{"dictionary"};
  steenrod::Dictionary d;
  try {
    d = buildDictionary(s, degMax);
    dict.checked = d.size();
  } catch (const StructuralError& e) {
    dict.fail(e.what());
  }
  CheckReport iso = dict.pass ? steenrod::moduleIso(ct, loop, d, kMax) : CheckReport{"moduleIso"};
  if (!dict.pass) iso.fail("no dictionary");

  CheckReport sq1{"sq1Rule"};
  detail::record(sq1, thom::cofiberSq1Rule(s) == (sq1Constant(s) == Sq1Constant::One),
                 "χ mod 4 rule disagrees with the loop-side Sq^1 constant");

  rep.tableHeader = {"degree", "ct", "loop"};
  for (int t = 0; t <= degMax; ++t) {
    if (ct.dim(t) || loop.dim(t)) rep.table.push_back({std::to_string(t), std::to_string(ct.dim(t)), std::to_string(loop.dim(t))});
  }
  rep.checks = {dict, iso, sq1};
  rep.wallSeconds = clock.seconds();
  return rep;
}

inline RunReport compareZ(const SpaceDescriptor& s, int degMax) {
  detail::Stopwatch clock;
  RunReport rep;
  rep.command = "compare";
  rep.parameters = {{"space", s.name()}, {"coeff", "z"}, {"maxDegree", degMax}};
  const auto ct = thom::ctAssembleZ(s, degMax);
  const auto ref = thom::zillerTable(s, degMax);
  CheckReport groups{"integralHomology"};
  rep.tableHeader = {"degree", "ct", "loop"};
  for (int k = 0; k <= degMax; ++k) {
    const auto a = ct.at(k);
    const auto b = ref.at(k);
    detail::record(groups, a == b, "degree " + std::to_string(k) + ": CT " + a.toString() + ", ΛM " + b.toString());
    rep.table.push_back({std::to_string(k), a.toString(), b.toString()});
  }
  rep.checks = {groups};
  if (s.kind == SpaceKind::Sphere) {
    CheckReport split{"sphereSplitting"};
    const auto dk = thom::dkWedgeZ(s.param, degMax);
    for (int k = 0; k <= degMax; ++k) {
      detail::record(split, dk.at(k) == ct.at(k),
                     "degree " + std::to_string(k) + ": ⋁D_k " + dk.at(k).toString() + ", CT " + ct.at(k).toString());
    }
    rep.checks.push_back(split);
  }
  rep.wallSeconds = clock.seconds();
  return rep;
}

// verify ez --------------------------------------------------------------------------

inline RunReport verifyEz(int n, int m, int maxLevel, int trials, std::uint64_t seed) {
  if (n < 1 || m < 2 || maxLevel < 1 || trials < 0) {
    throw UsageError("verify ez: need n >= 1, m >= 2, max-level >= 1, trials >= 0");
  }
  detail::Stopwatch clock;
  homology::HomologyEngine engine(simplicial::ResolutionContext(algebra::GradingSpec(n, m), maxLevel + 2));
  const auto suite = ez::runSuite(engine, maxLevel, trials, seed);
  RunReport rep;
  rep.command = "verify ez";
  rep.parameters = {{"n", n}, {"m", m}, {"maxLevel", maxLevel}, {"trials", trials}, {"seed", seed}};
  for (const auto* c : suite.all()) rep.checks.push_back(*c);
  rep.wallSeconds = clock.seconds();
  return rep;
}

}  // namespace looplab::verify
