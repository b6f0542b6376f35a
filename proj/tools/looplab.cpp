// looplab: batch verification of H*(ΛX; F2) for truncated-polynomial spaces.
//
//   looplab verify main1    --n N --m M [--max-level Q] [--max-degree T]
//   looplab verify steenrod --space S [--max-degree D] [--max-sq K]
//   looplab verify ez       --n N --m M [--max-level L] [--trials T] [--seed S]
//   looplab compare         --space S --coeff f2|z [--max-degree D] [--max-sq K]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "looplab/verify.hpp"

namespace {

using looplab::UsageError;

looplab::simplicial::FaceMutation parseMutation(const std::string& spec) {
  looplab::simplicial::FaceMutation f;
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(spec);
  if (!(is >> f.level >> c1 >> f.face >> c2 >> f.yIndex) || c1 != ':' || c2 != ':' || !is.eof()) {
    throw UsageError("--mutate-face expects q:i:j");
  }
  return f;
}

int emit(const looplab::verify::RunReport& rep, const std::string& format, const std::string& out) {
  const std::string text = format == "json" ? rep.toJson().dump(2) + "\n" : rep.toTsv();
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
  }
  return rep.exitCode();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"looplab: mod-2 cohomology of free loop spaces of truncated-polynomial spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // --format and --out may follow the subcommand
  std::string format = "tsv";
  std::string out;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
  app.add_option("--out", out, "Write the report to FILE instead of stdout");

  int n = 1;
  int m = 2;
  int maxLevel = 3;
  int maxDegree = -1;
  int maxSq = 16;
  std::string space;
  std::string coeff;
  int trials = 200;
  std::uint64_t seed = 7;
  std::string mutate;

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);

  auto* main1 = verify->add_subcommand("main1", "Brute-force homology against the closed form");
  main1->add_option("--n", n, "Truncation height n")->required();
  main1->add_option("--m", m, "Generator degree m")->required();
  main1->add_option("--max-level", maxLevel, "Highest simplicial level q")->capture_default_str();
  main1->add_option("--max-degree", maxDegree, "Highest internal degree t (default (n+1)m·max-level)");
  main1->add_option("--mutate-face", mutate, "Corrupt d_i(y_j) at level q (q:i:j)")->group("");

  auto* steen = verify->add_subcommand("steenrod", "Unstable algebra axioms on H*(ΛX)");
  steen->add_option("--space", space, "cp<k>, hp<k>, cayley or s<k>")->required();
  steen->add_option("--max-degree", maxDegree, "Highest degree (default 80)");
  steen->add_option("--max-sq", maxSq, "Highest Sq^k")->capture_default_str();

  auto* ezCmd = verify->add_subcommand("ez", "Seeded property tests of the shuffle product and lemmas");
  ezCmd->add_option("--n", n, "Truncation height n")->required();
  ezCmd->add_option("--m", m, "Generator degree m")->required();
  ezCmd->add_option("--max-level", maxLevel, "Highest simplicial level")->capture_default_str();
  ezCmd->add_option("--trials", trials, "Trials")->capture_default_str();
  ezCmd->add_option("--seed", seed, "Seed")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Compare CT(M) with ΛM");
  compare->add_option("--space", space, "cp<k>, hp<k>, cayley or s<k>")->required();
  compare->add_option("--coeff", coeff, "Coefficients")->required()->check(CLI::IsMember({"f2", "z"}));
  compare->add_option("--max-degree", maxDegree, "Highest degree (default 100)");
  compare->add_option("--max-sq", maxSq, "Highest Sq^k (f2 only)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    namespace v = looplab::verify;
    if (main1->parsed()) {
      v::Main1Options o;
      o.n = n;
      o.m = m;
      o.maxLevel = maxLevel;
      o.maxDegree = maxDegree;
      if (!mutate.empty()) o.mutation = parseMutation(mutate);
      return emit(v::verifyMain1(o), format, out);
    }
    if (steen->parsed()) {
      const auto s = looplab::SpaceDescriptor::parse(space);
      return emit(v::verifySteenrod(s, maxDegree < 0 ? 80 : maxDegree, maxSq), format, out);
    }
    if (ezCmd->parsed()) return emit(v::verifyEz(n, m, maxLevel, trials, seed), format, out);
    if (compare->parsed()) {
      const auto s = looplab::SpaceDescriptor::parse(space);
      const int d = maxDegree < 0 ? 100 : maxDegree;
      return emit(coeff == "z" ? v::compareZ(s, d) : v::compareF2(s, d, maxSq), format, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
