#pragma once

// The shipped spaces: CP^k, HP^k, the Cayley plane and spheres, each with
// H*(M; F2) = F2[x]/(x^{n+1}), |x| = r, dimension d and Euler characteristic χ.

#include <cctype>
#include <string>

#include "looplab/errors.hpp"

namespace looplab {

enum class SpaceKind { CP, HP, CaP2, Sphere };

/// Constant c_q in Sq^1 γ_q = c_q x^n dx γ_{q-1}; only meaningful for odd n.
enum class Sq1Constant { Zero, One, Undetermined };

struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::CP;
  int param = 1;  // k for CP^k / HP^k, m for S^m, unused for the Cayley plane
  int n = 1;      // truncation: H* = F2[x]/(x^{n+1})
  int r = 2;      // |x|
  int d = 2;      // real dimension
  int chi = 2;    // Euler characteristic

  static SpaceDescriptor cp(int k) {
    if (k < 1) throw UsageError("CP^k needs k >= 1");
    return {SpaceKind::CP, k, k, 2, 2 * k, k + 1};
  }
  static SpaceDescriptor hp(int k) {
    if (k < 1) throw UsageError("HP^k needs k >= 1");
    return {SpaceKind::HP, k, k, 4, 4 * k, k + 1};
  }
  static SpaceDescriptor cayley() { return {SpaceKind::CaP2, 2, 2, 8, 16, 3}; }
  static SpaceDescriptor sphere(int m) {
    if (m < 2) throw UsageError("S^m needs m >= 2");
    return {SpaceKind::Sphere, m, 1, m, m, m % 2 == 0 ? 2 : 0};
  }

  /// Parses cp<k>, hp<k>, s<m> or cayley.
  static SpaceDescriptor parse(const std::string& text) {
    std::string s;
    for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "cayley" || s == "cap2") return cayley();
    auto number = [&](std::size_t prefix) {
      const std::string digits = s.substr(prefix);
      if (digits.empty() || digits.size() > 6) throw UsageError("bad space name: " + text);
      for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw UsageError("bad space name: " + text);
      }
      return std::stoi(digits);
    };
    if (s.rfind("cp", 0) == 0) return cp(number(2));
    if (s.rfind("hp", 0) == 0) return hp(number(2));
    if (s.rfind("s", 0) == 0) return sphere(number(1));
    throw UsageError("unknown space: " + text + " (expected cp<k>, hp<k>, s<m> or cayley)");
  }

  std::string name() const {
    switch (kind) {
      case SpaceKind::CP: return "cp" + std::to_string(param);
      case SpaceKind::HP: return "hp" + std::to_string(param);
      case SpaceKind::CaP2: return "cayley";
      case SpaceKind::Sphere: return "s" + std::to_string(param);
    }
    return "?";
  }

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

/// c_q as determined by Ziller's integral homology: projective spaces have
/// c_q = 1 iff n = 1 mod 4, spheres iff m is even. Even n has no Sq^1 term.
inline Sq1Constant sq1Constant(const SpaceDescriptor& s) {
  if (s.n % 2 == 0) return Sq1Constant::Zero;
  switch (s.kind) {
    case SpaceKind::CP:
    case SpaceKind::HP: return s.n % 4 == 1 ? Sq1Constant::One : Sq1Constant::Zero;
    case SpaceKind::Sphere: return s.param % 2 == 0 ? Sq1Constant::One : Sq1Constant::Zero;
    case SpaceKind::CaP2: return Sq1Constant::Zero;
  }
  return Sq1Constant::Undetermined;
}

/// The spaces exercised by the acceptance run.
inline std::vector<SpaceDescriptor> shippedSpaces() {
  return {SpaceDescriptor::cp(1), SpaceDescriptor::cp(2), SpaceDescriptor::cp(3), SpaceDescriptor::cp(4),
          SpaceDescriptor::hp(1), SpaceDescriptor::hp(2), SpaceDescriptor::hp(3), SpaceDescriptor::cayley(),
          SpaceDescriptor::sphere(2), SpaceDescriptor::sphere(3), SpaceDescriptor::sphere(4),
          SpaceDescriptor::sphere(5), SpaceDescriptor::sphere(6)};
}

}  // namespace looplab
