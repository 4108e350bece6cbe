#pragma once

// Marked ideal triangles Δ(k1, k2, k3).
//
// Corners and sides are 0-based internally: in standard position the corners
// are (∞, -1, 0) and side i runs from corner i to corner i + 1, so side 0 is
// [∞, -1], side 1 is [-1, 0] and side 2 is [0, ∞]. Side i carries label k_{i+1}.

#include "jigsaw/exact.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace jigsaw {

inline int next_side(int s) { return (s + 1) % 3; }
inline int prev_side(int s) { return (s + 2) % 3; }

/// A point x + h·i of the upper half-plane, kept as (x, h²).
struct MarkedPoint {
  Rational x;
  Rational h2;

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

class TileType {
 public:
  /// Builds Δ(k1, k2, k3); stores the lexicographically least rotation.
  TileType(const Rational& k1, const Rational& k2, const Rational& k3) {
    if (k1 <= 0 || k2 <= 0 || k3 <= 0)
      throw Error(ErrorKind::InvalidArgument, "tile parameters must be positive");
    if (k1 * k2 * k3 != 1)
      throw Error(ErrorKind::NotBalanced, "k1*k2*k3 = " + to_string(Rational(k1 * k2 * k3)) + " != 1");
    std::array<Rational, 3> k{k1, k2, k3};
    for (auto& q : k) q.canonicalize();
    k_ = k;
    for (int r = 1; r < 3; ++r) {
      std::array<Rational, 3> rot{k[r], k[(r + 1) % 3], k[(r + 2) % 3]};
      if (less(rot, k_)) {
        k_ = rot;
        rotation_ = r;
      }
    }
  }

  /// Δ⁽ⁿ⁾ = Δ(1, 1/n, n).
  static TileType integral(long n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "integral tile needs n >= 1");
    return TileType(Rational(1), Rational(1, n), Rational(n));
  }

  const Rational& label(int side) const { return k_[static_cast<std::size_t>(side)]; }
  const std::array<Rational, 3>& labels() const { return k_; }

  /// Offset r such that the user's side i is stored as side (i - r) mod 3.
  int input_rotation() const { return rotation_; }
  int canonical_side(int input_side) const { return (input_side - rotation_ + 3) % 3; }

  /// n when the tile is Δ⁽ⁿ⁾, otherwise empty.
  std::optional<long> integral_n() const {
    if (k_[0] != 1 || k_[2].get_den() != 1 || !k_[2].get_num().fits_slong_p()) return std::nullopt;
    if (k_[1] * k_[2] != 1) return std::nullopt;
    return k_[2].get_num().get_si();
  }

  bool is_integral() const { return integral_n().has_value(); }

  /// 1 when all three labels agree (then every rotation is the same tile), else 3.
  int symmetry_period() const { return (k_[0] == k_[1] && k_[1] == k_[2]) ? 1 : 3; }

  /// J-width of a corner of Δ⁽ⁿ⁾: n between the two type-n sides, 1 elsewhere.
  long corner_width(int corner) const {
    auto n = integral_n();
    if (!n) throw Error(ErrorKind::InvalidArgument, "J-widths are defined for integral tiles only");
    return corner == 2 ? *n : 1;
  }

  /// Type of a side of an integral tile: n for labels n and 1/n.
  Rational side_type(int side) const {
    const Rational& k = label(side);
    return k >= 1 ? k : Rational(1 / k);
  }

  std::string str() const {
    if (auto n = integral_n()) return "D" + std::to_string(*n);
    return "D(" + to_string(k_[0]) + "," + to_string(k_[1]) + "," + to_string(k_[2]) + ")";
  }

  friend bool operator==(const TileType& a, const TileType& b) { return a.k_ == b.k_; }
  friend bool operator<(const TileType& a, const TileType& b) { return less(a.k_, b.k_); }

 private:
  static bool less(const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      const int c = cmp(a[i].get_num(), b[i].get_num());
      if (c != 0) return c < 0;
      const int d = cmp(a[i].get_den(), b[i].get_den());
      if (d != 0) return d < 0;
    }
    return false;
  }

  std::array<Rational, 3> k_;
  int rotation_ = 0;
};

inline const std::array<ExtendedRational, 3>& std_vertices() {
  static const std::array<ExtendedRational, 3> v{ExtendedRational::infinity(), ExtendedRational(-1),
                                                 ExtendedRational(0)};
  return v;
}

/// Marked points of the tile in standard position.
inline std::array<MarkedPoint, 3> std_marked_points(const TileType& t) {
  const Rational& k1 = t.label(0);
  const Rational& k2 = t.label(1);
  const Rational& k3 = t.label(2);
  Rational s = 1 + k2;
  return {MarkedPoint{Rational(-1), Rational(1 / k1)}, MarkedPoint{Rational(-1 / s), Rational(k2 / (s * s))},
          MarkedPoint{Rational(0), k3}};
}

/// π-rotations about the marked points of the tile in standard position.
inline std::array<GroupElement, 3> std_involutions(const TileType& t) {
  const Rational& k1 = t.label(0);
  const Rational& k2 = t.label(1);
  const Rational& k3 = t.label(2);
  return {GroupElement::from_rational_matrix(k1, 1 + k1, -k1, -k1),
          GroupElement::from_rational_matrix(1, 1, -(k2 + 1), -1),
          GroupElement::from_rational_matrix(0, k3, -1, 0)};
}

/// Exact test that g fixes the point x + h·i.
inline bool fixes_point(const GroupElement& g, const MarkedPoint& p) {
  // g(z) = z  <=>  m21 z² + (m22 - m11) z - m12 = 0 with z = x + h i.
  Rational a(g.m21());
  Rational b(Integer(g.m22() - g.m11()));
  Rational c(g.m12());
  Rational re = a * (p.x * p.x - p.h2) + b * p.x - c;
  Rational im = 2 * a * p.x + b;  // coefficient of h
  return re == 0 && im == 0;
}

inline bool sides_match(const TileType& t, int i, const TileType& u, int j) { return t.label(i) == u.label(j); }

}  // namespace jigsaw
