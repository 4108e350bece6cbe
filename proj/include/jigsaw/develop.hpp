#pragma once

// The developing map: tiles of the triangulation placed in the upper half-plane,
// the strip of triangles at ∞, cutting sequences of rays, and the combinatorial
// walk that detects closed geodesics with side-label period 3, 1, 1/3, 1.

#include "jigsaw/exact.hpp"
#include "jigsaw/jigsaw.hpp"
#include "jigsaw/tiles.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace jigsaw {

/// A tile of the triangulation: placement * (standard tile t), reached from
/// the base polygon by the group element `element` (= evaluation of `word`).
struct DevelopedTile {
  GroupElement placement;
  GroupElement element;
  Word word;
  int tile = 0;

  ExtendedRational vertex(int corner) const { return placement.apply(std_vertices()[static_cast<std::size_t>(corner)]); }
  std::array<ExtendedRational, 3> vertices() const { return {vertex(0), vertex(1), vertex(2)}; }

  /// Corner sitting at ∞, or -1.
  int corner_at_infinity() const {
    for (int c = 0; c < 3; ++c)
      if (vertex(c).is_infinity()) return c;
    return -1;
  }

  int corner_at(const ExtendedRational& x) const {
    for (int c = 0; c < 3; ++c)
      if (vertex(c) == x) return c;
    return -1;
  }
};

inline DevelopedTile base_tile(const JigsawGroup& g, int t) {
  return DevelopedTile{g.placement(t), GroupElement(), Word(), t};
}

/// The developed tile across `side`, together with the side index it is entered by.
inline std::pair<DevelopedTile, int> neighbor(const JigsawGroup& g, const DevelopedTile& d, int side) {
  const Jigsaw& j = g.jigsaw();
  SideRef p = j.partner(d.tile, side);
  if (p.valid()) return {DevelopedTile{d.placement * g.step(d.tile, side), d.element, d.word, p.tile}, p.side};
  const int b = j.boundary_index(d.tile, side);
  DevelopedTile next{d.placement * g.std_involution(d.tile, side), d.element * g.generator(b), d.word, d.tile};
  next.word.push_back(b);
  return {std::move(next), side};
}

/// Group element (and word) sending ∞ to corner c of a developed tile.
inline std::pair<GroupElement, Word> cusp_witness(const JigsawGroup& g, const DevelopedTile& d, int corner) {
  const int k = g.jigsaw().vertex_of_corner(d.tile, corner);
  return {d.element * g.vertex_element(k), d.word * g.vertex_word(k)};
}

/// π-rotation about the marked point of a side of a developed tile.
inline GroupElement side_rotation(const JigsawGroup& g, const DevelopedTile& d, int side) {
  return d.placement * g.std_involution(d.tile, side) * d.placement.inverse();
}

struct StripTriangle {
  DevelopedTile tile;
  int corner = 0;  // the corner at ∞
  Rational left;   // foot of side `corner`
  Rational right;  // foot of side `corner + 2`

  int left_side() const { return corner; }
  int right_side() const { return prev_side(corner); }
  int bottom_side() const { return next_side(corner); }
  Rational width() const { return right - left; }
};

struct VerticalSide {
  Rational foot;
  Rational label;
  bool exterior = false;
  int boundary_index = -1;  // generator index for exterior sides
  GroupElement witness;     // witness(∞) = foot
  Word witness_word;
  GroupElement rotation;    // π-rotation about the marked point on [∞, foot]
};

/// Triangles at ∞ over the window [start, start + L], listed left to right.
struct CuspStrip {
  Rational start;
  Rational L;
  std::vector<StripTriangle> triangles;
  std::vector<VerticalSide> sides;  // feet in [start, start + L], ascending

  const StripTriangle* triangle_over(const Rational& x) const {
    for (const auto& t : triangles)
      if (t.left < x && x < t.right) return &t;
    return nullptr;
  }

  const StripTriangle* lift_of(int tile, int corner) const {
    for (const auto& t : triangles)
      if (t.tile.tile == tile && t.corner == corner) return &t;
    return nullptr;
  }
};

namespace detail {

inline StripTriangle make_strip_triangle(const DevelopedTile& d) {
  const int c = d.corner_at_infinity();
  if (c < 0) throw Error(ErrorKind::InvalidArgument, "tile is not incident to ∞");
  return StripTriangle{d, c, d.vertex(next_side(c)).value(), d.vertex(prev_side(c)).value()};
}

}  // namespace detail

/// Default window [v_1 - L, v_1]: the period ending at the first polygon vertex.
inline Rational default_window_start(const JigsawGroup& g) {
  return g.vertex_points().at(1).value() - g.length();
}

inline CuspStrip cusp_strip(const JigsawGroup& g, std::optional<Rational> start = std::nullopt) {
  CuspStrip strip;
  strip.L = g.length();
  strip.start = start ? *start : default_window_start(g);
  const Rational end = strip.start + strip.L;

  std::vector<StripTriangle> left;
  std::vector<StripTriangle> right;
  StripTriangle origin = detail::make_strip_triangle(base_tile(g, g.jigsaw().base_tile()));
  StripTriangle cur = origin;
  while (cur.left > strip.start) {
    cur = detail::make_strip_triangle(neighbor(g, cur.tile, cur.left_side()).first);
    left.push_back(cur);
  }
  cur = origin;
  while (cur.right < end) {
    cur = detail::make_strip_triangle(neighbor(g, cur.tile, cur.right_side()).first);
    right.push_back(cur);
  }
  strip.triangles.assign(left.rbegin(), left.rend());
  strip.triangles.push_back(origin);
  strip.triangles.insert(strip.triangles.end(), right.begin(), right.end());
  // Trim triangles lying entirely outside the window.
  std::vector<StripTriangle> kept;
  for (auto& t : strip.triangles)
    if (t.right > strip.start && t.left < end) kept.push_back(std::move(t));
  strip.triangles = std::move(kept);

  const Jigsaw& j = g.jigsaw();
  auto add_side = [&](const StripTriangle& t, int side, int foot_corner) {
    VerticalSide v;
    v.foot = t.tile.vertex(foot_corner).value();
    v.label = j.tile(t.tile.tile).label(side);
    v.exterior = j.is_boundary(t.tile.tile, side);
    v.boundary_index = v.exterior ? j.boundary_index(t.tile.tile, side) : -1;
    std::tie(v.witness, v.witness_word) = cusp_witness(g, t.tile, foot_corner);
    v.rotation = side_rotation(g, t.tile, side);
    strip.sides.push_back(std::move(v));
  };
  for (const auto& t : strip.triangles)
    if (t.left >= strip.start) add_side(t, t.left_side(), next_side(t.corner));
  if (!strip.triangles.empty()) {
    const auto& last = strip.triangles.back();
    if (last.right <= end) add_side(last, last.right_side(), prev_side(last.corner));
  }
  return strip;
}

enum class RayOutcome { ReachedVertex, StateRepeat, Budget };

inline const char* to_string(RayOutcome o) {
  switch (o) {
    case RayOutcome::ReachedVertex: return "reached-vertex";
    case RayOutcome::StateRepeat: return "state-repeat";
    case RayOutcome::Budget: return "budget";
  }
  return "?";
}

struct RayTrace {
  std::vector<int> tiles;          // V-sequence: tile indices of J
  std::vector<Rational> labels;    // W-sequence: labels of the crossed sides
  RayOutcome outcome = RayOutcome::Budget;
  DevelopedTile last;
  int corner = -1;                 // ReachedVertex: corner of `last` at the target
  GroupElement holonomy;           // StateRepeat: hyperbolic element fixing the target
  Word holonomy_word;
};

/// Follows the geodesic ray into `target` starting from `start`.
inline RayTrace trace_ray(const JigsawGroup& g, const DevelopedTile& start, const ExtendedRational& target,
                          int max_steps) {
  RayTrace out;
  DevelopedTile cur = start;
  std::map<std::pair<int, int>, std::vector<DevelopedTile>> visits;
  int entry = -1;
  out.tiles.push_back(cur.tile);
  for (int step = 0;; ++step) {
    const auto v = cur.vertices();
    for (int c = 0; c < 3; ++c) {
      if (v[static_cast<std::size_t>(c)] == target) {
        out.outcome = RayOutcome::ReachedVertex;
        out.corner = c;
        out.last = cur;
        return out;
      }
    }
    if (entry >= 0) {
      auto& seen = visits[{cur.tile, entry}];
      for (const auto& old : seen) {
        GroupElement h = cur.placement * old.placement.inverse();
        if (h.is_identity() || !h.is_hyperbolic() || h.apply(target) != target) continue;
        out.outcome = RayOutcome::StateRepeat;
        out.holonomy = h;
        out.holonomy_word = cur.word * old.word.inverse();
        out.last = cur;
        return out;
      }
      seen.push_back(cur);
    }
    if (step >= max_steps) {
      out.outcome = RayOutcome::Budget;
      out.last = cur;
      return out;
    }
    int exit = -1;
    for (int s = 0; s < 3; ++s) {
      const auto& a = v[static_cast<std::size_t>(s)];
      const auto& b = v[static_cast<std::size_t>(next_side(s))];
      const auto& c = v[static_cast<std::size_t>(prev_side(s))];
      if (on_arc_avoiding(a, b, c, target)) {
        exit = s;
        break;
      }
    }
    if (exit < 0) throw Error(ErrorKind::InvalidArgument, "ray target lies on no outer arc");
    out.labels.push_back(g.jigsaw().tile(cur.tile).label(exit));
    auto [next, e] = neighbor(g, cur, exit);
    cur = std::move(next);
    entry = e;
    out.tiles.push_back(cur.tile);
  }
}

/// The strip triangle above `target` (or one with `target` as a vertex), as the ray's start.
inline DevelopedTile ray_start(const JigsawGroup& g, const CuspStrip& strip, const Rational& target) {
  const Rational& L = g.length();
  Rational shift(0);
  // Bring the target into the strip window, then move the start tile back.
  Rational rel = (target - strip.start) / L;
  Integer t = rel.get_num() / rel.get_den();
  if (rel < 0 && Rational(t) != rel) t -= 1;
  shift = Rational(t) * L;
  Rational x = target - shift;
  const StripTriangle* tri = nullptr;
  for (const auto& s : strip.triangles)
    if (s.left <= x && x < s.right) tri = &s;
  if (tri == nullptr) throw Error(ErrorKind::InvalidArgument, "strip does not cover the target");
  DevelopedTile d = tri->tile;
  if (t != 0) {
    // T^{tL} = (T^L)^t, with T^L = ι_{N+1}···ι_0.
    const long power = t.get_si();
    Word w = g.translation_word(power);
    GroupElement T = GroupElement::translation(shift);
    d.placement = T * d.placement;
    d.element = T * d.element;
    d.word = w * d.word;
  }
  return d;
}

inline DevelopedTile ray_start(const JigsawGroup& g, const Rational& target) {
  return ray_start(g, cusp_strip(g), target);
}

// ---------------------------------------------------------------------------
// Combinatorial walk for the side-label period (3, 1, 1/3, 1).

inline const std::array<Rational, 4>& walk_letters() {
  static const std::array<Rational, 4> letters{Rational(3), Rational(1), Rational(1, 3), Rational(1)};
  return letters;
}

struct WalkState {
  int tile = 0;
  int entry = 0;  // side crossed to enter the tile
  int phase = 0;  // the entry side's label is walk_letters()[phase]

  friend bool operator==(const WalkState&, const WalkState&) = default;
  friend auto operator<=>(const WalkState&, const WalkState&) = default;
};

struct WalkResult {
  bool cycles = false;
  std::vector<WalkState> cycle;  // starts at the start state when it cycles
  int steps = 0;
};

inline bool is_type3(const TileType& t) { return t.integral_n() == 3L; }

inline bool valid_walk_state(const Jigsaw& j, const WalkState& s) {
  return s.tile >= 0 && s.tile < j.size() && is_type3(j.tile(s.tile)) && s.entry >= 0 && s.entry < 3 &&
         j.tile(s.tile).label(s.entry) == walk_letters()[static_cast<std::size_t>(s.phase & 3)];
}

/// Exit side of a walk state, or -1.
inline int walk_exit(const Jigsaw& j, const WalkState& s) {
  const Rational& want = walk_letters()[static_cast<std::size_t>((s.phase + 1) & 3)];
  for (int side = 0; side < 3; ++side)
    if (side != s.entry && j.tile(s.tile).label(side) == want) return side;
  return -1;
}

/// One transition; empty when the walk dies.
inline std::optional<WalkState> walk_step(const Jigsaw& j, const WalkState& s) {
  const int exit = walk_exit(j, s);
  if (exit < 0) return std::nullopt;
  const int phase = (s.phase + 1) & 3;
  SideRef p = j.partner(s.tile, exit);
  if (!p.valid()) return WalkState{s.tile, exit, phase};
  if (!is_type3(j.tile(p.tile))) return std::nullopt;
  return WalkState{p.tile, p.side, phase};
}

inline int walk_state_bound(const Jigsaw& j) { return 4 * 2 * 3 * j.size() + 1; }

inline WalkResult special_walk(const Jigsaw& j, const WalkState& start, int max_steps) {
  WalkResult out;
  if (!valid_walk_state(j, start)) return out;
  WalkState cur = start;
  std::vector<WalkState> path{start};
  for (int step = 1; step <= max_steps; ++step) {
    auto next = walk_step(j, cur);
    out.steps = step;
    if (!next) return out;
    cur = *next;
    auto it = std::find(path.begin(), path.end(), cur);
    if (it != path.end()) {
      out.cycles = true;
      out.cycle.assign(it, path.end());
      return out;
    }
    path.push_back(cur);
  }
  return out;
}

/// Every admissible start state of the walk.
inline std::vector<WalkState> walk_start_states(const Jigsaw& j) {
  std::vector<WalkState> states;
  for (int t = 0; t < j.size(); ++t)
    for (int e = 0; e < 3; ++e)
      for (int p = 0; p < 4; ++p)
        if (WalkState s{t, e, p}; valid_walk_state(j, s)) states.push_back(s);
  return states;
}

struct SpecialPoint {
  Rational point;
  Rational partner;      // the other endpoint of the witness axis
  GroupElement witness;  // hyperbolic, fixes point and partner
  Word witness_word;
};

/// Holonomy of a walk cycle started from developed tile d in state `s`.
inline std::pair<GroupElement, Word> walk_holonomy(const JigsawGroup& g, const DevelopedTile& d, const WalkState& s) {
  const Jigsaw& j = g.jigsaw();
  DevelopedTile cur = d;
  WalkState state = s;
  const int bound = walk_state_bound(j);
  for (int i = 0; i < bound; ++i) {
    const int exit = walk_exit(j, state);
    auto next = walk_step(j, state);
    if (!next) throw Error(ErrorKind::InvalidArgument, "walk state does not lie on a cycle");
    cur = neighbor(g, cur, exit).first;
    state = *next;
    if (state == s) {
      GroupElement h = cur.placement * d.placement.inverse();
      return {h, cur.word * d.word.inverse()};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "walk state does not lie on a cycle");
}

/// Specials produced by a walk cycle: for each cycle state crossing the bottom
/// side of a width-3 strip triangle [∞, m, m + 3], the endpoints {m - 3, m + 1}
/// (left side crossed) or {m + 2, m + 6} (right side crossed).
inline std::vector<SpecialPoint> special_endpoints(const JigsawGroup& g, const std::vector<WalkState>& cycle,
                                                   const CuspStrip& strip) {
  std::vector<SpecialPoint> out;
  if (cycle.empty()) return out;
  bool lifted = false;
  for (const auto& s : cycle) {
    const StripTriangle* tri = strip.lift_of(s.tile, 2);
    if (tri == nullptr) continue;
    lifted = true;
    const Rational& m = tri->left;
    // Use the state entering through the bottom side, so the holonomy is
    // read off with the ray heading towards the special inside (m, m + 3).
    if (s.entry != 0) continue;
    Rational point;
    Rational partner;
    if (s.phase == 3) {
      point = m + 1;
      partner = m - 3;
    } else if (s.phase == 1) {
      point = m + 2;
      partner = m + 6;
    } else {
      continue;
    }
    auto [h, w] = walk_holonomy(g, tri->tile, s);
    auto fp = h.rational_fixed_points();
    if (fp.kind != MobiusKind::HyperbolicRational || fp.points.size() != 2 ||
        std::find(fp.points.begin(), fp.points.end(), ExtendedRational(point)) == fp.points.end() ||
        std::find(fp.points.begin(), fp.points.end(), ExtendedRational(partner)) == fp.points.end())
      throw Error(ErrorKind::InvalidArgument, "walk holonomy " + h.str() + " does not fix " + to_string(point));
    out.push_back(SpecialPoint{point, partner, h, w});
  }
  if (!lifted) throw Error(ErrorKind::NoStripLift, "no cycle tile appears as a width-3 strip triangle");
  std::sort(out.begin(), out.end(), [](const SpecialPoint& a, const SpecialPoint& b) { return a.point < b.point; });
  return out;
}

}  // namespace jigsaw
