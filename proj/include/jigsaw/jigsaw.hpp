#pragma once

// Jigsaws: tiles glued along matching sides into an ideal polygon, the group
// generated by the π-rotations about the boundary marked points, and a census
// of jigsaws up to orientation-preserving isomorphism.

#include "jigsaw/exact.hpp"
#include "jigsaw/tiles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace jigsaw {

/// Sides are 0-based and refer to the canonical rotation of each tile.
struct Gluing {
  int tile_a = 0;
  int side_a = 0;
  int tile_b = 0;
  int side_b = 0;

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct JigsawSpec {
  std::vector<TileType> tiles;
  std::vector<Gluing> gluings;
};

struct SideRef {
  int tile = -1;
  int side = -1;

  bool valid() const { return tile >= 0; }
  friend bool operator==(const SideRef&, const SideRef&) = default;
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct BoundarySide {
  int tile;
  int side;
  Rational label;
};

struct Vertex {
  long jwidth = 0;  // 0 when some incident tile is not integral
  int weight = 0;
  std::vector<std::pair<int, int>> corners;  // (tile, corner) in boundary-walk order
};

class Jigsaw {
 public:
  explicit Jigsaw(JigsawSpec spec) : spec_(std::move(spec)) { assemble(); }

  const JigsawSpec& spec() const { return spec_; }
  const std::vector<TileType>& tiles() const { return spec_.tiles; }
  const TileType& tile(int t) const { return spec_.tiles[static_cast<std::size_t>(t)]; }
  int size() const { return static_cast<int>(spec_.tiles.size()); }

  /// The side glued to (t, s), or an invalid reference for a boundary side.
  SideRef partner(int t, int s) const { return partner_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]; }
  bool is_boundary(int t, int s) const { return !partner(t, s).valid(); }

  const std::vector<BoundarySide>& boundary() const { return boundary_; }
  int boundary_index(int t, int s) const { return boundary_index_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]; }

  /// vertices()[b] is the start of boundary side b; vertex 0 is corner 0 of the base tile.
  const std::vector<Vertex>& vertices() const { return vertices_; }
  int vertex_of_corner(int t, int c) const { return corner_vertex_[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)]; }

  int base_tile() const { return base_; }
  bool is_integral() const {
    return std::all_of(spec_.tiles.begin(), spec_.tiles.end(), [](const TileType& t) { return t.is_integral(); });
  }

  /// Tile type -> multiplicity, ordered by type.
  std::map<TileType, int> signature() const {
    std::map<TileType, int> sig;
    for (const auto& t : spec_.tiles) ++sig[t];
    return sig;
  }

  /// Σ m_i (2 + n_i) for integral jigsaws.
  std::optional<long> integral_length() const {
    if (!is_integral()) return std::nullopt;
    long L = 0;
    for (const auto& t : spec_.tiles) L += 2 + *t.integral_n();
    return L;
  }

 private:
  void assemble() {
    const auto n = spec_.tiles.size();
    if (n == 0) throw Error(ErrorKind::NotATree, "a jigsaw needs at least one tile");
    if (spec_.gluings.size() != n - 1)
      throw Error(ErrorKind::NotATree, std::to_string(spec_.gluings.size()) + " gluings for " + std::to_string(n) +
                                           " tiles; a tree needs " + std::to_string(n - 1));
    partner_.assign(n, {SideRef{}, SideRef{}, SideRef{}});
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : spec_.gluings) {
      const std::string where = "gluing (" + std::to_string(g.tile_a) + "," + std::to_string(g.side_a + 1) + ")-(" +
                                std::to_string(g.tile_b) + "," + std::to_string(g.side_b + 1) + ")";
      auto in_range = [&](int t, int s) { return t >= 0 && static_cast<std::size_t>(t) < n && s >= 0 && s < 3; };
      if (!in_range(g.tile_a, g.side_a) || !in_range(g.tile_b, g.side_b))
        throw Error(ErrorKind::InvalidArgument, where + " refers to a missing tile or side");
      if (!sides_match(tile(g.tile_a), g.side_a, tile(g.tile_b), g.side_b))
        throw Error(ErrorKind::MatchFailure, where + ": labels " + to_string(tile(g.tile_a).label(g.side_a)) +
                                                 " and " + to_string(tile(g.tile_b).label(g.side_b)) + " differ");
      auto& pa = partner_[static_cast<std::size_t>(g.tile_a)][static_cast<std::size_t>(g.side_a)];
      auto& pb = partner_[static_cast<std::size_t>(g.tile_b)][static_cast<std::size_t>(g.side_b)];
      if (pa.valid() || pb.valid() || (g.tile_a == g.tile_b && g.side_a == g.side_b))
        throw Error(ErrorKind::DuplicateSideUse, where + " reuses a side");
      const auto ra = find(static_cast<std::size_t>(g.tile_a));
      const auto rb = find(static_cast<std::size_t>(g.tile_b));
      if (ra == rb) throw Error(ErrorKind::NotATree, where + " closes a cycle");
      parent[ra] = rb;
      pa = SideRef{g.tile_b, g.side_b};
      pb = SideRef{g.tile_a, g.side_a};
    }

    base_ = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (spec_.tiles[t].integral_n() == 1L) {
        base_ = static_cast<int>(t);
        break;
      }
    }

    // The boundary side leaving corner 0 of the base tile: rotate about that vertex.
    SideRef cur{base_, 0};
    while (partner(cur.tile, cur.side).valid()) {
      SideRef p = partner(cur.tile, cur.side);
      cur = SideRef{p.tile, next_side(p.side)};
    }

    boundary_index_.assign(n, {-1, -1, -1});
    corner_vertex_.assign(n, {-1, -1, -1});
    const bool integral = is_integral();
    const SideRef first = cur;
    std::vector<Vertex> ends;  // ends[b] is the vertex where boundary side b ends
    do {
      boundary_index_[static_cast<std::size_t>(cur.tile)][static_cast<std::size_t>(cur.side)] =
          static_cast<int>(boundary_.size());
      boundary_.push_back(BoundarySide{cur.tile, cur.side, tile(cur.tile).label(cur.side)});
      Vertex v;
      SideRef cand{cur.tile, next_side(cur.side)};
      auto visit = [&](int t, int corner) {
        v.corners.emplace_back(t, corner);
        ++v.weight;
        if (integral) v.jwidth += tile(t).corner_width(corner);
      };
      visit(cur.tile, next_side(cur.side));
      while (partner(cand.tile, cand.side).valid()) {
        SideRef p = partner(cand.tile, cand.side);
        cand = SideRef{p.tile, next_side(p.side)};
        visit(cand.tile, cand.side);
      }
      ends.push_back(std::move(v));
      cur = cand;
      if (boundary_.size() > 3 * n) throw Error(ErrorKind::NotATree, "boundary walk did not close");
    } while (cur != first);

    if (boundary_.size() != n + 2)
      throw Error(ErrorKind::NotATree, "boundary has " + std::to_string(boundary_.size()) + " sides, expected " +
                                           std::to_string(n + 2));
    const auto m = boundary_.size();
    vertices_.resize(m);
    for (std::size_t b = 0; b < m; ++b) vertices_[(b + 1) % m] = std::move(ends[b]);
    for (std::size_t k = 0; k < m; ++k)
      for (auto [t, c] : vertices_[k].corners)
        corner_vertex_[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] = static_cast<int>(k);
  }

  JigsawSpec spec_;
  std::vector<std::array<SideRef, 3>> partner_;
  std::vector<BoundarySide> boundary_;
  std::vector<std::array<int, 3>> boundary_index_;
  std::vector<Vertex> vertices_;
  std::vector<std::array<int, 3>> corner_vertex_;
  int base_ = 0;
};

inline Jigsaw assemble(JigsawSpec spec) { return Jigsaw(std::move(spec)); }

/// The group Γ_J with the tiles developed around the base tile in standard position.
class JigsawGroup {
 public:
  explicit JigsawGroup(Jigsaw j) : j_(std::move(j)) { build(); }

  const Jigsaw& jigsaw() const { return j_; }

  /// ι_0, ..., ι_{N+1} in boundary order.
  const std::vector<GroupElement>& generators() const { return generators_; }
  const GroupElement& generator(int b) const { return generators_[static_cast<std::size_t>(b)]; }
  int rank() const { return static_cast<int>(generators_.size()); }

  /// Placement of tile t inside the base copy of the polygon.
  const GroupElement& placement(int t) const { return placements_[static_cast<std::size_t>(t)]; }

  /// Map from standard coordinates of tile t to the standard coordinates of the
  /// tile across side s (the glue map for interior sides, ι_s for boundary sides).
  const GroupElement& step(int t, int s) const { return steps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]; }
  const GroupElement& std_involution(int t, int s) const {
    return involutions_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
  }

  const Rational& length() const { return L_; }
  const std::vector<ExtendedRational>& vertex_points() const { return vertex_points_; }

  /// Word (and element) sending ∞ to polygon vertex k.
  const Word& vertex_word(int k) const { return vertex_words_[static_cast<std::size_t>(k)]; }
  const GroupElement& vertex_element(int k) const { return vertex_elements_[static_cast<std::size_t>(k)]; }

  /// Words for T^L and T^{-L}.
  Word translation_word(long power) const {
    Word w;
    const int m = rank();
    for (long i = 0; i < (power < 0 ? -power : power); ++i)
      for (int b = 0; b < m; ++b) w.push_back(power > 0 ? m - 1 - b : b);
    return w;
  }

  GroupElement evaluate(const Word& w) const { return w.evaluate(generators_); }

 private:
  void build() {
    const int n = j_.size();
    involutions_.clear();
    for (int t = 0; t < n; ++t) involutions_.push_back(std_involutions(j_.tile(t)));

    const auto& V = std_vertices();
    steps_.assign(static_cast<std::size_t>(n), {});
    for (int t = 0; t < n; ++t) {
      for (int s = 0; s < 3; ++s) {
        SideRef p = j_.partner(t, s);
        const auto& inv = involutions_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
        if (!p.valid()) {
          steps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = inv;
          continue;
        }
        const int jj = p.side;
        std::array<ExtendedRational, 3> src{V[static_cast<std::size_t>(jj)], V[static_cast<std::size_t>(next_side(jj))],
                                            V[static_cast<std::size_t>(prev_side(jj))]};
        std::array<ExtendedRational, 3> dst{V[static_cast<std::size_t>(next_side(s))], V[static_cast<std::size_t>(s)],
                                            inv.apply(V[static_cast<std::size_t>(prev_side(s))])};
        steps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = map_triple(src, dst);
      }
    }

    placements_.assign(static_cast<std::size_t>(n), GroupElement());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{j_.base_tile()};
    seen[static_cast<std::size_t>(j_.base_tile())] = true;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3; ++s) {
        SideRef p = j_.partner(t, s);
        if (!p.valid() || seen[static_cast<std::size_t>(p.tile)]) continue;
        seen[static_cast<std::size_t>(p.tile)] = true;
        placements_[static_cast<std::size_t>(p.tile)] = placement(t) * step(t, s);
        stack.push_back(p.tile);
      }
    }

    generators_.clear();
    for (const auto& b : j_.boundary()) {
      const auto& P = placement(b.tile);
      generators_.push_back(P * std_involution(b.tile, b.side) * P.inverse());
    }

    vertex_points_.clear();
    for (const auto& v : j_.vertices()) {
      auto [t, c] = v.corners.front();
      vertex_points_.push_back(placement(t).apply(V[static_cast<std::size_t>(c)]));
    }

    GroupElement product;
    for (int b = rank() - 1; b >= 0; --b) product = product * generator(b);
    if (product.m21() != 0 || product.m11() != product.m22() || product.m12() == 0)
      throw Error(ErrorKind::InvalidArgument, "boundary product is not a translation: " + product.str());
    L_ = make_rational(product.m12(), product.m11());
    if (L_ < 0) throw Error(ErrorKind::InvalidArgument, "boundary product translates in the negative direction");

    const int m = rank();
    vertex_words_.assign(static_cast<std::size_t>(m), Word{});
    vertex_elements_.assign(static_cast<std::size_t>(m), GroupElement{});
    for (int k = 1; k < m; ++k) {
      Word w;
      if (k <= m - k) {
        for (int b = k - 1; b >= 0; --b) w.push_back(b);
      } else {
        for (int b = k; b < m; ++b) w.push_back(b);
      }
      vertex_elements_[static_cast<std::size_t>(k)] = evaluate(w);
      vertex_words_[static_cast<std::size_t>(k)] = std::move(w);
    }
  }

  Jigsaw j_;
  std::vector<std::array<GroupElement, 3>> involutions_;
  std::vector<std::array<GroupElement, 3>> steps_;
  std::vector<GroupElement> placements_;
  std::vector<GroupElement> generators_;
  std::vector<ExtendedRational> vertex_points_;
  std::vector<Word> vertex_words_;
  std::vector<GroupElement> vertex_elements_;
  Rational L_;
};

inline JigsawGroup group(const Jigsaw& j) { return JigsawGroup(j); }

/// Single-tile group generated by the three side involutions of Δ(k1, k2, k3).
inline JigsawGroup weierstrass(const Rational& k1, const Rational& k2, const Rational& k3) {
  JigsawSpec spec;
  spec.tiles.emplace_back(k1, k2, k3);
  return JigsawGroup(Jigsaw(std::move(spec)));
}

/// Every tile needs a side matching a side of some other tile of the set. A
/// single tile passes if two of its sides match each other, or in Weierstrass mode.
inline bool validate_set(const std::vector<TileType>& set, bool weierstrass_mode = false) {
  if (set.empty()) return false;
  std::vector<TileType> distinct;
  for (const auto& t : set)
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end()) distinct.push_back(t);
  if (distinct.size() == 1) {
    const auto& k = distinct.front().labels();
    return weierstrass_mode || k[0] == k[1] || k[1] == k[2] || k[2] == k[0];
  }
  for (std::size_t a = 0; a < distinct.size(); ++a) {
    bool ok = false;
    for (std::size_t b = 0; b < distinct.size() && !ok; ++b) {
      if (a == b) continue;
      for (int i = 0; i < 3 && !ok; ++i)
        for (int j = 0; j < 3 && !ok; ++j) ok = sides_match(distinct[a], i, distinct[b], j);
    }
    if (!ok) return false;
  }
  return true;
}

namespace detail {

inline void serialize_subtree(const Jigsaw& j, const std::map<TileType, int>& type_ids, int t, int entry, bool root,
                              std::string& out) {
  const TileType& type = j.tile(t);
  out += std::to_string(type_ids.at(type));
  out += ':';
  out += std::to_string(entry % type.symmetry_period());
  for (int i = root ? 0 : 1; i < 3; ++i) {
    const int s = (entry + i) % 3;
    SideRef p = j.partner(t, s);
    if (!p.valid()) {
      out += '.';
      continue;
    }
    out += '(';
    serialize_subtree(j, type_ids, p.tile, p.side, false, out);
    out += ')';
  }
}

}  // namespace detail

/// Isomorphism-invariant key: the least serialization over all roots.
inline std::string canonical_key(const Jigsaw& j) {
  std::map<TileType, int> type_ids;
  for (const auto& t : j.tiles()) type_ids.emplace(t, 0);
  int id = 0;
  for (auto& [type, value] : type_ids) value = id++;
  std::string prefix;
  for (const auto& [type, value] : type_ids) prefix += type.str() + ";";

  std::string best;
  for (int t = 0; t < j.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      std::string key;
      detail::serialize_subtree(j, type_ids, t, s, true, key);
      if (best.empty() || key < best) best = std::move(key);
    }
  }
  return prefix + best;
}

/// All jigsaws with at most max_size tiles from `set` that use every tile type,
/// one per isomorphism class, sorted by (size, key).
inline std::vector<Jigsaw> census(const std::vector<TileType>& set, int max_size) {
  std::vector<TileType> types;
  for (const auto& t : set)
    if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
  std::sort(types.begin(), types.end());

  std::vector<std::pair<std::string, Jigsaw>> result;
  std::vector<Jigsaw> layer;
  std::unordered_set<std::string> seen;
  for (const auto& t : types) {
    JigsawSpec spec;
    spec.tiles.push_back(t);
    Jigsaw j(std::move(spec));
    if (seen.insert(canonical_key(j)).second) layer.push_back(std::move(j));
  }
  auto uses_all = [&](const Jigsaw& j) {
    auto sig = j.signature();
    return sig.size() == types.size();
  };
  for (int size = 1; size <= max_size && !layer.empty(); ++size) {
    std::vector<std::pair<std::string, Jigsaw>> keyed;
    for (auto& j : layer) keyed.emplace_back(canonical_key(j), j);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, j] : keyed)
      if (uses_all(j) && size > 1) result.emplace_back(key, j);
    if (size == max_size) break;

    std::vector<Jigsaw> next;
    for (const auto& [key, j] : keyed) {
      for (const auto& b : j.boundary()) {
        for (const auto& type : types) {
          for (int side = 0; side < type.symmetry_period(); ++side) {
            if (type.label(side) != b.label) continue;
            JigsawSpec spec = j.spec();
            spec.tiles.push_back(type);
            spec.gluings.push_back(Gluing{b.tile, b.side, j.size(), side});
            Jigsaw child(std::move(spec));
            if (seen.insert(canonical_key(child)).second) next.push_back(std::move(child));
          }
        }
      }
    }
    layer = std::move(next);
  }
  std::vector<Jigsaw> out;
  out.reserve(result.size());
  for (auto& [key, j] : result) out.push_back(std::move(j));
  return out;
}

/// Side reference helper for building specs by hand (sides 0-based, canonical).
inline JigsawSpec make_spec(std::vector<TileType> tiles, std::vector<Gluing> gluings) {
  return JigsawSpec{std::move(tiles), std::move(gluings)};
}

}  // namespace jigsaw
