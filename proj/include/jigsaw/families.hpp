#pragma once

// Named jigsaws used throughout the tests and the CLI.

#include "jigsaw/jigsaw.hpp"

#include <vector>

namespace jigsaw::families {

/// Two Δ⁽¹⁾ tiles glued along one side.
inline JigsawSpec two_modular() {
  return make_spec({TileType::integral(1), TileType::integral(1)}, {{0, 1, 1, 0}});
}

/// One Δ⁽¹⁾ with a Δ⁽³⁾ attached to each side along its label-1 side.
inline JigsawSpec j_a() {
  const auto d1 = TileType::integral(1);
  const auto d3 = TileType::integral(3);
  return make_spec({d1, d3, d3, d3}, {{0, 0, 1, 0}, {0, 1, 2, 0}, {0, 2, 3, 0}});
}

/// Two copies of J_A glued along a label-3 side.
inline JigsawSpec two_j_a() {
  JigsawSpec a = j_a();
  JigsawSpec out = a;
  for (const auto& t : a.tiles) out.tiles.push_back(t);
  for (const auto& g : a.gluings) out.gluings.push_back({g.tile_a + 4, g.side_a, g.tile_b + 4, g.side_b});
  out.gluings.push_back({1, 2, 5, 2});
  return out;
}

/// Three Δ⁽³⁾ tiles A, B, C: A and B glued along their label-1 sides, B and C
/// along their label-3 sides. C keeps a free label-1 side.
inline JigsawSpec j_prime() {
  const auto d3 = TileType::integral(3);
  return make_spec({d3, d3, d3}, {{0, 0, 1, 0}, {1, 2, 2, 2}});
}

/// J′ with a chain of n Δ⁽¹⁾ tiles attached to the free label-1 side of C.
inline JigsawSpec j_prime_chain(int n) {
  JigsawSpec s = j_prime();
  int prev_tile = 2;
  int prev_side = 0;
  for (int i = 0; i < n; ++i) {
    const int t = static_cast<int>(s.tiles.size());
    s.tiles.push_back(TileType::integral(1));
    s.gluings.push_back({prev_tile, prev_side, t, 0});
    prev_tile = t;
    prev_side = 1;
  }
  return s;
}

/// r Δ⁽¹⁾ tiles in a chain, with one Δ⁽ⁿ⁾ attached by its label-1 side.
inline JigsawSpec chain_with_one(int r, long n) {
  JigsawSpec s;
  for (int i = 0; i < r; ++i) {
    s.tiles.push_back(TileType::integral(1));
    if (i > 0) s.gluings.push_back({i - 1, 1, i, 0});
  }
  s.tiles.push_back(TileType::integral(n));
  s.gluings.push_back({r - 1, r == 1 ? 1 : 2, r, 0});
  return s;
}

}  // namespace jigsaw::families
