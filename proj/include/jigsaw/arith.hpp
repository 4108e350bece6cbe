#pragma once

// Arithmeticity via integrality of squared traces, the J_A block structure of
// S(1,3) jigsaws, and the tangency pattern used to tell commensurability
// classes apart.

#include "jigsaw/develop.hpp"
#include "jigsaw/exact.hpp"
#include "jigsaw/jigsaw.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace jigsaw {

/// ι_0 ι_i for i = 1 .. N+1: a free basis of the even-length subgroup.
inline std::vector<GroupElement> gamma2_generators(const JigsawGroup& g) {
  std::vector<GroupElement> out;
  for (int i = 1; i < g.rank(); ++i) out.push_back(g.generator(0) * g.generator(i));
  return out;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

struct TracedElement {
  GroupElement element;
  Rational trace_squared;
  std::string name;  // e.g. "i0*i3" or "h[-2]*h[3]"
};

struct ArithmeticityResult {
  bool arithmetic = false;
  std::vector<TracedElement> traces;  // the Γ⁽²⁾ generators
  std::optional<TracedElement> witness;  // non-integral trace², when not arithmetic
};

inline ArithmeticityResult arithmeticity_check(const JigsawGroup& g, const CuspStrip& strip) {
  ArithmeticityResult out;
  const auto gens = gamma2_generators(g);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    TracedElement te{gens[i], gens[i].trace_squared(), "i0*i" + std::to_string(i + 1)};
    if (!out.witness && !is_integer(te.trace_squared)) out.witness = te;
    out.traces.push_back(std::move(te));
  }
  // Products of rotations about exterior vertical sides also lie in Γ⁽²⁾; they
  // give the most readable witnesses.
  std::optional<TracedElement> pair_witness;
  for (std::size_t a = 0; a < strip.sides.size() && !pair_witness; ++a) {
    if (!strip.sides[a].exterior) continue;
    for (std::size_t b = a + 1; b < strip.sides.size(); ++b) {
      if (!strip.sides[b].exterior) continue;
      GroupElement h = strip.sides[a].rotation * strip.sides[b].rotation;
      Rational t2 = h.trace_squared();
      if (!is_integer(t2)) {
        pair_witness = TracedElement{h, t2,
                                     "h[" + to_string(strip.sides[a].foot) + "]*h[" + to_string(strip.sides[b].foot) + "]"};
        break;
      }
    }
  }
  if (pair_witness) out.witness = pair_witness;
  out.arithmetic = !out.witness.has_value();
  return out;
}

inline ArithmeticityResult arithmeticity_check(const JigsawGroup& g) { return arithmeticity_check(g, cusp_strip(g)); }

struct BlockDecomposition {
  bool decomposable = false;
  int blocks = 0;
  std::string reason;
};

/// Splits an S(1,3) jigsaw into J_A pieces (one Δ⁽¹⁾ with a Δ⁽³⁾ on each side).
inline BlockDecomposition s13_block_decomposition(const Jigsaw& j) {
  BlockDecomposition out;
  auto n_of = [&](int t) { return j.tile(t).integral_n().value_or(0); };
  for (int t = 0; t < j.size(); ++t) {
    const long n = n_of(t);
    if (n != 1 && n != 3) {
      out.reason = "tile " + std::to_string(t) + " is not of type 1 or 3";
      return out;
    }
  }
  int cores = 0;
  for (int t = 0; t < j.size(); ++t)
    if (n_of(t) == 1) ++cores;
  if (cores == 0) {
    out.reason = "no D1 core";
    return out;
  }
  for (std::size_t b = 0; b < j.boundary().size(); ++b) {
    const auto& side = j.boundary()[b];
    if (j.tile(side.tile).side_type(side.side) != 3) {
      out.reason = "boundary side " + std::to_string(b) + " has type 1";
      return out;
    }
  }
  for (std::size_t k = 0; k < j.vertices().size(); ++k) {
    if (j.vertices()[k].jwidth % 3 != 0) {
      out.reason = "vertex " + std::to_string(k) + " has J-width " + std::to_string(j.vertices()[k].jwidth) +
                   ", not divisible by 3";
      return out;
    }
  }
  for (int t = 0; t < j.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      SideRef p = j.partner(t, s);
      if (n_of(t) == 1 && (!p.valid() || n_of(p.tile) != 3)) {
        out.reason = "D1 tile " + std::to_string(t) + " side " + std::to_string(s + 1) + " is not glued to a D3 tile";
        return out;
      }
      if (n_of(t) == 3 && j.tile(t).label(s) == 1 && (!p.valid() || n_of(p.tile) != 1)) {
        out.reason = "D3 tile " + std::to_string(t) + " is not attached to a D1 core";
        return out;
      }
    }
  }
  out.decomposable = true;
  out.blocks = cores;
  return out;
}

struct TangencyEntry {
  Rational gap;
  Rational label;

  friend bool operator==(const TangencyEntry&, const TangencyEntry&) = default;
};

using TangencyPattern = std::vector<TangencyEntry>;

inline bool pattern_less(const TangencyPattern& a, const TangencyPattern& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].gap != b[i].gap) return a[i].gap < b[i].gap;
    if (a[i].label != b[i].label) return a[i].label < b[i].label;
  }
  return a.size() < b.size();
}

/// Cyclic pattern of vertical sides with label != 1 over one period: the gap to
/// the next such side and the side's label, in its least rotation.
inline TangencyPattern tangency_pattern(const CuspStrip& strip) {
  std::vector<const VerticalSide*> sites;
  for (const auto& v : strip.sides)
    if (v.label != 1 && v.foot < strip.start + strip.L) sites.push_back(&v);
  TangencyPattern p;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Rational next = i + 1 < sites.size() ? sites[i + 1]->foot : Rational(sites[0]->foot + strip.L);
    p.push_back(TangencyEntry{Rational(next - sites[i]->foot), sites[i]->label});
  }
  TangencyPattern best = p;
  for (std::size_t r = 1; r < p.size(); ++r) {
    TangencyPattern rot(p.begin() + static_cast<std::ptrdiff_t>(r), p.end());
    rot.insert(rot.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(r));
    if (pattern_less(rot, best)) best = std::move(rot);
  }
  return best;
}

inline TangencyPattern tangency_pattern(const JigsawGroup& g) { return tangency_pattern(cusp_strip(g)); }

}  // namespace jigsaw
