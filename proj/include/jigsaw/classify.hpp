#pragma once

// Group-level verdicts and the commensurability comparison.

#include "jigsaw/arith.hpp"
#include "jigsaw/cuspset.hpp"
#include "jigsaw/develop.hpp"
#include "jigsaw/families.hpp"
#include "jigsaw/jigsaw.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jigsaw {

enum class Verdict { Arithmetic, Pseudomodular, NonArithmeticWithSpecials, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Arithmetic: return "arithmetic";
    case Verdict::Pseudomodular: return "pseudomodular";
    case Verdict::NonArithmeticWithSpecials: return "specials";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SpecialReport {
  Rational point;
  GroupElement witness;
  std::vector<ExtendedRational> fixed_points;
};

struct ClassificationReport {
  Verdict verdict = Verdict::Inconclusive;
  Family family = Family::NonIntegral;
  std::string member;  // "S12(r,1)", "S13(r,1)", "J'+J_n" or empty
  std::string key;
  Rational L;
  std::vector<std::pair<std::string, int>> signature;
  std::vector<Rational> boundary_labels;
  std::vector<long> jwidths;
  std::optional<ArithmeticityResult> arithmeticity;
  std::optional<Cover> cover;
  std::vector<SpecialReport> specials;
  std::vector<Rational> cusp_points;  // uncovered points shown to be cusps
  bool walk_cycle = false;
  TangencyPattern tangency;
  std::string note;
};

/// Membership tag for the families where the commensurability comparison applies.
inline std::string family_member(const Jigsaw& j) {
  const Family f = family_of(j);
  const auto sig = j.signature();
  auto count = [&](long n) {
    auto it = sig.find(TileType::integral(n));
    return it == sig.end() ? 0 : it->second;
  };
  if (f == Family::S12 && count(2) == 1 && count(1) >= 1) return "S12(" + std::to_string(count(1)) + ",1)";
  if (f == Family::S13 && count(3) == 1 && count(1) >= 1) return "S13(" + std::to_string(count(1)) + ",1)";
  if (f == Family::S13 && count(3) == 3 && count(1) >= 1) {
    const int n = count(1);
    if (canonical_key(Jigsaw(families::j_prime_chain(n))) == canonical_key(j)) return "J'+J_" + std::to_string(n);
  }
  return "";
}

inline ClassificationReport classify_group(const JigsawGroup& g, int depth = 1, int budget = 0,
                                           std::optional<Rational> window_start = std::nullopt) {
  const Jigsaw& j = g.jigsaw();
  ClassificationReport r;
  r.family = family_of(j);
  r.member = family_member(j);
  r.key = canonical_key(j);
  r.L = g.length();
  for (const auto& [type, count] : j.signature()) r.signature.emplace_back(type.str(), count);
  for (const auto& b : j.boundary()) r.boundary_labels.push_back(b.label);
  for (const auto& v : j.vertices()) r.jwidths.push_back(v.jwidth);

  if (r.family == Family::NonIntegral) {
    r.note = "verdicts are only given for integral jigsaws";
    return r;
  }
  CuspStrip strip = cusp_strip(g, window_start);
  r.tangency = tangency_pattern(strip);
  r.arithmeticity = arithmeticity_check(g, strip);
  Cover cover = build_cover(g, strip, depth);
  r.cover = cover;
  const bool in_scope = r.family != Family::OtherIntegral;

  const bool arithmetic = r.arithmeticity->arithmetic;
  if (arithmetic) r.verdict = in_scope ? Verdict::Arithmetic : Verdict::Inconclusive;
  if (cover.status == CoverStatus::IntervalGap) {
    if (!arithmetic || !in_scope) r.note = "killer intervals leave a gap";
    return r;
  }
  Reducer reducer(g, cover, strip);
  r.walk_cycle = reducer.walk_cycles();
  bool unknown = false;
  for (const auto& x : cover.uncovered) {
    PointVerdict pv = reducer.reduce(ExtendedRational(x), budget);
    if (pv.kind == PointKind::Special) {
      auto fp = pv.witness.rational_fixed_points();
      r.specials.push_back(SpecialReport{x, pv.witness, fp.points});
    } else if (pv.kind == PointKind::Cusp) {
      r.cusp_points.push_back(x);
    } else {
      unknown = true;
    }
  }
  if (!in_scope) {
    r.note = "jigsaw set outside the supported families";
    return r;
  }
  if (arithmetic) return r;
  if (!r.specials.empty())
    r.verdict = Verdict::NonArithmeticWithSpecials;
  else if (!unknown)
    r.verdict = Verdict::Pseudomodular;
  else
    r.note = "some uncovered point could not be classified within the budget";
  return r;
}

enum class Distinction { Distinct, NotDistinguished };

inline const char* to_string(Distinction d) {
  return d == Distinction::Distinct ? "distinct" : "not-distinguished";
}

/// Compares tangency patterns for groups known to be their own commensurators.
inline Distinction commensurability_distinct(const ClassificationReport& a, const ClassificationReport& b) {
  for (const auto* r : {&a, &b}) {
    if (r->member.empty())
      throw Error(ErrorKind::FamilyOutOfScope, "jigsaw is not of signature (r,1) or of the form J'+J_n");
    if (r->verdict == Verdict::Arithmetic || r->verdict == Verdict::Inconclusive)
      throw Error(ErrorKind::FamilyOutOfScope, "comparison needs non-arithmetic groups");
  }
  return a.tangency == b.tangency ? Distinction::NotDistinguished : Distinction::Distinct;
}

}  // namespace jigsaw
