#pragma once

// Killer intervals, covers of a fundamental interval, reduction of rationals
// to ∞, and the group-level verdict.

#include "jigsaw/develop.hpp"
#include "jigsaw/exact.hpp"
#include "jigsaw/jigsaw.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace jigsaw {

struct KillerInterval {
  ExtendedRational center;
  Rational radius;
  Integer contraction;
  GroupElement witness;  // witness(∞) = center
  Word witness_word;

  Rational center_value() const { return center.value(); }
  Rational lo() const { return center.value() - radius; }
  Rational hi() const { return center.value() + radius; }
  bool contains(const Rational& x) const { return lo() < x && x < hi(); }
};

inline KillerInterval killer_interval(const GroupElement& g, Word word = {}) {
  if (g.m21() == 0) throw Error(ErrorKind::FixesInfinity, g.str() + " fixes ∞");
  KillerInterval k;
  k.center = ExtendedRational(g.m11(), g.m21());
  k.contraction = gcd(g.m11(), g.m21());
  k.radius = make_rational(Integer(1), Integer(abs(g.m21())));
  k.witness = g;
  k.witness_word = std::move(word);
  return k;
}

/// Killer interval of T^n g T^{-n}.
inline KillerInterval shift_killer(const GroupElement& g, const Rational& n) {
  return killer_interval(GroupElement::translation(n) * g * GroupElement::translation(Rational(-n)));
}

enum class CoverStatus { Complete, PointGaps, IntervalGap };

inline const char* to_string(CoverStatus s) {
  switch (s) {
    case CoverStatus::Complete: return "complete";
    case CoverStatus::PointGaps: return "point-gaps";
    case CoverStatus::IntervalGap: return "interval-gap";
  }
  return "?";
}

struct Cover {
  Rational start;
  Rational L;
  std::vector<KillerInterval> intervals;  // centers in [start, start + L]
  std::vector<Rational> uncovered;        // isolated points in [start, start + L)
  std::vector<std::pair<Rational, Rational>> gaps;  // closed gaps of positive length
  CoverStatus status = CoverStatus::Complete;
  int depth = 0;

  Rational end() const { return start + L; }
};

namespace detail {

struct Span {
  Rational lo;
  Rational hi;
};

inline void add_interval(std::vector<KillerInterval>& list, KillerInterval k) {
  for (auto& existing : list) {
    if (existing.center == k.center) {
      if (k.radius > existing.radius) existing = std::move(k);
      return;
    }
  }
  list.push_back(std::move(k));
}

/// Uncovered points and gaps of the union of the open intervals (with their
/// ±L translates) inside [start, start + L].
inline void sweep(Cover& cover) {
  std::vector<Span> spans;
  for (const auto& k : cover.intervals) {
    for (int shift = -1; shift <= 1; ++shift) {
      Rational off = cover.L * shift;
      spans.push_back(Span{k.lo() + off, k.hi() + off});
    }
  }
  std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) { return x.lo < y.lo; });
  std::vector<Span> merged;  // disjoint open components
  for (const auto& s : spans) {
    if (!merged.empty() && s.lo < merged.back().hi) {
      if (s.hi > merged.back().hi) merged.back().hi = s.hi;
    } else {
      merged.push_back(s);
    }
  }
  const Rational a = cover.start;
  const Rational b = cover.end();
  cover.uncovered.clear();
  cover.gaps.clear();
  // The complement is a union of closed pieces between consecutive components.
  auto piece = [&](const std::optional<Rational>& p, const std::optional<Rational>& q) {
    Rational lo = p && *p > a ? *p : a;
    Rational hi = q && *q < b ? *q : b;
    if (lo > hi) return;
    if (lo == hi) {
      Rational x = lo == b ? a : lo;
      if (std::find(cover.uncovered.begin(), cover.uncovered.end(), x) == cover.uncovered.end())
        cover.uncovered.push_back(x);
    } else {
      cover.gaps.emplace_back(lo, hi);
    }
  };
  if (merged.empty()) {
    piece(std::nullopt, std::nullopt);
  } else {
    piece(std::nullopt, merged.front().lo);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) piece(merged[i].hi, merged[i + 1].lo);
    piece(merged.back().hi, std::nullopt);
  }
  std::sort(cover.uncovered.begin(), cover.uncovered.end());
  cover.status = !cover.gaps.empty() ? CoverStatus::IntervalGap
                 : !cover.uncovered.empty() ? CoverStatus::PointGaps
                                            : CoverStatus::Complete;
}

inline bool in_window(const Cover& c, const Rational& x) { return c.start <= x && x <= c.end(); }

}  // namespace detail

/// Killer intervals about the feet of the vertical sides and about the middle
/// cusps below wide strip triangles; `depth` > 1 adds the vertices of further
/// developing levels while an interval gap remains.
inline Cover build_cover(const JigsawGroup& g, const CuspStrip& strip, int depth = 1) {
  Cover cover;
  cover.start = strip.start;
  cover.L = strip.L;
  const bool integral = g.jigsaw().is_integral();
  for (const auto& v : strip.sides) {
    KillerInterval k = killer_interval(v.witness, v.witness_word);
    if (integral && k.contraction != 1)
      throw Error(ErrorKind::InvalidArgument,
                  "cusp " + to_string(v.foot) + " has contraction " + k.contraction.get_str() + ", expected 1");
    detail::add_interval(cover.intervals, std::move(k));
  }

  // Developed tiles just below the strip, for the next level.
  std::vector<DevelopedTile> frontier;
  std::vector<int> entry;
  for (const auto& t : strip.triangles) {
    auto [below, e] = neighbor(g, t.tile, t.bottom_side());
    const int apex = prev_side(e);  // corner opposite the entry side
    if (t.width() > 1 || !integral) {
      const ExtendedRational x = below.vertex(apex);
      if (!x.is_infinity() && detail::in_window(cover, x.value())) {
        auto [w, word] = cusp_witness(g, below, apex);
        detail::add_interval(cover.intervals, killer_interval(w, std::move(word)));
      }
    }
    frontier.push_back(std::move(below));
    entry.push_back(e);
  }
  cover.depth = 1;
  detail::sweep(cover);

  while (cover.status == CoverStatus::IntervalGap && cover.depth < depth) {
    std::vector<DevelopedTile> next;
    std::vector<int> next_entry;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const DevelopedTile& d = frontier[i];
      const int apex = prev_side(entry[i]);
      const ExtendedRational x = d.vertex(apex);
      if (!x.is_infinity() && detail::in_window(cover, x.value())) {
        auto [w, word] = cusp_witness(g, d, apex);
        detail::add_interval(cover.intervals, killer_interval(w, std::move(word)));
      }
      for (int s : {next_side(entry[i]), prev_side(entry[i])}) {
        auto [child, e] = neighbor(g, d, s);
        next.push_back(std::move(child));
        next_entry.push_back(e);
      }
    }
    frontier = std::move(next);
    entry = std::move(next_entry);
    ++cover.depth;
    detail::sweep(cover);
  }
  std::sort(cover.intervals.begin(), cover.intervals.end(),
            [](const KillerInterval& a, const KillerInterval& b) { return a.center < b.center; });
  return cover;
}

inline Cover build_cover(const JigsawGroup& g, int depth = 1) { return build_cover(g, cusp_strip(g), depth); }

// ---------------------------------------------------------------------------
// Point reduction.

enum class PointKind { Cusp, Special, Unknown };

inline const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::Cusp: return "cusp";
    case PointKind::Special: return "special";
    case PointKind::Unknown: return "unknown";
  }
  return "?";
}

struct ReductionStep {
  enum class Kind { Translate, Killer, Final, Ray } kind;
  ExtendedRational point;  // before the step
  Integer denominator;
  GroupElement applied;    // element applied to the point
  std::optional<Rational> center;  // killer interval used
  std::optional<Rational> radius;
};

struct PointVerdict {
  PointKind kind = PointKind::Unknown;
  Word word;              // Cusp: word(x) = ∞
  GroupElement element;   // evaluation of word
  GroupElement witness;   // Special: hyperbolic, fixes x
  Word witness_word;
  std::vector<ReductionStep> steps;
  int budget = 0;
};

/// Family of a jigsaw as far as classification is concerned.
enum class Family { Modular, S12, S13, Weierstrass, OtherIntegral, NonIntegral };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Modular: return "modular";
    case Family::S12: return "S(1,2)";
    case Family::S13: return "S(1,3)";
    case Family::Weierstrass: return "weierstrass";
    case Family::OtherIntegral: return "other-integral";
    case Family::NonIntegral: return "non-integral";
  }
  return "?";
}

inline Family family_of(const Jigsaw& j) {
  if (!j.is_integral()) return Family::NonIntegral;
  if (j.size() == 1) return Family::Weierstrass;
  bool has2 = false, has3 = false, other = false;
  for (const auto& t : j.tiles()) {
    const long n = *t.integral_n();
    has2 |= n == 2;
    has3 |= n == 3;
    other |= n > 3;
  }
  if (other || (has2 && has3)) return Family::OtherIntegral;
  if (has2) return Family::S12;
  if (has3) return Family::S13;
  return Family::Modular;
}

/// Whether the period-(3,1,1/3,1) walk applies to the jigsaw.
inline bool walk_applies(const Jigsaw& j) {
  const Family f = family_of(j);
  return f == Family::S13 || (f == Family::Weierstrass && j.tile(0).integral_n() == 3L);
}

/// Precomputed data shared by many reductions.
class Reducer {
 public:
  Reducer(const JigsawGroup& g, Cover cover, CuspStrip strip)
      : g_(g), cover_(std::move(cover)), strip_(std::move(strip)) {
    for (const auto& k : cover_.intervals) {
      for (int s = -1; s <= 1; ++s) {
        auto [h, hw] = shifted(k, s);
        const Rational c = k.center_value() + cover_.L * s;
        killers_.push_back(Killer{c, Rational(c - k.radius), Rational(c + k.radius), k.radius, h.inverse(), hw.inverse()});
      }
    }
    if (walk_applies(g_.jigsaw())) {
      const Jigsaw& j = g_.jigsaw();
      for (const auto& s : walk_start_states(j)) {
        auto r = special_walk(j, s, walk_state_bound(j));
        if (!r.cycles) continue;
        cycles_found_ = true;
        for (auto& sp : special_endpoints(g_, r.cycle, strip_)) {
          bool dup = std::any_of(specials_.begin(), specials_.end(),
                                 [&](const SpecialPoint& o) { return o.point == sp.point; });
          if (!dup) specials_.push_back(std::move(sp));
        }
      }
    }
  }

  const Cover& cover() const { return cover_; }
  const std::vector<SpecialPoint>& walk_specials() const { return specials_; }
  bool walk_cycles() const { return cycles_found_; }

  static int default_budget(const ExtendedRational& x) {
    const auto bits = static_cast<int>(bit_length(x.den()));
    return std::max(64, 10 * bits);
  }

  PointVerdict reduce(const ExtendedRational& x0, int budget = 0) const {
    PointVerdict out;
    out.budget = budget > 0 ? budget : default_budget(x0);
    ExtendedRational x = x0;
    GroupElement acc;  // acc(x0) = x
    Word acc_word;
    const Rational& L = cover_.L;
    auto apply = [&](const GroupElement& e, const Word& w, ReductionStep step) {
      step.point = x;
      step.denominator = x.den();
      step.applied = e;
      out.steps.push_back(std::move(step));
      x = e.apply(x);
      acc = e * acc;
      acc_word = w * acc_word;
    };
    auto finish_cusp = [&]() {
      out.kind = PointKind::Cusp;
      out.word = acc_word;
      out.element = acc;
    };
    auto finish_special = [&](const GroupElement& h, const Word& hw) {
      out.kind = PointKind::Special;
      out.witness = acc.inverse() * h * acc;
      out.witness_word = acc_word.inverse() * hw * acc_word;
    };

    int killer_steps = 0;
    while (true) {
      if (x.is_infinity()) {
        finish_cusp();
        return out;
      }
      // Translate into [start, start + L).
      Rational rel = (x.value() - cover_.start) / L;
      Integer t = rel.get_num() / rel.get_den();
      if (rel < 0 && Rational(t) != rel) t -= 1;
      if (t != 0) {
        Rational shift = -Rational(t) * L;
        apply(GroupElement::translation(shift), g_.translation_word(-t.get_si()),
              ReductionStep{ReductionStep::Kind::Translate, {}, {}, {}, {}, {}});
      }
      const Rational xv = x.value();

      // A cusp center (or its translate) finishes the reduction.
      for (const auto& k : killers_) {
        if (k.center != xv) continue;
        apply(k.inverse, k.inverse_word, ReductionStep{ReductionStep::Kind::Final, {}, {}, {}, k.center, k.radius});
        finish_cusp();
        return out;
      }

      if (killer_steps >= out.budget) {
        out.kind = PointKind::Unknown;
        return out;
      }

      // Best killer interval: smallest resulting denominator.
      const Killer* best = nullptr;
      Integer best_den;
      for (const auto& k : killers_) {
        if (!(k.lo < xv && xv < k.hi)) continue;
        const Integer den = abs(k.inverse.m21() * x.num() + k.inverse.m22() * x.den()) /
                            gcd(k.inverse.m11() * x.num() + k.inverse.m12() * x.den(),
                                k.inverse.m21() * x.num() + k.inverse.m22() * x.den());
        if (best == nullptr || den < best_den) {
          best = &k;
          best_den = den;
        }
      }
      if (best != nullptr) {
        const Integer before = x.den();
        apply(best->inverse, best->inverse_word,
              ReductionStep{ReductionStep::Kind::Killer, {}, {}, {}, best->center, best->radius});
        if (!(x.den() < before))
          throw Error(ErrorKind::InvalidArgument, "killer step did not reduce the denominator");
        ++killer_steps;
        continue;
      }

      // Uncovered point.
      if (auto sp = walk_special(xv)) {
        finish_special(sp->first, sp->second);
        out.steps.push_back(ReductionStep{ReductionStep::Kind::Final, x, x.den(), sp->first, {}, {}});
        return out;
      }
      RayTrace ray = trace_ray(g_, ray_start(g_, strip_, xv), x, out.budget * 8);
      if (ray.outcome == RayOutcome::ReachedVertex) {
        auto [w, ww] = cusp_witness(g_, ray.last, ray.corner);
        apply(w.inverse(), ww.inverse(), ReductionStep{ReductionStep::Kind::Ray, {}, {}, {}, {}, {}});
        finish_cusp();
        return out;
      }
      if (ray.outcome == RayOutcome::StateRepeat) {
        finish_special(ray.holonomy, ray.holonomy_word);
        out.steps.push_back(ReductionStep{ReductionStep::Kind::Ray, x, x.den(), ray.holonomy, {}, {}});
        return out;
      }
      out.kind = PointKind::Unknown;
      return out;
    }
  }

 private:
  struct Killer {
    Rational center;
    Rational lo;
    Rational hi;
    Rational radius;
    GroupElement inverse;  // sends the center to ∞
    Word inverse_word;
  };

  /// T^{sL} k.witness T^{-sL} with its word.
  std::pair<GroupElement, Word> shifted(const KillerInterval& k, int s) const {
    if (s == 0) return {k.witness, k.witness_word};
    GroupElement T = GroupElement::translation(Rational(cover_.L * s));
    Word tw = g_.translation_word(s);
    return {T * k.witness * T.inverse(), tw * k.witness_word * tw.inverse()};
  }

  std::optional<std::pair<GroupElement, Word>> walk_special(const Rational& x) const {
    for (const auto& sp : specials_) {
      Rational rel = (x - sp.point) / cover_.L;
      if (rel.get_den() != 1) continue;
      const long t = rel.get_num().get_si();
      if (t == 0) return std::make_pair(sp.witness, sp.witness_word);
      GroupElement T = GroupElement::translation(Rational(cover_.L * t));
      Word tw = g_.translation_word(t);
      return std::make_pair(T * sp.witness * T.inverse(), tw * sp.witness_word * tw.inverse());
    }
    return std::nullopt;
  }

  const JigsawGroup& g_;
  Cover cover_;
  CuspStrip strip_;
  std::vector<Killer> killers_;  // cover intervals and their translates by ±L
  std::vector<SpecialPoint> specials_;
  bool cycles_found_ = false;
};

inline PointVerdict reduce_point(const JigsawGroup& g, const Cover& cover, const ExtendedRational& x,
                                 int budget = 0) {
  Reducer r(g, cover, cusp_strip(g, cover.start));
  return r.reduce(x, budget);
}

}  // namespace jigsaw
