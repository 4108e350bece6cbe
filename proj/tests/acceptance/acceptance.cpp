// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "jigsaw/arith.hpp"
#include "jigsaw/classify.hpp"
#include "jigsaw/cuspset.hpp"
#include "jigsaw/develop.hpp"
#include "jigsaw/families.hpp"
#include "jigsaw/jigsaw.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace jigsaw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) msg_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + msg_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream msg_;
};

const TileType D1 = TileType::integral(1);
const TileType D2 = TileType::integral(2);
const TileType D3 = TileType::integral(3);

ExtendedRational X(const Rational& q) { return ExtendedRational(q); }

Rational sum_formula(const Jigsaw& j) {
  long L = 0;
  for (const auto& [type, count] : j.signature()) L += count * (2 + *type.integral_n());
  return Rational(L);
}

std::vector<Rational> rationals_in(const Rational& lo, const Rational& hi, long max_den) {
  std::vector<Rational> out;
  for (long q = 1; q <= max_den; ++q) {
    const Rational scaled = lo * q;
    for (Integer p = scaled.get_num() / scaled.get_den() - 1;; ++p) {
      Rational x(p, q);
      x.canonicalize();
      if (x > hi) break;
      if (x >= lo && x.get_den() == q) out.push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome weierstrass_reproduction() {
  Check c;
  JigsawGroup g = weierstrass(1, Rational(1, 3), 3);
  c.expect(g.length() == 5, "L = " + to_string(g.length()));
  CuspStrip strip = cusp_strip(g, Rational(-2));
  std::vector<Rational> feet;
  for (const auto& v : strip.sides) feet.push_back(v.foot);
  c.expect(feet == std::vector<Rational>{-2, -1, 0, 3}, "vertical sides differ");
  Cover cover = build_cover(g, strip);
  std::set<std::pair<Rational, Rational>> intervals;
  for (const auto& k : cover.intervals) intervals.insert({k.lo(), k.hi()});
  const std::set<std::pair<Rational, Rational>> want{{-3, -1}, {-2, 0}, {-1, 1}, {1, 2}, {2, 4}};
  c.expect(intervals == want, "killer intervals differ");
  c.expect(cover.uncovered == std::vector<Rational>{1, 2}, "uncovered points differ");
  Reducer r(g, cover, strip);
  const GroupElement B = GroupElement::normalize(7, -6, -2, 3, 9);
  for (const Rational& x : {Rational(1), Rational(2)}) {
    PointVerdict v = r.reduce(X(x));
    c.expect(v.kind == PointKind::Special, to_string(x) + " is not special");
    if (v.kind != PointKind::Special) continue;
    c.expect(v.witness.is_hyperbolic() && v.witness.apply(X(x)) == X(x), "bad witness for " + to_string(x));
    c.expect(g.evaluate(v.witness_word) == v.witness, "witness word does not evaluate to the witness");
    if (x == 1) {
      c.expect(v.witness == B || v.witness == B.inverse(), "witness for 1 is " + v.witness.str());
      c.expect(v.witness.rational_fixed_points().points == std::vector<ExtendedRational>{X(-3), X(1)},
               "fixed points of the witness for 1");
    }
  }
  return c.done("L=5, sides -2,-1,0,3, five killer intervals, specials {1,2}, witness " + B.str());
}

Outcome group_relation() {
  Check c;
  int count = 0;
  for (const auto& set : {std::vector<TileType>{D1, D2}, std::vector<TileType>{D1, D3}}) {
    for (const auto& j : census(set, 6)) {
      JigsawGroup g{j};
      GroupElement prod;
      for (int i = g.rank() - 1; i >= 0; --i) prod = prod * g.generator(i);
      const Rational L = sum_formula(j);
      c.expect(g.length() == L && prod == GroupElement::translation(L), canonical_key(j));
      ++count;
    }
  }
  return c.done(std::to_string(count) + " census jigsaws satisfy i_{N+1}...i_0 = T^L");
}

Outcome s12_pseudomodular() {
  Check c;
  int count = 0;
  for (const auto& j : census({D1, D2}, 6)) {
    JigsawGroup g{j};
    ClassificationReport rep = classify_group(g);
    const std::string key = canonical_key(j);
    c.expect(rep.verdict == Verdict::Pseudomodular, key + " is " + to_string(rep.verdict));
    c.expect(rep.cover && rep.cover->status == CoverStatus::Complete, key + " cover is not complete");
    c.expect(rep.arithmeticity && !rep.arithmeticity->arithmetic, key + " passes the trace test");
    Reducer r(g, *rep.cover, cusp_strip(g));
    const long span = 3 * g.length().get_num().get_si() * 1000;
    for (int i = 0; i < 200; ++i) {
      const Rational x = oracle::random_rational(1000, span);
      PointVerdict v = r.reduce(X(x));
      c.expect(v.kind == PointKind::Cusp, key + ": " + to_string(x) + " not reduced");
      c.expect(g.evaluate(v.word) == v.element && oracle::act(v.element, X(x)).is_infinity(),
               key + ": bad word for " + to_string(x));
    }
    ++count;
  }
  return c.done(std::to_string(count) + " S(1,2) jigsaws pseudomodular, 200 rationals each reduced to cusps");
}

Outcome s13_trichotomy() {
  Check c;
  {
    JigsawGroup g{Jigsaw(families::j_a())};
    ClassificationReport rep = classify_group(g);
    c.expect(rep.verdict == Verdict::Arithmetic, "J_A is " + std::string(to_string(rep.verdict)));
    const auto& traces = rep.arithmeticity->traces;
    c.expect(traces.size() == 5, "J_A has " + std::to_string(traces.size()) + " Gamma2 generators");
    for (const auto& t : traces) c.expect(t.trace_squared.get_den() == 1, "J_A " + t.name + " trace^2 not integral");
  }
  {
    ClassificationReport rep = classify_group(JigsawGroup{Jigsaw(families::two_j_a())});
    c.expect(rep.verdict == Verdict::Arithmetic, "two J_A is " + std::string(to_string(rep.verdict)));
  }
  for (int n = 0; n <= 3; ++n) {
    JigsawGroup g{Jigsaw(n == 0 ? families::j_prime() : families::j_prime_chain(n))};
    ClassificationReport rep = classify_group(g);
    const std::string name = "J'+J_" + std::to_string(n);
    c.expect(rep.verdict == Verdict::NonArithmeticWithSpecials, name + " is " + to_string(rep.verdict));
    for (const auto& s : rep.specials)
      c.expect(s.witness.is_hyperbolic() && s.witness.apply(X(s.point)) == X(s.point), name + " witness");
  }
  int arithmetic = 0, pseudo = 0;
  for (const auto& j : census({D1, D3}, 5)) {
    bool attached = true;
    for (int t = 0; t < j.size(); ++t) {
      if (j.tile(t) != D3) continue;
      SideRef p = j.partner(t, 0);  // the label-1 side
      attached = attached && p.valid() && j.tile(p.tile) == D1;
    }
    if (!attached) continue;
    ClassificationReport rep = classify_group(JigsawGroup{j});
    // Block-decomposable jigsaws (J_A and its gluings) are arithmetic; the rest pseudomodular.
    const bool blocks = s13_block_decomposition(j).decomposable;
    const Verdict want = blocks ? Verdict::Arithmetic : Verdict::Pseudomodular;
    c.expect(rep.verdict == want, canonical_key(j) + " is " + to_string(rep.verdict));
    (blocks ? arithmetic : pseudo)++;
  }
  return c.done("J_A, 2J_A arithmetic; J'+J_n (n<=3) specials; census: " + std::to_string(pseudo) +
                " pseudomodular, " + std::to_string(arithmetic) + " block-decomposable arithmetic");
}

Outcome parity_table() {
  Check c;
  auto rot = [](long m, long n) { return GroupElement::normalize(m, -(m * m + n), 1, -m, n); };
  const std::vector<std::pair<long, long>> pairs{{2, 1}, {2, 2}, {3, 1}, {3, 3}};
  int checked = 0;
  for (const auto& [nj, nk] : pairs) {
    for (long mk = -3; mk <= 3; ++mk) {
      for (long delta = -12; delta <= 12; ++delta) {
        const long mj = mk + delta;
        const Rational t2 = (rot(mj, nj) * rot(mk, nk)).trace_squared();
        const long s = delta * delta + nj + nk;
        Rational want(s * s, nj * nk);
        want.canonicalize();
        c.expect(t2 == want, "types (" + std::to_string(nj) + "," + std::to_string(nk) + ") delta " +
                                 std::to_string(delta) + ": " + to_string(t2));
        ++checked;
      }
    }
  }
  // The same values on rotations read off actual cusp strips (and their translates).
  for (const auto& spec : {families::chain_with_one(1, 2), families::chain_with_one(2, 2), families::j_prime(),
                           families::j_a()}) {
    JigsawGroup g{Jigsaw(spec)};
    CuspStrip strip = cusp_strip(g);
    std::vector<std::pair<VerticalSide, long>> sides;
    for (int shift = -1; shift <= 1; ++shift) {
      const GroupElement T = GroupElement::translation(Rational(strip.L * shift));
      for (const auto& v : strip.sides) {
        VerticalSide w = v;
        w.foot += strip.L * shift;
        w.rotation = T * v.rotation * T.inverse();
        const long n = v.label >= 1 ? v.label.get_num().get_si() : v.label.get_den().get_si();
        sides.emplace_back(w, n);
      }
    }
    for (const auto& [a, na] : sides) {
      for (const auto& [b, nb] : sides) {
        const Rational d = a.foot - b.foot;
        if (abs(d) > 12) continue;
        const long delta = d.get_num().get_si();
        const long s = delta * delta + na + nb;
        Rational want(s * s, na * nb);
        want.canonicalize();
        c.expect((a.rotation * b.rotation).trace_squared() == want, "strip rotations at " + to_string(a.foot) +
                                                                       ", " + to_string(b.foot));
        c.expect(a.rotation == rot(a.foot.get_num().get_si(), na), "rotation at " + to_string(a.foot));
        ++checked;
      }
    }
  }
  return c.done(std::to_string(checked) + " trace^2 identities for |m_j - m_k| <= 12");
}

Outcome killer_property() {
  Check c;
  std::vector<JigsawGroup> groups{JigsawGroup{Jigsaw(families::j_a())}, JigsawGroup{Jigsaw(families::chain_with_one(2, 2))},
                                  weierstrass(1, Rational(1, 3), 3), JigsawGroup{Jigsaw(families::j_prime_chain(1))}};
  int done = 0;
  while (done < 500) {
    const JigsawGroup& g = groups[static_cast<std::size_t>(props::uniform(0, 3))];
    GroupElement e;
    const long len = props::uniform(1, 14);
    for (long i = 0; i < len; ++i) e = e * g.generator(static_cast<int>(props::uniform(0, g.rank() - 1)));
    if (e.m21() == 0 || abs(e.m21()) > 100000) continue;
    KillerInterval k = killer_interval(e);
    const Integer c21 = abs(e.m21());
    const long q = props::uniform(2 * c21.get_si(), 1000000);
    // p with |p*m21 - m11*q| < q, i.e. p/q strictly inside the interval
    const Rational center_q = k.center_value() * q;
    const Integer base = center_q.get_num() / center_q.get_den();
    const long w = q / c21.get_si();
    Rational x(base + props::uniform(-w, w), q);
    x.canonicalize();
    if (!k.contains(x)) continue;
    const ExtendedRational y = oracle::act(e.inverse(), X(x));
    c.expect(y.is_infinity() || y.den() < x.get_den(), e.str() + " at " + to_string(x));
    ++done;
  }
  return c.done("500 random (g, p/q) with q <= 10^6: denominators strictly decrease");
}

Outcome commensurability() {
  Check c;
  std::vector<ClassificationReport> s12;
  for (int r = 1; r <= 5; ++r) {
    ClassificationReport rep = classify_group(JigsawGroup{Jigsaw(families::chain_with_one(r, 2))});
    std::vector<Rational> gaps;
    for (const auto& e : rep.tangency) gaps.push_back(e.gap);
    c.expect(gaps == std::vector<Rational>{2, Rational(3 * r + 2)}, "S12(" + std::to_string(r) + ",1) gaps");
    s12.push_back(std::move(rep));
  }
  std::vector<ClassificationReport> jp;
  for (int n = 1; n <= 3; ++n) jp.push_back(classify_group(JigsawGroup{Jigsaw(families::j_prime_chain(n))}));
  int pairs = 0;
  for (const auto* family : {&s12, &jp}) {
    for (std::size_t a = 0; a < family->size(); ++a)
      for (std::size_t b = a + 1; b < family->size(); ++b) {
        try {
          c.expect(commensurability_distinct((*family)[a], (*family)[b]) == Distinction::Distinct,
                   (*family)[a].member + " vs " + (*family)[b].member);
        } catch (const Error& e) {
          c.expect(false, e.what());
        }
        ++pairs;
      }
  }
  return c.done(std::to_string(pairs) + " pairs distinct; S12(r,1) gaps (2, 3r+2)");
}

Outcome orbit_oracle() {
  Check c;
  JigsawGroup g{Jigsaw(families::two_modular())};
  Cover cover = build_cover(g);
  Reducer r(g, cover, cusp_strip(g));
  const Rational lo(0), hi(1);
  std::set<Rational> reduced;
  for (const Rational& x : rationals_in(lo, hi, 20)) {
    PointVerdict v = r.reduce(X(x));
    if (v.kind == PointKind::Cusp && v.element.apply(X(x)).is_infinity()) reduced.insert(x);
  }
  std::set<Rational> orbit;
  for (const auto& y : oracle::orbit_of_infinity(g.generators(), 10))
    if (!y.is_infinity() && y.den() <= 20 && lo <= y.value() && y.value() <= hi) orbit.insert(y.value());
  std::string missing;
  long agree_up_to = 20;
  for (const auto& x : reduced) {
    if (orbit.count(x)) continue;
    missing += (missing.empty() ? "" : " ") + to_string(x);
    agree_up_to = std::min(agree_up_to, x.get_den().get_si() - 1);
  }
  c.expect(reduced == orbit, std::to_string(reduced.size()) + " cusps reduced, " + std::to_string(orbit.size()) +
                                 " reached by words of length <= 10; the sets agree up to denominator " +
                                 std::to_string(agree_up_to) + "; unreached: " + missing);
  return c.done(std::to_string(orbit.size()) + " cusps in [0,1] with denominator <= 20 agree");
}

Outcome property_suites() {
  Check c;
  for (const auto& [name, result] :
       std::vector<std::pair<std::string, std::string>>{
           {"normalization", props::normalization_idempotent(500)},
           {"homomorphism", props::mobius_homomorphism(500)},
           {"involutions", props::involution_identities(100)},
           {"census {1}", props::census_complete({D1}, 4)},
           {"census {1,2}", props::census_complete({D1, D2}, 4)},
           {"census {1,3}", props::census_complete({D1, D3}, 4)}})
    c.expect(result.empty(), name + ": " + result);
  return c.done("normalization, homomorphism, involution identities, census vs brute force (size <= 4)");
}

}  // namespace

int main(int argc, char** argv) {
  // --allow-fail N: report criterion N as usual but do not let it decide the exit status.
  std::set<std::size_t> allowed;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--allow-fail") allowed.insert(static_cast<std::size_t>(std::stoul(argv[++i])));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Weierstrass (1,1/3,3) reproduction", weierstrass_reproduction},
      {"group relation over census", group_relation},
      {"S(1,2) census pseudomodular", s12_pseudomodular},
      {"S(1,3) trichotomy", s13_trichotomy},
      {"trace^2 parity table", parity_table},
      {"killer-interval contraction", killer_property},
      {"commensurability invariants", commensurability},
      {"orbit oracle equivalence", orbit_oracle},
      {"property suites", property_suites},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && (o.pass || allowed.count(i + 1));
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " -- " << o.detail << " ("
              << static_cast<int>(secs * 1000) << " ms)" << std::endl;
  }
  return all ? 0 : 1;
}
