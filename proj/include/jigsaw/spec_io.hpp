#pragma once

// JSON reading and writing for jigsaw specs, group elements and reports.
// Rationals travel as "num/den" strings, big integers as decimal strings.

#include "jigsaw/classify.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace jigsaw {

using json = nlohmann::ordered_json;

namespace io {

inline json rational(const Rational& q) { return to_string(q); }
inline json integer(const Integer& n) { return n.get_str(); }

inline Rational read_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorKind::Parse, "expected a rational, got " + j.dump());
}

inline Integer read_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer n;
    if (n.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorKind::Parse, "bad integer " + j.dump());
    return n;
  }
  throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

inline json point(const ExtendedRational& x) { return x.is_infinity() ? json("inf") : json(to_string(x.value())); }

inline ExtendedRational read_point(const json& j) {
  if (j.is_string()) return ExtendedRational::parse(j.get<std::string>());
  return ExtendedRational(read_rational(j));
}

inline json element(const GroupElement& g) {
  return json{{"m", json::array({json::array({integer(g.m11()), integer(g.m12())}),
                                 json::array({integer(g.m21()), integer(g.m22())})})},
              {"d", integer(g.d())}};
}

inline GroupElement read_element(const json& j) {
  const json& m = j.at("m");
  return GroupElement::normalize(read_integer(m.at(0).at(0)), read_integer(m.at(0).at(1)), read_integer(m.at(1).at(0)),
                                 read_integer(m.at(1).at(1)), read_integer(j.at("d")));
}

inline json word(const Word& w) { return w.letters(); }

inline Word read_word(const json& j) { return Word(j.get<std::vector<int>>()); }

inline std::vector<Rational> read_rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(read_rational(x));
  return out;
}

template <class T, class F>
json array_of(const std::vector<T>& items, F f) {
  json out = json::array();
  for (const auto& x : items) out.push_back(f(x));
  return out;
}

}  // namespace io

// ---------------------------------------------------------------------------
// Spec files: {"tiles": [...], "gluings": [[tileA, sideA, tileB, sideB], ...]}.
// A tile is six integers k1num,k1den,...,k3num,k3den or one integer n for
// Δ(1, 1/n, n). Tile indices are 0-based, side indices 1-based in the order
// the labels were written.

inline JigsawSpec spec_from_json(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("tiles")) throw Error(ErrorKind::Parse, "spec needs a \"tiles\" array");
    JigsawSpec spec;
    for (const auto& t : doc.at("tiles")) {
      if (t.is_number_integer()) {
        spec.tiles.push_back(TileType::integral(t.get<long>()));
      } else if (t.is_array() && t.size() == 6) {
        std::array<Rational, 3> k;
        for (std::size_t i = 0; i < 3; ++i) {
          const Integer den = io::read_integer(t[2 * i + 1]);
          if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in tile " + t.dump());
          k[i] = make_rational(io::read_integer(t[2 * i]), den);
        }
        spec.tiles.emplace_back(k[0], k[1], k[2]);
      } else {
        throw Error(ErrorKind::Parse, "tile must be an integer n or six integers, got " + t.dump());
      }
    }
    if (doc.contains("gluings")) {
      for (const auto& g : doc.at("gluings")) {
        if (!g.is_array() || g.size() != 4) throw Error(ErrorKind::Parse, "gluing must have four entries: " + g.dump());
        const int ta = g[0].get<int>(), sa = g[1].get<int>(), tb = g[2].get<int>(), sb = g[3].get<int>();
        auto check = [&](int t, int s) {
          if (t < 0 || static_cast<std::size_t>(t) >= spec.tiles.size() || s < 1 || s > 3)
            throw Error(ErrorKind::InvalidArgument, "gluing " + g.dump() + " refers to a missing tile or side");
        };
        check(ta, sa);
        check(tb, sb);
        spec.gluings.push_back(Gluing{ta, spec.tiles[static_cast<std::size_t>(ta)].canonical_side(sa - 1), tb,
                                      spec.tiles[static_cast<std::size_t>(tb)].canonical_side(sb - 1)});
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline JigsawSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return spec_from_json(doc);
}

inline JigsawSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

/// Writes the integral shorthand when every tile allows it.
inline json spec_to_json(const JigsawSpec& spec) {
  const bool integral =
      std::all_of(spec.tiles.begin(), spec.tiles.end(), [](const TileType& t) { return t.is_integral(); });
  json tiles = json::array();
  std::vector<TileType> written;  // the tile as the reader will rebuild it
  for (const auto& t : spec.tiles) {
    if (integral) {
      tiles.push_back(*t.integral_n());
      written.push_back(TileType::integral(*t.integral_n()));
    } else {
      json row = json::array();
      for (const auto& k : t.labels()) {
        row.push_back(io::integer(k.get_num()));
        row.push_back(io::integer(k.get_den()));
      }
      tiles.push_back(row);
      written.emplace_back(t.label(0), t.label(1), t.label(2));
    }
  }
  auto input_side = [&](int tile, int canonical) {
    return (canonical + written[static_cast<std::size_t>(tile)].input_rotation()) % 3 + 1;
  };
  json gluings = json::array();
  for (const auto& g : spec.gluings)
    gluings.push_back({g.tile_a, input_side(g.tile_a, g.side_a), g.tile_b, input_side(g.tile_b, g.side_b)});
  return json{{"tiles", tiles}, {"gluings", gluings}};
}

// ---------------------------------------------------------------------------
// Reports.

inline json killer_to_json(const KillerInterval& k) {
  return json{{"center", io::point(k.center)},
              {"radius", io::rational(k.radius)},
              {"contraction", io::integer(k.contraction)},
              {"witness", io::element(k.witness)},
              {"word", io::word(k.witness_word)}};
}

inline KillerInterval killer_from_json(const json& j) {
  KillerInterval k;
  k.center = io::read_point(j.at("center"));
  k.radius = io::read_rational(j.at("radius"));
  k.contraction = io::read_integer(j.at("contraction"));
  k.witness = io::read_element(j.at("witness"));
  k.witness_word = io::read_word(j.at("word"));
  return k;
}

inline json cover_to_json(const Cover& c) {
  json gaps = json::array();
  for (const auto& [lo, hi] : c.gaps) gaps.push_back({io::rational(lo), io::rational(hi)});
  return json{{"start", io::rational(c.start)},
              {"L", io::rational(c.L)},
              {"status", to_string(c.status)},
              {"depth", c.depth},
              {"intervals", io::array_of(c.intervals, killer_to_json)},
              {"uncovered", io::array_of(c.uncovered, io::rational)},
              {"gaps", gaps}};
}

inline CoverStatus cover_status_from_string(const std::string& s) {
  for (auto st : {CoverStatus::Complete, CoverStatus::PointGaps, CoverStatus::IntervalGap})
    if (s == to_string(st)) return st;
  throw Error(ErrorKind::Parse, "unknown cover status " + s);
}

inline Cover cover_from_json(const json& j) {
  Cover c;
  c.start = io::read_rational(j.at("start"));
  c.L = io::read_rational(j.at("L"));
  c.status = cover_status_from_string(j.at("status").get<std::string>());
  c.depth = j.at("depth").get<int>();
  for (const auto& k : j.at("intervals")) c.intervals.push_back(killer_from_json(k));
  c.uncovered = io::read_rationals(j.at("uncovered"));
  for (const auto& g : j.at("gaps")) c.gaps.emplace_back(io::read_rational(g.at(0)), io::read_rational(g.at(1)));
  return c;
}

inline json traced_to_json(const TracedElement& t) {
  return json{{"name", t.name}, {"element", io::element(t.element)}, {"trace_squared", io::rational(t.trace_squared)}};
}

inline TracedElement traced_from_json(const json& j) {
  return TracedElement{io::read_element(j.at("element")), io::read_rational(j.at("trace_squared")),
                       j.at("name").get<std::string>()};
}

inline json report_to_json(const ClassificationReport& r) {
  json out;
  out["verdict"] = to_string(r.verdict);
  out["family"] = to_string(r.family);
  out["member"] = r.member;
  out["key"] = r.key;
  out["L"] = io::rational(r.L);
  json sig = json::array();
  for (const auto& [type, count] : r.signature) sig.push_back({type, count});
  out["signature"] = sig;
  out["boundary_labels"] = io::array_of(r.boundary_labels, io::rational);
  out["jwidths"] = r.jwidths;
  if (r.arithmeticity) {
    json a;
    a["arithmetic"] = r.arithmeticity->arithmetic;
    a["traces"] = io::array_of(r.arithmeticity->traces, traced_to_json);
    a["witness"] = r.arithmeticity->witness ? traced_to_json(*r.arithmeticity->witness) : json(nullptr);
    out["arithmeticity"] = a;
  } else {
    out["arithmeticity"] = nullptr;
  }
  out["cover"] = r.cover ? cover_to_json(*r.cover) : json(nullptr);
  out["specials"] = io::array_of(r.specials, [](const SpecialReport& s) {
    return json{{"point", io::rational(s.point)},
                {"witness", io::element(s.witness)},
                {"fixed_points", io::array_of(s.fixed_points, io::point)}};
  });
  out["cusp_points"] = io::array_of(r.cusp_points, io::rational);
  out["walk_cycle"] = r.walk_cycle;
  out["tangency"] = io::array_of(r.tangency, [](const TangencyEntry& e) {
    return json{{"gap", io::rational(e.gap)}, {"label", io::rational(e.label)}};
  });
  out["note"] = r.note;
  return out;
}

inline ClassificationReport report_from_json(const json& j) {
  try {
    ClassificationReport r;
    const std::string v = j.at("verdict").get<std::string>();
    bool known = false;
    for (auto cand : {Verdict::Arithmetic, Verdict::Pseudomodular, Verdict::NonArithmeticWithSpecials,
                      Verdict::Inconclusive}) {
      if (v == to_string(cand)) {
        r.verdict = cand;
        known = true;
      }
    }
    if (!known) throw Error(ErrorKind::Parse, "unknown verdict " + v);
    const std::string f = j.at("family").get<std::string>();
    for (auto cand : {Family::Modular, Family::S12, Family::S13, Family::Weierstrass, Family::OtherIntegral,
                      Family::NonIntegral})
      if (f == to_string(cand)) r.family = cand;
    r.member = j.at("member").get<std::string>();
    r.key = j.at("key").get<std::string>();
    r.L = io::read_rational(j.at("L"));
    for (const auto& s : j.at("signature")) r.signature.emplace_back(s.at(0).get<std::string>(), s.at(1).get<int>());
    r.boundary_labels = io::read_rationals(j.at("boundary_labels"));
    r.jwidths = j.at("jwidths").get<std::vector<long>>();
    if (!j.at("arithmeticity").is_null()) {
      const json& a = j.at("arithmeticity");
      ArithmeticityResult ar;
      ar.arithmetic = a.at("arithmetic").get<bool>();
      for (const auto& t : a.at("traces")) ar.traces.push_back(traced_from_json(t));
      if (!a.at("witness").is_null()) ar.witness = traced_from_json(a.at("witness"));
      r.arithmeticity = ar;
    }
    if (!j.at("cover").is_null()) r.cover = cover_from_json(j.at("cover"));
    for (const auto& s : j.at("specials")) {
      SpecialReport sr{io::read_rational(s.at("point")), io::read_element(s.at("witness")), {}};
      for (const auto& p : s.at("fixed_points")) sr.fixed_points.push_back(io::read_point(p));
      r.specials.push_back(std::move(sr));
    }
    r.cusp_points = io::read_rationals(j.at("cusp_points"));
    r.walk_cycle = j.at("walk_cycle").get<bool>();
    for (const auto& e : j.at("tangency"))
      r.tangency.push_back(TangencyEntry{io::read_rational(e.at("gap")), io::read_rational(e.at("label"))});
    r.note = j.at("note").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline json step_to_json(const ReductionStep& s) {
  static const char* names[] = {"translate", "killer", "final", "ray"};
  json out{{"kind", names[static_cast<int>(s.kind)]},
           {"point", io::point(s.point)},
           {"denominator", io::integer(s.denominator)},
           {"applied", io::element(s.applied)}};
  if (s.center) out["center"] = io::rational(*s.center);
  if (s.radius) out["radius"] = io::rational(*s.radius);
  return out;
}

inline json verdict_to_json(const ExtendedRational& x, const PointVerdict& v) {
  json out;
  out["point"] = io::point(x);
  out["verdict"] = to_string(v.kind);
  out["budget"] = v.budget;
  out["steps"] = io::array_of(v.steps, step_to_json);
  if (v.kind == PointKind::Cusp) {
    out["word"] = io::word(v.word);
    out["element"] = io::element(v.element);
  }
  if (v.kind == PointKind::Special) {
    out["witness"] = io::element(v.witness);
    out["witness_word"] = io::word(v.witness_word);
    out["fixed_points"] = io::array_of(v.witness.rational_fixed_points().points, io::point);
  }
  return out;
}

}  // namespace jigsaw
