// jigsaw: command-line front end.
//
//   jigsaw classify <spec.json>
//   jigsaw reduce   <spec.json> <p/q>
//   jigsaw census   <set> <maxSize>
//   jigsaw svg      <spec.json> --window a b --depth d
//
// Exit codes: 0 ok, 1 parse error, 2 invalid jigsaw, 3 inconclusive.

#include "jigsaw/classify.hpp"
#include "jigsaw/spec_io.hpp"
#include "jigsaw/svg.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace jigsaw;

enum Exit { kOk = 0, kParse = 1, kInvalid = 2, kInconclusive = 3 };

struct Common {
  std::vector<std::string> weierstrass;
  int depth = 1;
  int budget = 0;
  std::string start;
  bool timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--weierstrass", c.weierstrass, "Use the single tile D(k1,k2,k3) instead of a spec file")
      ->expected(3);
  cmd->add_option("--depth", c.depth, "Extra developing levels for the killer-interval cover")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--budget", c.budget, "Killer steps allowed per point (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--start", c.start, "Left end of the fundamental window (default v1 - L)");
  cmd->add_flag("--timing", c.timing, "Include wall-clock timing in the output");
}

JigsawGroup load_group(const Common& c, const std::optional<std::string>& path) {
  if (!c.weierstrass.empty()) {
    return weierstrass(parse_rational(c.weierstrass[0]), parse_rational(c.weierstrass[1]),
                       parse_rational(c.weierstrass[2]));
  }
  if (!path) throw Error(ErrorKind::Parse, "a spec file is required unless --weierstrass is given");
  return JigsawGroup(Jigsaw(load_spec(*path)));
}

std::optional<Rational> window_start(const Common& c) {
  if (c.start.empty()) return std::nullopt;
  return parse_rational(c.start);
}

ClassificationReport classify_with(const JigsawGroup& g, const Common& c) {
  return classify_group(g, c.depth, c.budget, window_start(c));
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse: return kParse;
    default: return kInvalid;
  }
}

std::string fixed_points_text(const GroupElement& w) {
  std::string s;
  for (const auto& p : w.rational_fixed_points().points) {
    if (!s.empty()) s += ", ";
    s += p.is_infinity() ? "inf" : to_string(p.value());
  }
  return s;
}

std::string step_text(const ReductionStep& s) {
  static const char* names[] = {"translate", "killer", "final", "ray"};
  std::ostringstream os;
  os << names[static_cast<int>(s.kind)] << "  x = " << (s.point.is_infinity() ? "inf" : to_string(s.point.value()))
     << "  den = " << s.denominator;
  if (s.center) os << "  interval = (" << to_string(*s.center - *s.radius) << ", " << to_string(*s.center + *s.radius) << ")";
  os << "  apply " << s.applied.str();
  return os.str();
}

std::vector<TileType> parse_set(const std::string& text) {
  std::vector<TileType> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long n = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(TileType::integral(n));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "set entries must be integers n for D(1,1/n,n), got '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty tile set");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic jigsaw groups: cusps, specials and arithmeticity"};
  app.require_subcommand(1);

  Common common;
  std::string spec_path;
  std::vector<std::string> reduce_args;
  bool reduce_json = false;
  std::string set_text;
  int max_size = 0;
  bool census_json = false;
  std::vector<std::string> window;
  std::string svg_out;

  auto* classify = app.add_subcommand("classify", "Classify the group of a jigsaw");
  classify->add_option("spec", spec_path, "Jigsaw spec (JSON)");
  add_common(classify, common);

  auto* reduce = app.add_subcommand("reduce", "Reduce a rational to a cusp or a special");
  reduce->add_option("args", reduce_args, "[spec.json] p/q")->required();
  reduce->add_flag("--json", reduce_json, "Print the trace as JSON");
  add_common(reduce, common);

  auto* census_cmd = app.add_subcommand("census", "Classify every jigsaw over a tile set up to a size");
  census_cmd->add_option("set", set_text, "Comma-separated n values, e.g. 1,3")->required();
  census_cmd->add_option("max_size", max_size, "Largest jigsaw size")->required()->check(CLI::PositiveNumber);
  census_cmd->add_flag("--json", census_json, "Print rows as JSON");
  add_common(census_cmd, common);

  auto* svg = app.add_subcommand("svg", "Draw the triangulation near the real axis");
  svg->add_option("spec", spec_path, "Jigsaw spec (JSON)");
  svg->add_option("--window", window, "x-range a b")->expected(2);
  svg->add_option("-o,--output", svg_out, "Write to a file instead of stdout");
  add_common(svg, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    if (*classify) {
      JigsawGroup g = load_group(common, spec_path.empty() ? std::nullopt : std::optional(spec_path));
      ClassificationReport r = classify_with(g, common);
      json out = report_to_json(r);
      if (common.timing) out["timing_ms"] = elapsed_ms();
      std::cout << out.dump(2) << "\n";
      return r.verdict == Verdict::Inconclusive ? kInconclusive : kOk;
    }

    if (*reduce) {
      std::optional<std::string> path;
      std::string x_text;
      const std::size_t want = common.weierstrass.empty() ? 2 : 1;
      if (reduce_args.size() != want)
        throw Error(ErrorKind::Parse, want == 2 ? "usage: reduce <spec.json> <p/q>" : "usage: reduce --weierstrass k1 k2 k3 <p/q>");
      if (want == 2) path = reduce_args[0];
      x_text = reduce_args.back();
      const ExtendedRational x = ExtendedRational::parse(x_text);
      JigsawGroup g = load_group(common, path);
      const auto start = window_start(common);
      CuspStrip strip = cusp_strip(g, start);
      Cover cover = build_cover(g, strip, common.depth);
      Reducer reducer(g, cover, strip);
      PointVerdict v = reducer.reduce(x, common.budget);
      if (reduce_json) {
        json out = verdict_to_json(x, v);
        if (common.timing) out["timing_ms"] = elapsed_ms();
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& s : v.steps) std::cout << step_text(s) << "\n";
        switch (v.kind) {
          case PointKind::Cusp:
            std::cout << "cusp, word " << (v.word.empty() ? std::string("(empty)") : v.word.str()) << "\n";
            break;
          case PointKind::Special:
            std::cout << "special, witness " << v.witness.str() << ", fixed points " << fixed_points_text(v.witness)
                      << "\n";
            break;
          case PointKind::Unknown:
            std::cout << "unknown after " << v.budget << " killer steps\n";
            break;
        }
        if (common.timing) std::cout << "time " << elapsed_ms() << " ms\n";
      }
      return v.kind == PointKind::Unknown ? kInconclusive : kOk;
    }

    if (*census_cmd) {
      const auto set = parse_set(set_text);
      if (!validate_set(set)) throw Error(ErrorKind::InvalidArgument, "tile set fails the matching condition");
      const auto jigsaws = census(set, max_size);
      std::map<std::string, int> counts;
      json rows = json::array();
      int index = 0;
      for (const auto& j : jigsaws) {
        JigsawGroup g(j);
        ClassificationReport r = classify_group(g, common.depth, common.budget);
        ++counts[to_string(r.verdict)];
        std::string sig;
        for (const auto& [type, count] : r.signature) sig += (sig.empty() ? "" : " ") + type + "x" + std::to_string(count);
        if (census_json) {
          rows.push_back(json{{"index", index},
                              {"size", j.size()},
                              {"key", r.key},
                              {"spec", spec_to_json(j.spec())},
                              {"L", io::rational(r.L)},
                              {"verdict", to_string(r.verdict)},
                              {"specials", io::array_of(r.specials, [](const SpecialReport& s) {
                                 return io::rational(s.point);
                               })}});
        } else {
          std::cout << index << "\t" << j.size() << "\t" << sig << "\tL=" << to_string(r.L) << "\t"
                    << to_string(r.verdict) << "\t" << r.key << "\n";
        }
        ++index;
      }
      if (census_json) {
        json out{{"rows", rows}, {"counts", counts}};
        if (common.timing) out["timing_ms"] = elapsed_ms();
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "total " << jigsaws.size();
        for (const auto& [verdict, n] : counts) std::cout << "  " << verdict << " " << n;
        std::cout << "\n";
        if (common.timing) std::cout << "time " << elapsed_ms() << " ms\n";
      }
      return kOk;
    }

    if (*svg) {
      JigsawGroup g = load_group(common, spec_path.empty() ? std::nullopt : std::optional(spec_path));
      SvgOptions opt;
      opt.depth = svg->count("--depth") > 0 ? common.depth : 2;
      if (window.size() == 2) {
        opt.lo = parse_rational(window[0]);
        opt.hi = parse_rational(window[1]);
      } else {
        opt.lo = default_window_start(g);
        opt.hi = opt.lo + g.length();
      }
      std::optional<Cover> cover;
      std::vector<SpecialReport> specials;
      if (g.jigsaw().is_integral() && opt.lo < opt.hi) {
        CuspStrip strip = cusp_strip(g, window_start(common));
        cover = build_cover(g, strip, 1);
        Reducer reducer(g, *cover, strip);
        for (const auto& sp : reducer.walk_specials())
          specials.push_back(SpecialReport{sp.point, sp.witness, sp.witness.rational_fixed_points().points});
      }
      const std::string doc = render_svg(g, opt, cover ? &*cover : nullptr, &specials);
      if (svg_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream f(svg_out);
        if (!f) throw Error(ErrorKind::Parse, "cannot write " + svg_out);
        f << doc;
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "jigsaw: " << e.what() << "\n";
    return exit_for(e);
  }
  return kOk;
}
