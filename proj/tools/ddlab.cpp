// ddlab: exact toolkit for distinct distances between points on two circles.
//
// Subcommands: construct, count, classify, histogram, derivtest,
// verify-appendix. All outputs are JSON with a meta block (tool, version,
// subcommand, seed, parameters) so identical invocations produce byte
// identical files. Exit codes: 0 success, 1 malformed input or flags,
// 2 verification failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "ddlab/construct.hpp"
#include "ddlab/derivtest.hpp"
#include "ddlab/json_io.hpp"
#include "ddlab/metrics.hpp"

using ddlab::Json;
using ddlab::Rational;

namespace {

void emit(const Json& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    ddlab::write_json_file(path, out);
  }
}

struct ConstructArgs {
  std::string kind = "perpendicular";
  long m = 1, n = 1;
  std::string a, r, b, beta;
  std::string r1_sq, r2_sq, gap;
  long lattice = 0;
  std::string out;
  std::uint64_t seed = 0;
};

int run_construct(const ConstructArgs& args) {
  Json params;
  params["kind"] = args.kind;
  params["m"] = args.m;
  params["n"] = args.n;

  Json body;
  if (args.kind == "perpendicular") {
    ddlab::PerpConstructionParams p =
        ddlab::PerpConstructionParams::defaults(args.m, args.n);
    if (!args.a.empty()) p.a = Rational::from_string(args.a);
    if (!args.r.empty()) p.r = Rational::from_string(args.r);
    if (!args.b.empty()) p.b = Rational::from_string(args.b);
    if (!args.beta.empty()) p.beta_ratio = Rational::from_string(args.beta);
    ddlab::PerpConstruction c = ddlab::build_perpendicular(p);
    body = ddlab::perp_construction_json(c);
  } else if (args.kind == "aligned") {
    ddlab::AlignedConstructionParams p =
        ddlab::AlignedConstructionParams::defaults(args.m, args.n);
    if (args.lattice > 0) p.lattice = args.lattice;
    if (!args.r1_sq.empty()) p.r1_sq = Rational::from_string(args.r1_sq);
    if (!args.r2_sq.empty()) p.r2_sq = Rational::from_string(args.r2_sq);
    if (!args.gap.empty()) p.plane_gap = Rational::from_string(args.gap);
    auto [p1, p2] = ddlab::build_aligned(p);
    body = ddlab::aligned_construction_json(p, p1, p2);
  } else {
    throw std::invalid_argument("--kind must be perpendicular or aligned");
  }
  body["meta"] = ddlab::meta_json("construct", args.seed, params);
  emit(body, args.out);
  return 0;
}

struct CountArgs {
  std::string a, b;
  std::string mode = "exact";
  double eps = 1e-9;
  std::string out;
  std::uint64_t seed = 0;
};

int run_count(const CountArgs& args) {
  const bool exact = args.mode == "exact";
  if (!exact && args.mode != "float")
    throw std::invalid_argument("--mode must be exact or float");
  ddlab::CountMode mode = exact ? ddlab::CountMode::Exact() : ddlab::CountMode::Float(args.eps);

  Json in_a = ddlab::load_json_file(args.a);
  ddlab::DistanceHistogram hist;
  if (in_a.contains("points")) {
    if (args.b.empty())
      throw std::invalid_argument("count: --b is required for point-list input");
    Json in_b = ddlab::load_json_file(args.b);
    auto p1 = ddlab::points_from_json(in_a);
    auto p2 = ddlab::points_from_json(in_b);
    hist = ddlab::bipartite_histogram(p1, p2, mode);
  } else if (in_a.contains("float_points")) {
    // construction output: exact mode uses the closed-form table, float mode
    // the emitted coordinates
    if (exact) {
      if (!in_a.contains("dist_sq_closed_form"))
        throw std::invalid_argument(
            "count: this construction has no exact distance table; aligned "
            "outputs carry the exact count as distinct_class_count");
      std::vector<Rational> values;
      for (const Json& e : in_a["dist_sq_closed_form"])
        values.push_back(ddlab::rational_from_json(e["dist_sq"]));
      hist = ddlab::histogram_from_values(values, mode);
    } else {
      std::vector<double> values;
      const Json& fp = in_a.at("float_points");
      for (const Json& pa : fp.at("p1"))
        for (const Json& pb : fp.at("p2")) {
          double d = 0;
          for (int i = 0; i < 3; ++i) {
            const double diff = pa[i].get<double>() - pb[i].get<double>();
            d += diff * diff;
          }
          values.push_back(d);
        }
      hist = ddlab::histogram_from_doubles(values, mode);
    }
  } else {
    throw std::invalid_argument(
        "count: input must be a point file or a construction output");
  }

  Json params;
  params["a"] = args.a;
  params["b"] = args.b;
  params["mode"] = args.mode;
  if (!exact) params["eps"] = args.eps;

  Json out;
  out["meta"] = ddlab::meta_json("count", args.seed, params);
  out["distinct"] = hist.distinct();
  out["histogram"] = ddlab::histogram_json(hist);
  out["quadruples"] = ddlab::quadruple_count(hist);
  out["cs_bound"] = ddlab::cauchy_schwarz_bound(hist).str();
  emit(out, args.out);
  return 0;
}

struct ClassifyArgs {
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
};

int run_classify(const ClassifyArgs& args) {
  Json j = ddlab::load_json_file(args.in);
  if (!j.contains("c1") || !j.contains("c2"))
    throw std::invalid_argument("classify: input must contain \"c1\" and \"c2\"");
  ddlab::Circle3 c1 = ddlab::circle_from_json(j["c1"]);
  ddlab::Circle3 c2 = ddlab::circle_from_json(j["c2"]);
  Json params;
  params["in"] = args.in;
  Json out;
  out["meta"] = ddlab::meta_json("classify", args.seed, params);
  out["classification"] = ddlab::to_string(ddlab::classify_pair(c1, c2));
  emit(out, args.out);
  return 0;
}

struct HistArgs {
  std::string points;
  std::string mode = "exact";
  double eps = 1e-9;
  std::string out;
  std::uint64_t seed = 0;
};

int run_histogram(const HistArgs& args) {
  const bool exact = args.mode == "exact";
  if (!exact && args.mode != "float")
    throw std::invalid_argument("--mode must be exact or float");
  auto pts = ddlab::points_from_json(ddlab::load_json_file(args.points));
  auto hist = ddlab::within_set_histogram(
      pts, exact ? ddlab::CountMode::Exact() : ddlab::CountMode::Float(args.eps));
  Json params;
  params["points"] = args.points;
  params["mode"] = args.mode;
  Json out;
  out["meta"] = ddlab::meta_json("histogram", args.seed, params);
  out["distinct"] = hist.distinct();
  out["histogram"] = ddlab::histogram_json(hist);
  emit(out, args.out);
  return 0;
}

struct DerivArgs {
  std::string case_name = "generic";
  std::string p, q, r, u, v, g;
  std::string out;
  std::uint64_t seed = 0;
};

int run_derivtest(const DerivArgs& args) {
  std::map<ddlab::Var, Rational> bindings;
  if (!args.p.empty()) bindings[ddlab::Var::P] = Rational::from_string(args.p);
  if (!args.q.empty()) bindings[ddlab::Var::Q] = Rational::from_string(args.q);
  if (!args.r.empty()) bindings[ddlab::Var::R] = Rational::from_string(args.r);
  if (!args.u.empty()) {
    auto pt = ddlab::half_angle_point(Rational::from_string(args.u));
    bindings[ddlab::Var::SA] = pt.sin_v;
    bindings[ddlab::Var::CA] = pt.cos_v;
  }
  if (!args.v.empty()) {
    auto pt = ddlab::half_angle_point(Rational::from_string(args.v));
    bindings[ddlab::Var::SB] = pt.sin_v;
    bindings[ddlab::Var::CB] = pt.cos_v;
  }
  if (!args.g.empty()) {
    auto pt = ddlab::half_angle_point(Rational::from_string(args.g));
    bindings[ddlab::Var::SG] = pt.sin_v;
    bindings[ddlab::Var::CG] = pt.cos_v;
  }
  ddlab::CircleConfig cfg =
      ddlab::CircleConfig::make(ddlab::case_from_name(args.case_name), bindings);
  ddlab::DerivTestReport report = ddlab::coefficient_report(cfg);

  Json params;
  params["case"] = args.case_name;
  Json bj;
  for (const auto& [var, val] : cfg.bindings) bj[ddlab::var_name(var)] = val.str();
  params["bindings"] = bj;

  Json out = ddlab::report_json(report);
  out["meta"] = ddlab::meta_json("derivtest", args.seed, params);
  emit(out, args.out);
  return 0;
}

struct VerifyArgs {
  int trials = 50;
  std::uint64_t seed = 0;
  int generic_draws = 100;
  int perp_draws = 20;
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  ddlab::VerificationOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.generic_draws = args.generic_draws;
  options.perp_draws = args.perp_draws;
  ddlab::VerificationSummary summary = ddlab::run_verification(options);

  Json params;
  params["trials"] = args.trials;
  params["generic_draws"] = args.generic_draws;
  params["perp_draws"] = args.perp_draws;

  Json out = ddlab::verification_json(summary);
  out["meta"] = ddlab::meta_json("verify-appendix", args.seed, params);
  emit(out, args.out);
  return summary.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact distinct-distance toolkit for circle pairs in 3-space"};
  app.set_version_flag("--version", ddlab::kToolVersion);
  app.require_subcommand(1);

  ConstructArgs cons;
  auto* c = app.add_subcommand("construct", "generate a few-distance construction");
  c->add_option("--kind", cons.kind, "perpendicular|aligned")->required();
  c->add_option("--m", cons.m, "size of the first point set")->required();
  c->add_option("--n", cons.n, "size of the second point set")->required();
  c->add_option("--a", cons.a, "center offset a (rational)");
  c->add_option("--r", cons.r, "second radius r (rational)");
  c->add_option("--b", cons.b, "progression base b (rational)");
  c->add_option("--beta", cons.beta, "progression ratio (rational in (0,1))");
  c->add_option("--lattice", cons.lattice, "shared angle lattice N (aligned)");
  c->add_option("--r1sq", cons.r1_sq, "first squared radius (aligned)");
  c->add_option("--r2sq", cons.r2_sq, "second squared radius (aligned)");
  c->add_option("--gap", cons.gap, "plane z-offset (aligned)");
  c->add_option("--out", cons.out, "output file (stdout when omitted)");
  c->add_option("--seed", cons.seed, "seed recorded in metadata");

  CountArgs cnt;
  auto* k = app.add_subcommand("count", "count distinct bipartite distances");
  k->add_option("--a", cnt.a, "point file or construction output")->required();
  k->add_option("--b", cnt.b, "second point file");
  k->add_option("--mode", cnt.mode, "exact|float");
  k->add_option("--eps", cnt.eps, "relative bucket width for float mode");
  k->add_option("--out", cnt.out, "output file");
  k->add_option("--seed", cnt.seed, "seed recorded in metadata");

  ClassifyArgs cls;
  auto* l = app.add_subcommand("classify", "classify a circle pair");
  l->add_option("--in", cls.in, "two-circle JSON file")->required();
  l->add_option("--out", cls.out, "output file");
  l->add_option("--seed", cls.seed, "seed recorded in metadata");

  HistArgs hst;
  auto* h = app.add_subcommand("histogram", "within-set distance histogram");
  h->add_option("--points", hst.points, "point file")->required();
  h->add_option("--mode", hst.mode, "exact|float");
  h->add_option("--eps", hst.eps, "relative bucket width for float mode");
  h->add_option("--out", hst.out, "output file");
  h->add_option("--seed", hst.seed, "seed recorded in metadata");

  DerivArgs der;
  auto* d = app.add_subcommand("derivtest", "run the derivative test for one case");
  d->add_option("--case", der.case_name,
                "generic|xz|yz|xaxis|origin|cosbeta0|cosbeta0p0|cosalpha0|"
                "cosalpha0p0|cosalpha0q0");
  d->add_option("--p", der.p, "bind p (rational)");
  d->add_option("--q", der.q, "bind q (rational)");
  d->add_option("--r", der.r, "bind r (rational, positive)");
  d->add_option("--u", der.u, "half-angle parameter for (sa, ca)");
  d->add_option("--v", der.v, "half-angle parameter for (sb, cb)");
  d->add_option("--g", der.g, "half-angle parameter for (sg, cg)");
  d->add_option("--out", der.out, "output file");
  d->add_option("--seed", der.seed, "seed recorded in metadata");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify-appendix",
                               "verify the full catalog of coefficient identities");
  v->add_option("--trials", ver.trials, "randomized identity-test trials");
  v->add_option("--seed", ver.seed, "seed for all randomized checks");
  v->add_option("--generic-draws", ver.generic_draws, "random generic configurations");
  v->add_option("--perp-draws", ver.perp_draws, "random perpendicular configurations");
  v->add_option("--out", ver.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (c->parsed()) return run_construct(cons);
    if (k->parsed()) return run_count(cnt);
    if (l->parsed()) return run_classify(cls);
    if (h->parsed()) return run_histogram(hst);
    if (d->parsed()) return run_derivtest(der);
    if (v->parsed()) return run_verify(ver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
