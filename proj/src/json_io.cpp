#include "ddlab/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ddlab {

Json meta_json(const std::string& subcommand, std::uint64_t seed, Json params) {
  Json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["seed"] = seed;
  m["params"] = std::move(params);
  return m;
}

Json rational_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected rational string");
  return Rational::from_string(j.get<std::string>());
}

Json point_json(const Point3& p) {
  return Json::array({p.x.str(), p.y.str(), p.z.str()});
}

Point3 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("point must be an array of three rational strings");
  return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

Json points_json(const std::vector<Point3>& pts) {
  Json arr = Json::array();
  for (const Point3& p : pts) arr.push_back(point_json(p));
  Json out;
  out["points"] = std::move(arr);
  return out;
}

std::vector<Point3> points_from_json(const Json& j) {
  if (!j.contains("points") || !j["points"].is_array())
    throw std::invalid_argument("point file must contain a \"points\" array");
  std::vector<Point3> out;
  for (const Json& e : j["points"]) out.push_back(point_from_json(e));
  return out;
}

Json circle_json(const Circle3& c) {
  Json out;
  out["center"] = point_json(c.center);
  out["radius_sq"] = c.radius_sq.str();
  out["normal"] =
      Json::array({c.plane.normal.x.str(), c.plane.normal.y.str(), c.plane.normal.z.str()});
  out["offset"] = c.plane.offset.str();
  return out;
}

Circle3 circle_from_json(const Json& j) {
  for (const char* key : {"center", "radius_sq", "normal", "offset"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("circle is missing \"") + key + "\"");
  Point3 center = point_from_json(j["center"]);
  Point3 n = point_from_json(j["normal"]);
  return make_circle(std::move(center), rational_from_json(j["radius_sq"]),
                     make_plane({n.x, n.y, n.z}, rational_from_json(j["offset"])));
}

Json histogram_json(const DistanceHistogram& h) {
  Json out;
  out["mode"] = h.exact_mode ? "exact" : "float";
  Json entries = Json::array();
  if (h.exact_mode) {
    for (const auto& [key, mult] : h.exact_entries) {
      Json e;
      e["dist_sq"] = key.str();
      e["multiplicity"] = mult;
      entries.push_back(std::move(e));
    }
  } else {
    out["epsilon"] = h.epsilon;
    out["ambiguous"] = h.ambiguous;
    for (const auto& [rep, mult] : h.float_buckets) {
      Json e;
      e["dist_sq"] = rep;
      e["multiplicity"] = mult;
      entries.push_back(std::move(e));
    }
  }
  out["entries"] = std::move(entries);
  out["total_pairs"] = h.total_pairs;
  return out;
}

Json perp_construction_json(const PerpConstruction& c) {
  const auto& p = c.params();
  Json out;
  out["kind"] = "perpendicular";
  out["m"] = p.m;
  out["n"] = p.n;
  Json params;
  params["a"] = p.a.str();
  params["r"] = p.r.str();
  params["b"] = p.b.str();
  params["beta_ratio"] = p.beta_ratio.str();
  out["params"] = std::move(params);

  // exact per-point data: the j-th point of the first set is
  // (t_j, sqrt(1 - t_j^2), 0), the k-th of the second (-b*beta^k, 0,
  // r*sqrt(1 - s_k^2)); the parameters below pin both exactly
  Json p1 = Json::array(), p2 = Json::array();
  for (long j = 0; j < p.m; ++j) {
    Json e;
    e["index"] = j;
    e["t_param"] = c.t_param(j).str();
    p1.push_back(std::move(e));
  }
  for (long k = 0; k < p.n; ++k) {
    Json e;
    e["index"] = k;
    e["s_param"] = c.s_param(k).str();
    p2.push_back(std::move(e));
  }
  out["p1"] = std::move(p1);
  out["p2"] = std::move(p2);

  Json table = Json::array();
  for (long j = 0; j < p.m; ++j)
    for (long k = 0; k < p.n; ++k) {
      Json e;
      e["j"] = j;
      e["k"] = k;
      e["dist_sq"] = c.dist_sq_closed_form(j, k).str();
      table.push_back(std::move(e));
    }
  out["dist_sq_closed_form"] = std::move(table);

  Json f1 = Json::array(), f2 = Json::array();
  for (long j = 0; j < p.m; ++j) {
    auto pt = c.point1(j);
    f1.push_back(Json::array({pt[0], pt[1], pt[2]}));
  }
  for (long k = 0; k < p.n; ++k) {
    auto pt = c.point2(k);
    f2.push_back(Json::array({pt[0], pt[1], pt[2]}));
  }
  Json fp;
  fp["p1"] = std::move(f1);
  fp["p2"] = std::move(f2);
  out["float_points"] = std::move(fp);
  return out;
}

Json aligned_construction_json(const AlignedConstructionParams& params,
                               const AngularPointSet& p1, const AngularPointSet& p2) {
  Json out;
  out["kind"] = "aligned";
  out["m"] = params.m;
  out["n"] = params.n;
  out["lattice"] = params.lattice;
  Json pj;
  pj["r1_sq"] = params.r1_sq.str();
  pj["r2_sq"] = params.r2_sq.str();
  pj["plane_gap"] = params.plane_gap.str();
  out["params"] = std::move(pj);
  out["p1"] = p1.indices;
  out["p2"] = p2.indices;

  const auto classes = aligned_distance_classes(p1, p2);
  out["angular_classes"] = std::vector<long>(classes.begin(), classes.end());
  out["distinct_class_count"] = classes.size();

  Json f1 = Json::array(), f2 = Json::array();
  for (long j : p1.indices) {
    auto pt = p1.point_float(j);
    f1.push_back(Json::array({pt[0], pt[1], pt[2]}));
  }
  for (long k : p2.indices) {
    auto pt = p2.point_float(k);
    f2.push_back(Json::array({pt[0], pt[1], pt[2]}));
  }
  Json fp;
  fp["p1"] = std::move(f1);
  fp["p2"] = std::move(f2);
  out["float_points"] = std::move(fp);
  return out;
}

static Json check_json(const CheckResult& r) {
  Json e;
  e["name"] = r.name;
  e["kind"] = r.kind;
  e["tier"] = r.tier;
  if (!r.normalization.empty()) e["normalization"] = r.normalization;
  e["pass"] = r.pass;
  if (!r.lambda.empty()) e["lambda"] = r.lambda;
  e["computed"] = r.computed;
  e["stated"] = r.stated;
  return e;
}

Json report_json(const DerivTestReport& report) {
  Json out;
  out["case"] = case_name(report.config.tag);
  Json bindings;
  for (const auto& [v, val] : report.config.bindings) bindings[var_name(v)] = val.str();
  out["bindings"] = std::move(bindings);
  out["is_zero"] = report.is_zero;
  out["term_count"] = report.term_count;
  out["verdict"] =
      report.verdict == Verdict::ZeroEverywhere ? "zero-everywhere" : "nonzero-generic";
  out["numerator"] = report.numerator.str();
  Json coeffs = Json::array();
  for (const auto& [sd, td, poly] : report.coefficients) {
    Json e;
    e["s_deg"] = sd;
    e["t_deg"] = td;
    e["poly"] = poly.str();
    coeffs.push_back(std::move(e));
  }
  out["coefficients"] = std::move(coeffs);
  Json checks = Json::array();
  for (const CheckResult& r : report.checks) checks.push_back(check_json(r));
  out["checks"] = std::move(checks);
  return out;
}

Json verification_json(const VerificationSummary& summary) {
  Json out;
  out["all_pass"] = summary.all_pass;
  Json checks = Json::array();
  for (const CheckResult& r : summary.results) checks.push_back(check_json(r));
  out["checks"] = std::move(checks);
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace ddlab
