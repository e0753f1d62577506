// JSON schemas for circles, point sets, construction outputs, histograms and
// verification reports. All rationals travel as exact strings ("num/den" or
// an integer string); nothing is ever rounded on the exact paths.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ddlab/construct.hpp"
#include "ddlab/derivtest.hpp"
#include "ddlab/geom.hpp"
#include "ddlab/metrics.hpp"

namespace ddlab {

inline constexpr const char* kToolName = "ddlab";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Standard metadata block embedded in every output file so runs are
// reproducible byte for byte.
Json meta_json(const std::string& subcommand, std::uint64_t seed, Json params);

Json rational_json(const Rational& r);          // string form
Rational rational_from_json(const Json& j);     // throws on malformed input

Json point_json(const Point3& p);
Point3 point_from_json(const Json& j);
Json points_json(const std::vector<Point3>& pts);
std::vector<Point3> points_from_json(const Json& j);  // {"points": [[...], ...]}

// {"center":[...], "radius_sq":"...", "normal":[...], "offset":"..."}
Json circle_json(const Circle3& c);
Circle3 circle_from_json(const Json& j);

Json histogram_json(const DistanceHistogram& h);

Json perp_construction_json(const PerpConstruction& c);
Json aligned_construction_json(const AlignedConstructionParams& params,
                               const AngularPointSet& p1, const AngularPointSet& p2);

Json report_json(const DerivTestReport& report);
Json verification_json(const VerificationSummary& summary);

Json load_json_file(const std::string& path);              // throws on I/O or parse error
void write_json_file(const std::string& path, const Json& j);

}  // namespace ddlab
