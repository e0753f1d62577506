#include "ddlab/geom.hpp"

#include <stdexcept>

namespace ddlab {

Plane3 make_plane(Vec3 normal, Rational offset) {
  if (normal.is_zero()) throw std::invalid_argument("Plane3: zero normal");
  return {std::move(normal), std::move(offset)};
}

Line3 make_line(Point3 point, Vec3 direction) {
  if (direction.is_zero()) throw std::invalid_argument("Line3: zero direction");
  return {std::move(point), std::move(direction)};
}

Circle3 make_circle(Point3 center, Rational radius_sq, Plane3 plane) {
  if (plane.normal.is_zero()) throw std::invalid_argument("Circle3: zero plane normal");
  if (!(radius_sq > Rational(0))) throw std::invalid_argument("Circle3: radius_sq must be positive");
  if (!plane.contains(center)) throw std::invalid_argument("Circle3: center not on plane");
  return {std::move(center), std::move(radius_sq), std::move(plane)};
}

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::Aligned: return "aligned";
    case PairClass::Perpendicular: return "perpendicular";
    case PairClass::Generic: return "generic";
  }
  return "generic";
}

Rational dist_sq(const Point3& a, const Point3& b) {
  Vec3 d = a - b;
  return d.x * d.x + d.y * d.y + d.z * d.z;
}

Line3 axis(const Circle3& c) { return {c.center, c.plane.normal}; }

static bool same_line(const Line3& a, const Line3& b) {
  return cross(a.direction, b.direction).is_zero() && a.contains(b.point);
}

PairClass classify_pair(const Circle3& c1, const Circle3& c2) {
  if (same_line(axis(c1), axis(c2))) return PairClass::Aligned;
  const bool planes_perp = dot(c1.plane.normal, c2.plane.normal).is_zero();
  if (planes_perp && c2.plane.contains(c1.center) && c1.plane.contains(c2.center))
    return PairClass::Perpendicular;
  return PairClass::Generic;
}

Plane3 perpendicular_bisector(const Point3& a, const Point3& b) {
  if (a == b) throw std::invalid_argument("perpendicular_bisector: points coincide");
  Vec3 n = b - a;
  Rational offset =
      (dot(b.as_vec(), b.as_vec()) - dot(a.as_vec(), a.as_vec())) / Rational(2);
  return {std::move(n), std::move(offset)};
}

}  // namespace ddlab
