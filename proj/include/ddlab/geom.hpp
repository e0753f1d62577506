// Exact 3D primitives over Rational: points, planes, lines, circles,
// squared distances, circle-pair classification and the drop-z projection.
//
// Everything here is a pure value; no floating point enters any predicate.
// Radii are stored squared so that all tests stay inside Q.

#pragma once

#include <array>
#include <string>

#include "ddlab/rational.hpp"

namespace ddlab {

struct Vec3 {
  Rational x, y, z;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(const Rational& c, const Vec3& v) {
    return {c * v.x, c * v.y, c * v.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
};

inline Rational dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct Point3 {
  Rational x, y, z;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend Vec3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  Point3 translated(const Vec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
  Vec3 as_vec() const { return {x, y, z}; }
};

// Plane {v : normal . v = offset}; normal must be nonzero.
struct Plane3 {
  Vec3 normal;
  Rational offset;

  bool contains(const Point3& p) const { return dot(normal, p.as_vec()) == offset; }
};

Plane3 make_plane(Vec3 normal, Rational offset);  // throws on zero normal

// Line through `point` along `direction`; direction must be nonzero.
struct Line3 {
  Point3 point;
  Vec3 direction;

  bool contains(const Point3& p) const { return cross(p - point, direction).is_zero(); }
};

Line3 make_line(Point3 point, Vec3 direction);  // throws on zero direction

// Circle given by its supporting plane, center (on the plane) and squared radius.
struct Circle3 {
  Point3 center;
  Rational radius_sq;
  Plane3 plane;
};

// Validates radius_sq > 0 and center on plane; throws std::invalid_argument.
Circle3 make_circle(Point3 center, Rational radius_sq, Plane3 plane);

enum class PairClass { Aligned, Perpendicular, Generic };

std::string to_string(PairClass c);

// Squared Euclidean distance; exact, symmetric, zero iff equal.
Rational dist_sq(const Point3& a, const Point3& b);

// The line through the circle's center orthogonal to its plane. Every point of
// the axis is equidistant from the whole circle.
Line3 axis(const Circle3& c);

// Aligned: the two axes are one and the same line (checked without any
// canonical form: parallel directions plus mutual incidence).
// Perpendicular: the planes are orthogonal and each center lies on the other
// circle's plane. Aligned wins when both tests pass, so coplanar concentric
// circles classify as Aligned.
PairClass classify_pair(const Circle3& c1, const Circle3& c2);

// Plane of points equidistant from a and b; throws std::invalid_argument on a == b.
Plane3 perpendicular_bisector(const Point3& a, const Point3& b);

inline Point3 project_drop_z(const Point3& p) { return {p.x, p.y, Rational(0)}; }

}  // namespace ddlab
