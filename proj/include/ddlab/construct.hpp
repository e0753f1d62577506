// Families of point sets on two circles that span few distinct distances.
//
// Perpendicular family: points on the unit circle in the xy-plane and on a
// circle in the xz-plane centered at (-a,0,0) with radius r, placed at
// geometric-progression parameters so the bipartite squared distance is
//   2*b^2*beta^(j+k) + 1 + r^2 - a^2,
// a rational value depending only on j+k. Coordinates themselves involve
// square roots and are only ever emitted as floating point; all counting goes
// through the closed form, whose exponent is strictly monotone in j+k.
//
// Aligned family: both index sets live on a shared N-gon angle lattice on two
// coaxial circles; squared distances depend only on the angular class
// min(d, N-d) of the index difference d.

#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "ddlab/geom.hpp"
#include "ddlab/rational.hpp"

namespace ddlab {

struct PerpConstructionParams {
  long m = 1, n = 1;        // set sizes; normalized so m <= n
  Rational a = Rational(1);  // center of the second circle is (-a, 0, 0)
  Rational r = Rational(2);  // radius of the second circle
  Rational b = Rational(3, 2);
  Rational beta_ratio = Rational(9, 10);

  // a=1, r=2, b=3/2 and beta_ratio the midpoint rational just above
  // (a/b)^(1/n), found by bisection with denominators capped at 10^6.
  static PerpConstructionParams defaults(long m, long n);

  // Throws std::domain_error when any range constraint fails. The fractional
  // power bound is checked exactly as beta_ratio^n * b > a.
  void validate() const;
};

class PerpConstruction {
 public:
  explicit PerpConstruction(PerpConstructionParams params);

  const PerpConstructionParams& params() const { return params_; }

  // Exact closed-form squared distance between point j of the first set and
  // point k of the second set.
  Rational dist_sq_closed_form(long j, long k) const;

  // The same squared distance expanded coordinate-wise:
  // (t_j - (-b*beta^k))^2 + (1 - t_j^2) + r^2 (1 - s_k^2), every summand
  // rational because only squares of the irrational coordinates appear.
  Rational dist_sq_from_coords(long j, long k) const;

  Rational t_param(long j) const;  // b*beta^j - a, in (0,1)
  Rational s_param(long k) const;  // (a - b*beta^k)/r, in (-1,0)

  std::array<double, 3> point1(long j) const;  // on the unit circle, z = 0
  std::array<double, 3> point2(long k) const;  // on the second circle, y = 0

 private:
  PerpConstructionParams params_;
  std::vector<Rational> beta_pow_;  // beta^0 .. beta^(m+n-2)
};

PerpConstruction build_perpendicular(const PerpConstructionParams& params);

// Number of distinct bipartite squared distances, found by enumerating the
// exact values rather than trusting the closed-form count. Equals m + n - 1.
long count_perpendicular_distances(const PerpConstructionParams& params);

struct AlignedConstructionParams {
  long m = 1, n = 1;
  Rational r1_sq = Rational(1);
  Rational r2_sq = Rational(4);
  Rational plane_gap = Rational(1);  // z-offset of the second plane
  long lattice = 1;                  // N; must satisfy N >= max(m, n)

  static AlignedConstructionParams defaults(long m, long n);
  void validate() const;
};

// Exact stand-in for n-gon vertices: index j means the point at angle
// 2*pi*j/N on the carrying circle.
struct AngularPointSet {
  Circle3 circle;
  std::vector<long> indices;
  long lattice = 1;

  std::array<double, 3> point_float(long index) const;
};

std::pair<AngularPointSet, AngularPointSet> build_aligned(
    const AlignedConstructionParams& params);

// { min(d, N-d) : d = (j - k) mod N } over all index pairs. Its size bounds
// the distinct-distance count from above and equals it for generic radii.
// Throws std::invalid_argument on mismatched lattices.
std::set<long> aligned_distance_classes(const AngularPointSet& p1,
                                        const AngularPointSet& p2);

}  // namespace ddlab
