#include "ddlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ddlab {

static const Rational kOne(1);

PerpConstructionParams PerpConstructionParams::defaults(long m, long n) {
  PerpConstructionParams p;
  p.m = std::min(m, n);
  p.n = std::max(m, n);
  p.a = Rational(1);
  p.r = Rational(2);
  p.b = Rational(3, 2);

  // Bisect for the midpoint rational just above (a/b)^(1/n): keep the upper
  // endpoint whenever beta^n * b > a holds, stop once denominators pass 10^6.
  const Rational target_cmp = p.a;  // compare beta^n * b against a
  const Rational den_cap(1000000);
  Rational lo = p.a / p.b, hi(1);
  bool have_best = false;
  Rational best;
  while (true) {
    Rational mid = (lo + hi) / Rational(2);
    if (mid.denominator() > den_cap) break;
    if (mid.pow(static_cast<unsigned long>(p.n)) * p.b > target_cmp) {
      hi = mid;
      best = mid;
      have_best = true;
    } else {
      lo = mid;
    }
  }
  if (!have_best) throw std::domain_error("defaults: no admissible beta_ratio found");
  p.beta_ratio = best;
  return p;
}

void PerpConstructionParams::validate() const {
  if (m < 1 || n < 1) throw std::domain_error("perpendicular params: m, n must be >= 1");
  if (m > n) throw std::domain_error("perpendicular params: expected m <= n (swap sizes)");
  if (!(a > Rational(0))) throw std::domain_error("perpendicular params: a must be > 0");
  if (!(r > Rational(0))) throw std::domain_error("perpendicular params: r must be > 0");
  const Rational upper = a + std::min(kOne, r);
  if (!(a < b && b < upper))
    throw std::domain_error("perpendicular params: need a < b < a + min{1, r}");
  if (!(beta_ratio > Rational(0) && beta_ratio < kOne))
    throw std::domain_error("perpendicular params: beta_ratio must lie in (0, 1)");
  if (!(beta_ratio.pow(static_cast<unsigned long>(n)) * b > a))
    throw std::domain_error("perpendicular params: need beta_ratio^n > a/b");
}

PerpConstruction::PerpConstruction(PerpConstructionParams params)
    : params_(std::move(params)) {
  params_.validate();
  const long top = params_.m + params_.n - 1;
  beta_pow_.reserve(static_cast<size_t>(top));
  Rational pw(1);
  for (long e = 0; e < top; ++e) {
    beta_pow_.push_back(pw);
    pw *= params_.beta_ratio;
  }
  // In-range checks, kept exact: 0 < b*beta^j - a < 1 and -1 < (a - b*beta^k)/r < 0.
  for (long j = 0; j < params_.m; ++j) {
    Rational t = t_param(j);
    if (!(t > Rational(0) && t < kOne))
      throw std::domain_error("perpendicular construction: t parameter out of (0,1)");
  }
  for (long k = 0; k < params_.n; ++k) {
    Rational s = s_param(k);
    if (!(s > Rational(-1) && s < Rational(0)))
      throw std::domain_error("perpendicular construction: s parameter out of (-1,0)");
  }
}

Rational PerpConstruction::dist_sq_closed_form(long j, long k) const {
  const Rational& bp = beta_pow_.at(static_cast<size_t>(j + k));
  return Rational(2) * params_.b * params_.b * bp + kOne + params_.r * params_.r -
         params_.a * params_.a;
}

Rational PerpConstruction::t_param(long j) const {
  return params_.b * beta_pow_.at(static_cast<size_t>(j)) - params_.a;
}

Rational PerpConstruction::s_param(long k) const {
  return (params_.a - params_.b * beta_pow_.at(static_cast<size_t>(k))) / params_.r;
}

Rational PerpConstruction::dist_sq_from_coords(long j, long k) const {
  const Rational t = t_param(j);
  const Rational s = s_param(k);
  const Rational dx = t + params_.b * beta_pow_.at(static_cast<size_t>(k));
  return dx * dx + (kOne - t * t) + params_.r * params_.r * (kOne - s * s);
}

std::array<double, 3> PerpConstruction::point1(long j) const {
  const double t = t_param(j).to_double();
  return {t, std::sqrt(std::max(0.0, 1.0 - t * t)), 0.0};
}

std::array<double, 3> PerpConstruction::point2(long k) const {
  const double s = s_param(k).to_double();
  const double r = params_.r.to_double();
  const double x = -(params_.b * beta_pow_.at(static_cast<size_t>(k))).to_double();
  return {x, 0.0, r * std::sqrt(std::max(0.0, 1.0 - s * s))};
}

PerpConstruction build_perpendicular(const PerpConstructionParams& params) {
  return PerpConstruction(params);
}

long count_perpendicular_distances(const PerpConstructionParams& params) {
  PerpConstruction c(params);
  std::set<Rational> values;
  for (long j = 0; j < params.m; ++j)
    for (long k = 0; k < params.n; ++k) values.insert(c.dist_sq_closed_form(j, k));
  return static_cast<long>(values.size());
}

AlignedConstructionParams AlignedConstructionParams::defaults(long m, long n) {
  AlignedConstructionParams p;
  p.m = m;
  p.n = n;
  p.lattice = std::max(m, n);
  return p;
}

void AlignedConstructionParams::validate() const {
  if (m < 1 || n < 1) throw std::domain_error("aligned params: m, n must be >= 1");
  if (!(r1_sq > Rational(0)) || !(r2_sq > Rational(0)))
    throw std::domain_error("aligned params: squared radii must be positive");
  if (lattice < std::max(m, n))
    throw std::domain_error("aligned params: lattice must be >= max(m, n)");
}

std::array<double, 3> AngularPointSet::point_float(long index) const {
  const double angle =
      2.0 * M_PI * static_cast<double>(index) / static_cast<double>(lattice);
  const double rad = std::sqrt(circle.radius_sq.to_double());
  return {circle.center.x.to_double() + rad * std::cos(angle),
          circle.center.y.to_double() + rad * std::sin(angle),
          circle.center.z.to_double()};
}

std::pair<AngularPointSet, AngularPointSet> build_aligned(
    const AlignedConstructionParams& params) {
  params.validate();
  const Rational zero(0);
  Plane3 base = make_plane({zero, zero, Rational(1)}, zero);
  Plane3 lifted = make_plane({zero, zero, Rational(1)}, params.plane_gap);
  Circle3 c1 = make_circle({zero, zero, zero}, params.r1_sq, base);
  Circle3 c2 = make_circle({zero, zero, params.plane_gap}, params.r2_sq, lifted);

  AngularPointSet p1{c1, {}, params.lattice};
  AngularPointSet p2{c2, {}, params.lattice};
  for (long j = 0; j < params.m; ++j) p1.indices.push_back(j);
  for (long k = 0; k < params.n; ++k) p2.indices.push_back(k);
  return {std::move(p1), std::move(p2)};
}

std::set<long> aligned_distance_classes(const AngularPointSet& p1,
                                        const AngularPointSet& p2) {
  if (p1.lattice != p2.lattice)
    throw std::invalid_argument("aligned_distance_classes: lattice mismatch");
  const long n = p1.lattice;
  std::set<long> classes;
  for (long j : p1.indices)
    for (long k : p2.indices) {
      long d = (j - k) % n;
      if (d < 0) d += n;
      classes.insert(std::min(d, n - d));
    }
  return classes;
}

}  // namespace ddlab
