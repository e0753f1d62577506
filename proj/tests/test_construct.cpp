#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ddlab/construct.hpp"
#include "ddlab/metrics.hpp"
#include "ddlab/rng.hpp"

using namespace ddlab;

namespace {

PerpConstructionParams spec_params(long m, long n) {
  PerpConstructionParams p;
  p.m = m;
  p.n = n;
  p.a = Rational(1);
  p.r = Rational(2);
  p.b = Rational(3, 2);
  p.beta_ratio = Rational(9, 10);
  return p;
}

PerpConstructionParams random_valid_params(Rng& rng) {
  PerpConstructionParams p;
  p.m = 1 + static_cast<long>(rng.below(6));
  p.n = p.m + static_cast<long>(rng.below(6));
  p.a = Rational(1 + static_cast<long long>(rng.below(4)),
                 1 + static_cast<long long>(rng.below(3)));
  p.r = Rational(1 + static_cast<long long>(rng.below(5)),
                 1 + static_cast<long long>(rng.below(2)));
  // b strictly inside (a, a + min(1, r)), beta close enough to 1
  Rational width = std::min(Rational(1), p.r);
  p.b = p.a + width / Rational(2 + static_cast<long long>(rng.below(3)));
  p.beta_ratio = Rational(999, 1000);
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("closed form values for the documented example") {
  PerpConstruction c = build_perpendicular(spec_params(2, 2));
  CHECK(c.dist_sq_closed_form(0, 0) == Rational(17, 2));
  CHECK(c.dist_sq_closed_form(0, 1) == Rational(161, 20));
  CHECK(c.dist_sq_closed_form(1, 0) == Rational(161, 20));
  CHECK(c.dist_sq_closed_form(1, 1) == Rational(1529, 200));
  CHECK(count_perpendicular_distances(spec_params(2, 2)) == 3);
}

TEST_CASE("closed form at j=k=0 is 2b^2 + 1 + r^2 - a^2") {
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    auto p = random_valid_params(rng);
    PerpConstruction c = build_perpendicular(p);
    CHECK(c.dist_sq_closed_form(0, 0) ==
          Rational(2) * p.b * p.b + Rational(1) + p.r * p.r - p.a * p.a);
  }
}

TEST_CASE("coordinate expansion equals the closed form exactly") {
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    auto p = random_valid_params(rng);
    PerpConstruction c = build_perpendicular(p);
    for (long j = 0; j < p.m; ++j)
      for (long k = 0; k < p.n; ++k)
        CHECK(c.dist_sq_from_coords(j, k) == c.dist_sq_closed_form(j, k));
  }
}

TEST_CASE("floating point coordinates cross-check the closed form") {
  for (auto [m, n] : {std::pair<long, long>{2, 2}, {4, 7}, {8, 16}}) {
    auto p = PerpConstructionParams::defaults(m, n);
    PerpConstruction c = build_perpendicular(p);
    for (long j = 0; j < p.m; ++j)
      for (long k = 0; k < p.n; ++k) {
        auto a = c.point1(j);
        auto b = c.point2(k);
        const double dd = (a[0] - b[0]) * (a[0] - b[0]) +
                          (a[1] - b[1]) * (a[1] - b[1]) +
                          (a[2] - b[2]) * (a[2] - b[2]);
        const double expect = c.dist_sq_closed_form(j, k).to_double();
        CHECK(std::fabs(dd - expect) <= 1e-9 * std::fabs(expect));
      }
  }
}

TEST_CASE("parameter ranges stay inside the proven windows") {
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    auto p = random_valid_params(rng);
    PerpConstruction c = build_perpendicular(p);
    for (long j = 0; j < p.m; ++j) {
      CHECK(c.t_param(j) > Rational(0));
      CHECK(c.t_param(j) < Rational(1));
    }
    for (long k = 0; k < p.n; ++k) {
      CHECK(c.s_param(k) > Rational(-1));
      CHECK(c.s_param(k) < Rational(0));
    }
  }
}

TEST_CASE("distinct count is exactly m + n - 1") {
  CHECK(count_perpendicular_distances(spec_params(2, 2)) == 3);
  {
    auto p = PerpConstructionParams::defaults(1, 5);
    CHECK(count_perpendicular_distances(p) == 5);
  }
  {
    auto p = PerpConstructionParams::defaults(16, 16);
    CHECK(count_perpendicular_distances(p) == 31);
  }
  {
    auto p = PerpConstructionParams::defaults(1, 1);
    CHECK(count_perpendicular_distances(p) == 1);
  }
  Rng rng(8);
  for (int i = 0; i < 15; ++i) {
    auto p = random_valid_params(rng);
    CHECK(count_perpendicular_distances(p) == p.m + p.n - 1);
  }
}

TEST_CASE("default beta is admissible and close to the lower bound") {
  for (long n : {1L, 2L, 5L, 16L}) {
    auto p = PerpConstructionParams::defaults(n, n);
    p.validate();
    CHECK(p.beta_ratio < Rational(1));
    CHECK(p.beta_ratio.pow(static_cast<unsigned long>(n)) * p.b > p.a);
    CHECK(p.beta_ratio.denominator() <= Rational(1000000));
  }
}

TEST_CASE("invalid perpendicular parameters throw") {
  auto p = spec_params(2, 2);
  p.b = Rational(3);  // outside (a, a + min(1, r)) = (1, 2)
  CHECK_THROWS_AS(p.validate(), std::domain_error);

  p = spec_params(2, 2);
  p.beta_ratio = Rational(1, 2);  // (1/2)^2 * 3/2 < 1
  CHECK_THROWS_AS(p.validate(), std::domain_error);

  p = spec_params(2, 2);
  p.a = Rational(-1);
  CHECK_THROWS_AS(p.validate(), std::domain_error);

  p = spec_params(3, 2);  // m > n
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("aligned construction: documented 4-gon example") {
  AlignedConstructionParams p;
  p.m = p.n = 4;
  p.lattice = 4;
  p.r1_sq = Rational(1);
  p.r2_sq = Rational(4);
  p.plane_gap = Rational(1);
  auto [p1, p2] = build_aligned(p);
  auto classes = aligned_distance_classes(p1, p2);
  CHECK(classes == std::set<long>{0, 1, 2});

  // brute force over the 16 float pairs: 6 - 4 cos(angle class)
  std::vector<double> dists;
  for (long j : p1.indices)
    for (long k : p2.indices) {
      auto a = p1.point_float(j);
      auto b = p2.point_float(k);
      dists.push_back((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                      (a[2] - b[2]) * (a[2] - b[2]));
    }
  auto h = histogram_from_doubles(dists, CountMode::Float(1e-9));
  CHECK(h.distinct() == 3);
  CHECK(h.total_pairs == 16);
}

TEST_CASE("aligned construction basics") {
  {
    AlignedConstructionParams p = AlignedConstructionParams::defaults(1, 1);
    auto [p1, p2] = build_aligned(p);
    CHECK(aligned_distance_classes(p1, p2).size() == 1);
  }
  {
    AlignedConstructionParams p = AlignedConstructionParams::defaults(16, 16);
    auto [p1, p2] = build_aligned(p);
    CHECK(aligned_distance_classes(p1, p2).size() <= 9);
    CHECK(classify_pair(p1.circle, p2.circle) == PairClass::Aligned);
  }
}

TEST_CASE("angular class examples") {
  AlignedConstructionParams p = AlignedConstructionParams::defaults(1, 1);
  auto [p1, p2] = build_aligned(p);
  CHECK(aligned_distance_classes(p1, p2) == std::set<long>{0});

  AlignedConstructionParams q = AlignedConstructionParams::defaults(4, 4);
  auto [q1, q2] = build_aligned(q);
  CHECK(aligned_distance_classes(q1, q2) == std::set<long>{0, 1, 2});

  AlignedConstructionParams w = AlignedConstructionParams::defaults(8, 8);
  auto [w1, w2] = build_aligned(w);
  w1.indices = {0};
  w2.indices = {1, 3};
  CHECK(aligned_distance_classes(w1, w2) == std::set<long>{1, 3});
}

TEST_CASE("lattice mismatch throws") {
  auto [a1, a2] = build_aligned(AlignedConstructionParams::defaults(2, 2));
  auto [b1, b2] = build_aligned(AlignedConstructionParams::defaults(3, 3));
  CHECK_THROWS_AS(aligned_distance_classes(a1, b2), std::invalid_argument);
}

TEST_CASE("aligned lattice bound: class count stays below m + n") {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    long m = 1 + static_cast<long>(rng.below(10));
    long n = 1 + static_cast<long>(rng.below(10));
    auto p = AlignedConstructionParams::defaults(m, n);
    auto [p1, p2] = build_aligned(p);
    auto classes = aligned_distance_classes(p1, p2);
    CHECK(static_cast<long>(classes.size()) <= p.lattice / 2 + 1);
    CHECK(static_cast<long>(classes.size()) <= m + n - 1);
  }
}
