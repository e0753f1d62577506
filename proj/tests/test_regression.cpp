// Golden-file regressions for the canonical serialization, cross-validation
// of the symbolic derivative-test pipeline against parameter-bound runs, and
// a mutation check that the w relation is load-bearing.

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ddlab/derivtest.hpp"
#include "ddlab/json_io.hpp"
#include "ddlab/rng.hpp"

using namespace ddlab;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(DDLAB_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  return line;
}

CircleConfig random_bound_generic(Rng& rng) {
  auto positive = [&] {
    return Rational(1 + static_cast<long long>(rng.below(60)),
                    1 + static_cast<long long>(rng.below(20)));
  };
  const auto a = half_angle_point(positive());
  const auto b = half_angle_point(positive());
  return CircleConfig::make(ConfigCase::Generic, {
                                                     {Var::SA, a.sin_v},
                                                     {Var::CA, a.cos_v},
                                                     {Var::SB, b.sin_v},
                                                     {Var::CB, b.cos_v},
                                                     {Var::P, rng.small_rational(9, 5)},
                                                     {Var::Q, rng.small_rational(9, 5)},
                                                     {Var::R, positive()},
                                                 });
}

}  // namespace

TEST_CASE("golden canonical serializations") {
  {
    auto sys = build_rho(CircleConfig::make(ConfigCase::HParallelXZ, {}));
    CHECK(derivative_test_numerator(sys).str() == read_golden("xz_numerator.txt"));
  }
  {
    auto sys = build_rho(CircleConfig::make(ConfigCase::HParallelYZ, {}));
    CHECK(derivative_test_numerator(sys).str() == read_golden("yz_numerator.txt"));
  }
  {
    auto sys = build_rho(CircleConfig::make(
        ConfigCase::CosBetaZeroP0, {{Var::CA, Rational(0)}, {Var::SA, Rational(1)}}));
    CHECK(derivative_test_numerator(sys).str() ==
          read_golden("cosbeta0_terminal_numerator.txt"));
  }
  {
    auto sys = build_rho(CircleConfig::make(ConfigCase::Generic, {}));
    MultiPoly num = derivative_test_numerator(sys);
    CHECK(coefficient(num, 5, 1).str() == read_golden("generic_s5t_coefficient.txt"));
    CHECK(coefficient(num, 3, 1).str() == read_golden("generic_s3t_coefficient.txt"));
  }
}

TEST_CASE("symbolic pipeline agrees with parameter-bound pipeline") {
  // Bind the parameters first and rerun the whole pipeline; the resulting g
  // must equal the symbolic g evaluated at the same parameters, as elements
  // of Q(sqrt(c)) with c the squared norm at those parameters.
  RhoSystem sym = build_rho(CircleConfig::make(ConfigCase::Generic, {}));
  DerivTestParts sym_parts = derivative_test_parts(sym);
  auto [num_a, num_b] = split_at_w(sym_parts.g.num);
  auto [den_a, den_b] = split_at_w(sym_parts.g.den);

  Rng rng(2024);
  int points_checked = 0;
  for (int cfg_i = 0; cfg_i < 5; ++cfg_i) {
    CircleConfig cfg = random_bound_generic(rng);
    RhoSystem bound = build_rho(cfg);
    DerivTestParts bound_parts;
    try {
      bound_parts = derivative_test_parts(bound);
    } catch (const DegenerateRho&) {
      continue;
    }
    const Rational c = poly_eval(bound.norm_sq, cfg.bindings);
    auto [bnum_a, bnum_b] = split_at_w(bound_parts.g.num);
    auto [bden_a, bden_b] = split_at_w(bound_parts.g.den);

    for (int pt = 0; pt < 10; ++pt) {
      std::map<Var, Rational> asg = cfg.bindings;
      asg[Var::S] = rng.small_rational(11, 7);
      asg[Var::T] = rng.small_rational(11, 7);

      const Rational A = poly_eval(num_a, asg), B = poly_eval(num_b, asg);
      const Rational C = poly_eval(den_a, asg), D = poly_eval(den_b, asg);
      const Rational A2 = poly_eval(bnum_a, asg), B2 = poly_eval(bnum_b, asg);
      const Rational C2 = poly_eval(bden_a, asg), D2 = poly_eval(bden_b, asg);
      if ((C.is_zero() && D.is_zero()) || (C2.is_zero() && D2.is_zero())) continue;

      // (A + B w)(C2 + D2 w) == (A2 + B2 w)(C + D w) with w^2 = c
      CHECK(A * C2 + B * D2 * c == A2 * C + B2 * D * c);
      CHECK(A * D2 + B * C2 == A2 * D + B2 * C);
      ++points_checked;
    }
  }
  CHECK(points_checked >= 40);
}

TEST_CASE("transposed derivative test is the exact negative") {
  // bound configurations: full polynomial identity num' * den == -num * den'
  Rng rng(31337);
  for (int i = 0; i < 3; ++i) {
    CircleConfig cfg = random_bound_generic(rng);
    RhoSystem sys = build_rho(cfg);
    DerivTestParts fwd, rev;
    try {
      fwd = derivative_test_parts(sys);
      rev = derivative_test_parts_transposed(sys);
    } catch (const DegenerateRho&) {
      continue;
    }
    const MultiPoly lhs = poly_mul(rev.g.num, fwd.g.den, sys.pipe.trig);
    const MultiPoly rhs = poly_mul(fwd.g.num, rev.g.den, sys.pipe.trig);
    CHECK(lhs == -rhs);
  }

  // symbolic configuration: sampled cross-check of the same identity
  RhoSystem sys = build_rho(CircleConfig::make(ConfigCase::Generic, {}));
  DerivTestParts fwd = derivative_test_parts(sys);
  DerivTestParts rev = derivative_test_parts_transposed(sys);
  const MultiPoly lhs = reduce(poly_mul(rev.g.num, fwd.g.den) +
                               poly_mul(fwd.g.num, rev.g.den),
                               sys.pipe.trig);
  CHECK(identity_test_random(lhs, MultiPoly(), 10, 99, sys.pipe.trig));
}

TEST_CASE("disabling the w relation breaks exactly the cases that need it") {
  const auto& catalog = identity_catalog();
  const IdentityCheck* s5t = nullptr;
  for (const auto& chk : catalog)
    if (chk.name == "generic_s5t") s5t = &chk;
  REQUIRE(s5t != nullptr);

  RhoSystem healthy = build_rho(CircleConfig::make(ConfigCase::Generic, {}));
  RhoSystem mutant = healthy;
  mutant.pipe.trig.w_rel = false;

  MultiPoly good = reduce(coefficient(derivative_test_numerator(healthy), 5, 1),
                          TrigContext::cosines());
  MultiPoly bad = coefficient(derivative_test_numerator(mutant), 5, 1);

  // healthy slice is proportional to the published closed form
  REQUIRE(!good.is_zero());
  const MultiPoly stated = s5t->stated;
  bool good_matches = false;
  if (!good.is_zero() && good.leading_term().mono == stated.leading_term().mono) {
    const Rational lambda = good.leading_term().coeff / stated.leading_term().coeff;
    good_matches = good == stated.scaled(lambda);
  }
  CHECK(good_matches);

  // the mutant keeps unresolved powers of w and no longer matches
  CHECK(bad.degree_in(Var::W) >= 2);
  bool bad_matches = false;
  if (!bad.is_zero() && bad.leading_term().mono == stated.leading_term().mono) {
    const Rational lambda = bad.leading_term().coeff / stated.leading_term().coeff;
    bad_matches = bad == stated.scaled(lambda);
  }
  CHECK(!bad_matches);

  // a case that never touches w is unaffected by the same mutation
  RhoSystem xz = build_rho(CircleConfig::make(ConfigCase::HParallelXZ, {}));
  RhoSystem xz_mutant = xz;
  xz_mutant.pipe.trig.w_rel = false;
  CHECK(derivative_test_numerator(xz) == derivative_test_numerator(xz_mutant));
}

TEST_CASE("json round trips") {
  // circle schema
  Json cj = Json::parse(R"({"center":["1","0","2"],"radius_sq":"4",)"
                        R"("normal":["1","0","1"],"offset":"3"})");
  Circle3 c = circle_from_json(cj);
  CHECK(c.center == Point3{Rational(1), Rational(0), Rational(2)});
  CHECK(c.radius_sq == Rational(4));
  CHECK(circle_from_json(circle_json(c)).plane.offset == c.plane.offset);

  CHECK_THROWS(circle_from_json(Json::parse(R"({"center":["0","0","0"]})")));
  // center off the plane is rejected
  CHECK_THROWS(circle_from_json(Json::parse(
      R"({"center":["1","0","0"],"radius_sq":"1","normal":["0","0","1"],"offset":"5"})")));

  // point files keep exact rationals
  std::vector<Point3> pts{{Rational(1, 3), Rational(-7, 2), Rational(0)},
                          {Rational(0), Rational(22, 7), Rational(5)}};
  auto back = points_from_json(points_json(pts));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == pts[0]);
  CHECK(back[1] == pts[1]);

  CHECK_THROWS(points_from_json(Json::parse(R"({"points":[["1","2"]]})")));
  CHECK_THROWS(rational_from_json(Json::parse(R"("1.5")")));
}
