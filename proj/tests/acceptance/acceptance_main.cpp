// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ddlab/construct.hpp"
#include "ddlab/derivtest.hpp"
#include "ddlab/json_io.hpp"
#include "ddlab/metrics.hpp"
#include "ddlab/rng.hpp"

using namespace ddlab;

namespace {

struct Criterion {
  std::string label;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool run_all(const std::vector<Criterion>& criteria) {
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = ok && in_budget;
    all = all && pass;
    std::printf("%s %s (%.2fs / budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL",
                c.label.c_str(), secs, c.budget_seconds,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (ok && !in_budget) std::printf("     ^ correct but over the time budget\n");
  }
  return all;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  // 1. Perpendicular construction exactness.
  criteria.push_back({"criterion 1: perpendicular construction exactness", 1.0,
                      [](std::string& detail) {
    for (auto [m, n] : {std::pair<long, long>{2, 2}, {8, 16}, {16, 16}}) {
      auto params = PerpConstructionParams::defaults(m, n);
      PerpConstruction c = build_perpendicular(params);
      if (count_perpendicular_distances(params) != m + n - 1) {
        detail = "distinct count mismatch";
        return false;
      }
      for (long j = 0; j < m; ++j)
        for (long k = 0; k < n; ++k) {
          if (c.dist_sq_from_coords(j, k) != c.dist_sq_closed_form(j, k)) {
            detail = "coordinate expansion disagrees with closed form";
            return false;
          }
          auto a = c.point1(j);
          auto b = c.point2(k);
          const double dd = (a[0] - b[0]) * (a[0] - b[0]) +
                            (a[1] - b[1]) * (a[1] - b[1]) +
                            (a[2] - b[2]) * (a[2] - b[2]);
          const double expect = c.dist_sq_closed_form(j, k).to_double();
          if (std::abs(dd - expect) > 1e-9 * std::abs(expect)) {
            detail = "float cross-check out of tolerance";
            return false;
          }
        }
    }
    detail = "counts m+n-1 for (2,2),(8,16),(16,16); closed form exact";
    return true;
  }});

  // 2. Aligned construction class count.
  criteria.push_back({"criterion 2: aligned construction class bound", 1.0,
                      [](std::string& detail) {
    auto params = AlignedConstructionParams::defaults(16, 16);
    auto [p1, p2] = build_aligned(params);
    const auto classes = aligned_distance_classes(p1, p2);
    detail = std::to_string(classes.size()) + " angular classes";
    return classes.size() <= 9;
  }});

  // 3. Projection invariance on random parallel-plane instances.
  criteria.push_back({"criterion 3: projection invariance (50 instances)", 5.0,
                      [](std::string& detail) {
    Rng rng(303);
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<Point3> p1, p2;
      const Rational z = rng.small_rational(20, 7);
      for (int i = 0; i < 10; ++i) {
        p1.push_back({rng.small_rational(40, 11), rng.small_rational(40, 11), Rational(0)});
        p2.push_back({rng.small_rational(40, 11), rng.small_rational(40, 11), z});
      }
      if (!check_projection_invariance(p1, p2)) {
        detail = "invariance failed at iteration " + std::to_string(iter);
        return false;
      }
    }
    detail = "50/50 exact";
    return true;
  }});

  // 4. Quadruple count and Cauchy-Schwarz.
  criteria.push_back({"criterion 4: quadruples and Cauchy-Schwarz (50 histograms)", 1.0,
                      [](std::string& detail) {
    Rng rng(404);
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<Point3> p1, p2;
      const int m = 2 + static_cast<int>(rng.below(4));
      const int n = 2 + static_cast<int>(rng.below(5));
      for (int i = 0; i < m; ++i)
        p1.push_back({rng.small_rational(6, 3), rng.small_rational(6, 3), Rational(0)});
      for (int i = 0; i < n; ++i)
        p2.push_back({rng.small_rational(6, 3), rng.small_rational(6, 3), Rational(1)});
      auto h = bipartite_histogram(p1, p2, CountMode::Exact());

      std::vector<Rational> dists;
      for (const auto& a : p1)
        for (const auto& b : p2) dists.push_back(dist_sq(a, b));
      std::uint64_t brute = 0;
      for (const auto& x : dists)
        for (const auto& y : dists)
          if (x == y) ++brute;
      if (quadruple_count(h) != brute) {
        detail = "quadruple count disagrees with brute force";
        return false;
      }
      const Rational q(static_cast<long long>(quadruple_count(h)));
      if (!(q >= cauchy_schwarz_bound(h))) {
        detail = "Cauchy-Schwarz violated";
        return false;
      }
      Rational sum(0);
      for (auto mult : h.multiplicities()) sum += Rational(static_cast<long long>(mult));
      if (!(q * Rational(static_cast<long long>(h.distinct())) >= sum * sum)) {
        detail = "quadruples * D < (sum m)^2";
        return false;
      }
    }
    detail = "50/50 exact";
    return true;
  }});

  // 5. Derivative-test positive controls.
  criteria.push_back({"criterion 5: derivative-test positive controls", 30.0,
                      [](std::string& detail) {
    if (!derivative_test_numerator(build_rho_coaxial()).is_zero()) {
      detail = "aligned control nonzero";
      return false;
    }
    auto perp = CircleConfig::make(ConfigCase::HParallelXZ, {{Var::Q, Rational(0)}});
    if (!derivative_test_numerator(build_rho(perp)).is_zero()) {
      detail = "perpendicular control nonzero";
      return false;
    }
    auto vert = CircleConfig::make(ConfigCase::CosAlphaZeroP0, {{Var::Q, Rational(0)}});
    if (!derivative_test_numerator(build_rho(vert)).is_zero()) {
      detail = "vertical perpendicular control nonzero";
      return false;
    }
    detail = "aligned and perpendicular numerators identically zero";
    return true;
  }});

  // 6 + 7. Special-case numerators and the full identity catalog; 8 dichotomy;
  // run through the same verification entry point the CLI uses.
  VerificationSummary summary;
  criteria.push_back({"criterion 6: special-case numerators (up to constant)", 60.0,
                      [&summary](std::string& detail) {
    VerificationOptions options;
    options.trials = 50;
    options.seed = 0;
    options.generic_draws = 100;
    options.perp_draws = 20;
    summary = run_verification(options);
    const char* wanted[] = {"xz_numerator", "cosalpha0_p0_numerator",
                            "cosalpha0_q0_numerator", "cosbeta0_terminal_numerator"};
    for (const char* name : wanted) {
      bool found = false;
      for (const auto& r : summary.results)
        if (r.name == name) {
          found = true;
          if (!r.pass || (r.tier != "exact" && r.tier != "constant")) {
            detail = std::string(name) + " tier=" + r.tier;
            return false;
          }
        }
      if (!found) {
        detail = std::string(name) + " missing";
        return false;
      }
    }
    detail = "all four closed-form numerators match up to a rational constant";
    return true;
  }});

  criteria.push_back({"criterion 7: coefficient identity catalog", 300.0,
                      [&summary](std::string& detail) {
    int identities = 0;
    for (const auto& r : summary.results) {
      if (r.kind != "identity") continue;
      ++identities;
      if (!r.pass) {
        detail = r.name + " failed";
        return false;
      }
      if (r.tier != "exact" && r.tier != "constant" && r.tier != "proportional" &&
          r.tier != "variety-proportional") {
        detail = r.name + " passed at unexpected tier " + r.tier;
        return false;
      }
    }
    detail = std::to_string(identities) + " identities verified (tier recorded per check)";
    return identities >= 19;
  }});

  criteria.push_back({"criterion 8: dichotomy draws (100 generic, 20 perpendicular)", 300.0,
                      [&summary](std::string& detail) {
    for (const auto& r : summary.results) {
      if (r.name == "generic_draws_nonzero" && !r.pass) {
        detail = "a generic draw vanished";
        return false;
      }
      if (r.name == "perpendicular_draws_zero" && !r.pass) {
        detail = "a perpendicular draw did not vanish";
        return false;
      }
    }
    detail = "100/100 nonzero, 20/20 zero";
    return true;
  }});

  // 9. Engine property suite.
  criteria.push_back({"criterion 9: engine property suite (1000 cases)", 30.0,
                      [](std::string& detail) {
    Rng rng(909);
    const auto ctx = TrigContext::full();
    auto random_poly = [&rng]() {
      static const Var vars[] = {Var::S, Var::T, Var::P,  Var::Q,
                                 Var::R, Var::SA, Var::CA, Var::W};
      MultiPoly out;
      const int terms = 1 + static_cast<int>(rng.below(4));
      for (int i = 0; i < terms; ++i) {
        Mono m = kMonoOne;
        const int factors = static_cast<int>(rng.below(4));
        for (int f = 0; f < factors; ++f) {
          const Var v = vars[rng.below(8)];
          m = mono_set(m, v, std::min(mono_get(m, v) + 1, 4u));
        }
        out = out + MultiPoly::from_terms({{m, rng.small_rational(9, 4)}});
      }
      return out;
    };
    auto relation_point = [&rng]() {
      std::map<Var, Rational> asg;
      const auto a = half_angle_point(rng.small_rational(9, 5));
      asg[Var::SA] = a.sin_v;
      asg[Var::CA] = a.cos_v;
      asg[Var::SB] = Rational(0);
      asg[Var::CB] = Rational(1);
      asg[Var::W] = a.sin_v.abs();  // w^2 = sa^2 cb^2 + sb^2 = sa^2
      asg[Var::SG] = Rational(0);
      asg[Var::CG] = Rational(1);
      asg[Var::S] = rng.small_rational(9, 5);
      asg[Var::T] = rng.small_rational(9, 5);
      asg[Var::P] = rng.small_rational(9, 5);
      asg[Var::Q] = rng.small_rational(9, 5);
      asg[Var::R] = rng.small_rational(9, 5);
      return asg;
    };
    const MultiPoly splus = MultiPoly::constant(1) + MultiPoly::variable(Var::S, 2);
    for (int i = 0; i < 1000; ++i) {
      MultiPoly a = random_poly(), b = random_poly(), c = random_poly();
      if (a + b != b + a || a * b != b * a) { detail = "commutativity"; return false; }
      if ((a + b) + c != a + (b + c)) { detail = "associativity"; return false; }
      if (a * (b + c) != a * b + a * c) { detail = "distributivity"; return false; }
      if (poly_derivative(a * b, Var::S) !=
          poly_derivative(a, Var::S) * b + a * poly_derivative(b, Var::S)) {
        detail = "product rule";
        return false;
      }
      if (poly_derivative(poly_derivative(a, Var::S), Var::T) !=
          poly_derivative(poly_derivative(a, Var::T), Var::S)) {
        detail = "mixed partials";
        return false;
      }
      const MultiPoly ra = reduce(a, ctx);
      if (reduce(ra, ctx) != ra) { detail = "reduce idempotence"; return false; }
      if (reduce(a * b, ctx) != reduce(ra * reduce(b, ctx), ctx)) {
        detail = "reduce homomorphism";
        return false;
      }
      const auto asg = relation_point();
      if (poly_eval(ra, asg) != poly_eval(a, asg)) {
        detail = "eval after reduce changed";
        return false;
      }
      if (!b.is_zero()) {
        RatFunc raw{a * splus, b * splus};
        RatFunc cooked = cancel_structured(raw, {splus});
        const Rational dv = poly_eval(raw.den, asg);
        if (!dv.is_zero()) {
          const Rational cv = poly_eval(cooked.den, asg);
          if (poly_eval(raw.num, asg) * cv != poly_eval(cooked.num, asg) * dv) {
            detail = "cancellation changed the function";
            return false;
          }
        }
      }
    }
    detail = "1000/1000";
    return true;
  }});

  // 10. Determinism of the verification report.
  criteria.push_back({"criterion 10: verify-appendix determinism", 600.0,
                      [](std::string& detail) {
    VerificationOptions options;
    options.seed = 7;
    Json params;
    params["trials"] = options.trials;
    params["generic_draws"] = options.generic_draws;
    params["perp_draws"] = options.perp_draws;
    Json a = verification_json(run_verification(options));
    a["meta"] = meta_json("verify-appendix", options.seed, params);
    Json b = verification_json(run_verification(options));
    b["meta"] = meta_json("verify-appendix", options.seed, params);
    if (a.dump(2) != b.dump(2)) {
      detail = "reports differ between runs";
      return false;
    }
    detail = "byte-identical reports";
    return true;
  }});

  const bool ok = run_all(criteria);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
