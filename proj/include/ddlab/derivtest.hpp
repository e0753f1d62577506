// Exact derivative test for the squared-distance function of a circle pair.
//
// The first circle is the unit circle in the xy-plane, parametrized by the
// half-angle map gamma1(s) = (2s/(1+s^2), (1-s^2)/(1+s^2), 0). The second has
// center (p, 0, q), radius r and spanning directions V1, V2 chosen per case;
// gamma2(t) uses the same half-angle map in its plane. rho(s,t) is the squared
// distance between gamma1(s) and gamma2(t), an exact rational function whose
// numerator is linear in w = |V2|.
//
// If rho(s,t) = phi1(phi2(s) + phi3(t)) on an open set for invertible analytic
// phi_i, then d^2 log|rho_t/rho_s| / ds dt vanishes there. The test computes
// the numerator of that expression with exact rational arithmetic: it is zero
// as a polynomial iff the mixed log-derivative vanishes identically. Families
// of point sets with few distinct distances can only live where the numerator
// vanishes, so nonvanishing certifies that no additive form exists.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddlab/geom.hpp"
#include "ddlab/rng.hpp"
#include "ddlab/sympoly.hpp"

namespace ddlab {

// Case split over the position of the second circle's plane H.
enum class ConfigCase {
  Generic,         // H in general position: V1=(ca,0,sa), V2=(cb*sa^2, sb, -ca*cb*sa)
  HParallelXZ,     // H parallel to the xz-plane: V1=(1,0,0), V2=(0,0,1)
  HParallelYZ,     // H parallel to the yz-plane: V1=(0,0,1), V2=(0,1,0)
  XAxisLines,      // H contains x-parallel lines: V1=(1,0,0), V2=(0,cg,sg)
  CenterOrigin,    // generic directions, p=q=0
  CosBetaZero,     // cb=0, sb=1: V2=(0,1,0)
  CosBetaZeroP0,   // additionally p=0
  CosAlphaZero,    // ca=0, sa=1: V1=(0,0,1), V2=(cb,sb,0)
  CosAlphaZeroP0,  // additionally p=0
  CosAlphaZeroQ0,  // additionally q=0
};

const char* case_name(ConfigCase c);
ConfigCase case_from_name(const std::string& name);  // throws on unknown name

struct DegenerateRho : std::domain_error {
  DegenerateRho() : std::domain_error("derivative test: rho_s or rho_t vanishes identically") {}
};

// A case tag plus exact parameter bindings. Unbound symbols stay symbolic.
// Bound sine/cosine pairs must sit exactly on the unit circle (use half-angle
// rationals); r must be positive when bound.
struct CircleConfig {
  ConfigCase tag = ConfigCase::Generic;
  std::map<Var, Rational> bindings;

  // Merges the case's forced bindings (e.g. p=q=0 for CenterOrigin), then
  // validates; throws std::invalid_argument on conflicts or bad values.
  static CircleConfig make(ConfigCase tag, std::map<Var, Rational> bindings = {});

  bool fully_bound() const;  // all parameters of the case numeric
};

// The exact circle pair described by a fully bound config; throws when
// symbolic parameters remain.
std::pair<Circle3, Circle3> config_circles(const CircleConfig& cfg);

struct RhoSystem {
  RatFunc rho;
  PipeContext pipe;    // trig relations + structured cancellation factors
  bool uses_w = false; // whether |V2| needed an adjoined square root
  MultiPoly norm_sq;   // reduced |V2|^2 (the w^2 replacement when uses_w)
};

RhoSystem build_rho(const CircleConfig& cfg);

// Same construction in the free-cosine setting a plain CAS works in: sine and
// cosine symbols stay independent (no unit-circle rewriting; only the square
// root of |V2|^2 is resolved). Published closed forms for the numerator
// coefficients live in this normalization; the quotient normal form cancels
// strictly more. Bindings are applied verbatim, so off-variety substitutions
// like ca=0 with sa symbolic are allowed here.
RhoSystem build_rho_published(ConfigCase tag, const std::map<Var, Rational>& bindings);

// Coaxial pair in parallel planes (the aligned control):
// rho = r1^2 + r2^2 + gap^2 - 2 r1 r2 cos(theta1 - theta2) through half-angle
// parameters. The symbol slots p, r, q carry r1, r2 and the plane gap.
RhoSystem build_rho_coaxial();

struct DerivTestParts {
  RatFunc g;            // the mixed log-derivative as a rational function
  MultiPoly numerator;  // its numerator, content-normalized to coprime integers
};

// d/ds ( h_t / h ) with h = rho_t/rho_s, computed as
// d/ds( rho_tt/rho_t ) - d/ds( rho_st/rho_s ) in exact rational arithmetic
// (the two forms agree identically; the split keeps structured cancellation
// complete). Throws DegenerateRho if rho_s or rho_t is identically zero.
DerivTestParts derivative_test_parts(const RhoSystem& system);

// Same test with the roles of s and t exchanged: d/dt ( h'_s / h' ) with
// h' = rho_s/rho_t. Equals the negative of the primary form as a function, so
// it vanishes for exactly the same configurations.
DerivTestParts derivative_test_parts_transposed(const RhoSystem& system);

inline MultiPoly derivative_test_numerator(const RhoSystem& system) {
  return derivative_test_parts(system).numerator;
}

enum class Verdict { ZeroEverywhere, NonzeroGeneric };

struct CheckResult {
  std::string name;
  std::string kind;  // "identity" | "zero-control" | "nonzero-draw" | "zero-draw"
  std::string tier;  // "exact" | "constant" | "proportional" | "zero" | "nonzero" | "failed"
  std::string normalization;  // "reduced" | "published" (identity checks)
  bool pass = false;
  std::string lambda;    // constant ratio for the "constant" tier
  std::string computed;  // canonical text of the computed polynomial
  std::string stated;    // canonical text of the expected closed form
};

struct DerivTestReport {
  CircleConfig config;
  MultiPoly numerator;
  bool is_zero = false;
  std::size_t term_count = 0;
  // coefficient of s^a t^b for every target this case is checked against
  std::vector<std::tuple<unsigned, unsigned, MultiPoly>> coefficients;
  // tiered comparisons against the known closed forms, for the targets whose
  // catalog configuration matches this config exactly
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::NonzeroGeneric;
};

DerivTestReport coefficient_report(const CircleConfig& cfg);

// One known closed form for a coefficient of the numerator (or for the whole
// numerator when whole_numerator is set). `published` selects the free-cosine
// normalization the closed form was derived in; `substitutions` are applied
// to the computed numerator before the coefficient is extracted (several
// published values are stated for a parameter slice of a larger run).
// Computed and stated sides are compared in normal form.
struct IdentityCheck {
  std::string name;
  ConfigCase tag;
  std::map<Var, Rational> extra_bindings;
  bool published = false;
  std::map<Var, Rational> substitutions;
  bool whole_numerator = false;
  unsigned s_deg = 0, t_deg = 0;
  MultiPoly stated;  // normal form
  int partner = -1;  // catalog index for the cross-multiplication tier
};

const std::vector<IdentityCheck>& identity_catalog();

struct VerificationOptions {
  int trials = 50;
  std::uint64_t seed = 0;
  int generic_draws = 100;
  int perp_draws = 20;
};

struct VerificationSummary {
  std::vector<CheckResult> results;
  bool all_pass = false;
};

// Runs every catalog identity (tiered comparison), the aligned and
// perpendicular zero controls, random generic draws (numerator must not
// vanish) and random perpendicular draws (numerator must vanish).
VerificationSummary run_verification(const VerificationOptions& options);

// Random fully bound Generic configuration (rejection-sampled so the exact
// classification of the two circles is Generic and rho is nondegenerate).
CircleConfig random_generic_config(Rng& rng);

// Random fully bound perpendicular configuration (xz-plane case with q=0).
CircleConfig random_perpendicular_config(Rng& rng);

}  // namespace ddlab
