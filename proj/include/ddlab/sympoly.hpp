// Sparse multivariate polynomials and rational functions over Rational.
//
// The variable alphabet is fixed and ordered:
//   s, t, p, q, r, sa, ca, sb, cb, sg, cg, w
// where (sa, ca), (sb, cb), (sg, cg) are sine/cosine pairs of three angles
// and w is an adjoined square root (the norm of a direction vector).
//
// A TrigContext selects rewrite relations
//   ca^2 -> 1 - sa^2,  cb^2 -> 1 - sb^2,  cg^2 -> 1 - sg^2,  w^2 -> w_rhs
// (w_rhs defaults to sa^2*cb^2 + sb^2). reduce() lowers every exponent of
// ca, cb, cg, w below 2, giving the unique normal form of the quotient ring:
// polynomials multilinear in the cosines and in w. reduce is idempotent and a
// ring homomorphism onto the quotient.
//
// Rational functions carry a structured cancellation contract instead of a
// general multivariate gcd: fractions are lowered by exact trial division
// against a caller-supplied factor list plus monomial and rational content
// removal. The denominator is normalized primitive with positive leading
// coefficient under the graded-lex order.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddlab/rational.hpp"

namespace ddlab {

enum class Var : unsigned {
  S = 0,
  T,
  P,
  Q,
  R,
  SA,
  CA,
  SB,
  CB,
  SG,
  CG,
  W,
};

inline constexpr unsigned kVarCount = 12;
inline constexpr unsigned kMaxExponent = 31;  // 5 bits per variable

const char* var_name(Var v);

// Exponent vectors are packed into one 64-bit word, 5 bits per variable, with
// s in the highest field so a raw integer compare is the lex compare.
using Mono = std::uint64_t;

inline constexpr unsigned mono_shift(Var v) {
  return 5u * (kVarCount - 1u - static_cast<unsigned>(v));
}
inline constexpr Mono kMonoOne = 0;

inline unsigned mono_get(Mono m, Var v) { return (m >> mono_shift(v)) & 31u; }
inline Mono mono_set(Mono m, Var v, unsigned e) {
  return (m & ~(Mono(31) << mono_shift(v))) | (Mono(e & 31u) << mono_shift(v));
}
inline Mono mono_of(Var v, unsigned e = 1) { return Mono(e & 31u) << mono_shift(v); }
inline unsigned mono_degree(Mono m) {
  unsigned d = 0;
  for (unsigned i = 0; i < kVarCount; ++i) d += (m >> (5u * i)) & 31u;
  return d;
}
// Graded-lex: total degree first, then lex with s most significant.
inline bool mono_greater(Mono a, Mono b) {
  const unsigned da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  return a > b;
}
// Componentwise divisibility (a divisible by b) and quotient.
bool mono_divisible(Mono a, Mono b);
inline Mono mono_div(Mono a, Mono b) { return a - b; }

struct Term {
  Mono mono = kMonoOne;
  Rational coeff;
};

class MultiPoly {
 public:
  MultiPoly() = default;

  static MultiPoly constant(Rational c);
  static MultiPoly constant(long long c) { return constant(Rational(c)); }
  static MultiPoly variable(Var v, unsigned e = 1);
  // Collapses duplicates, drops zeros, sorts descending graded-lex.
  static MultiPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == kMonoOne);
  }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const;  // throws on zero polynomial

  unsigned degree_in(Var v) const;
  unsigned total_degree() const;
  bool uses(Var v) const { return degree_in(v) > 0; }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly scaled(const Rational& c) const;

  // Canonical text form: terms in descending graded-lex order, each printed
  // as coeff or coeff*var[^e]*..., joined by " + ". This is the golden-file
  // format used by regression tests.
  std::string str() const;

 private:
  friend MultiPoly poly_mul(const MultiPoly&, const MultiPoly&);
  std::vector<Term> terms_;  // sorted descending, never a zero coefficient
};

inline MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
inline MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b) { return a - b; }
inline MultiPoly poly_neg(const MultiPoly& a) { return -a; }
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);

// Formal partial derivative; only s and t are differentiation variables, all
// other symbols are parameters. Throws std::invalid_argument otherwise.
MultiPoly poly_derivative(const MultiPoly& f, Var v);

struct TrigContext {
  bool ca_rel = false, cb_rel = false, cg_rel = false, w_rel = false;
  bool explicit_w_rhs = false;
  MultiPoly w_rhs;  // replacement for w^2 when w_rel is set

  // All four relations, w^2 -> sa^2*cb^2 + sb^2.
  static TrigContext full();
  // The three cosine relations only.
  static TrigContext cosines();
  static TrigContext none() { return {}; }
  // Cosine relations plus a custom w^2 replacement (used when the trig
  // symbols are numerically bound and the norm collapses to a constant).
  static TrigContext with_w_rhs(MultiPoly rhs);
  // Only the w relation, with an explicit replacement. This is the
  // free-cosine setting a plain CAS works in: sines and cosines are
  // independent symbols and only the square root is resolved.
  static TrigContext w_only(MultiPoly rhs);

  // The default w relation is stated in terms of the cosine normal form, so
  // w_rel requires ca_rel and cb_rel unless an explicit replacement was set.
  void validate() const;
};

// Normal form modulo the active relations; idempotent.
MultiPoly reduce(const MultiPoly& f, const TrigContext& ctx);

inline MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b,
                          const TrigContext& ctx) {
  return reduce(poly_mul(a, b), ctx);
}

// Exact evaluation; throws std::invalid_argument when a variable of f has no
// assignment.
Rational poly_eval(const MultiPoly& f, const std::map<Var, Rational>& assignment);

// The polynomial in the remaining variables multiplying s^s_deg * t^t_deg.
MultiPoly coefficient(const MultiPoly& f, unsigned s_deg, unsigned t_deg);

// Plugs an exact value into one variable.
MultiPoly substitute(const MultiPoly& f, Var v, const Rational& value);

// Splits a (reduced, hence w-linear) polynomial as A + B*w.
std::pair<MultiPoly, MultiPoly> split_at_w(const MultiPoly& f);

// Quotient when g divides f exactly, std::nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g);

// Positive rational c such that f/c has coprime integer coefficients.
Rational poly_content(const MultiPoly& f);

struct DivisionByZeroPoly : std::domain_error {
  DivisionByZeroPoly() : std::domain_error("rational function: division by zero") {}
};

struct PipeContext {
  TrigContext trig;
  std::vector<MultiPoly> factors;  // structured cancellation list
};

// Quotient of two polynomials. Normal form: den not identically zero, den
// primitive with positive leading coefficient, num and den free of the listed
// structured factors and of common monomial content.
struct RatFunc {
  MultiPoly num;
  MultiPoly den = MultiPoly::constant(1);

  bool is_zero() const { return num.is_zero(); }

  static RatFunc make(MultiPoly num, MultiPoly den, const PipeContext& pipe);
  static RatFunc from_poly(MultiPoly p) { return {std::move(p), MultiPoly::constant(1)}; }
};

RatFunc rf_add(const RatFunc& a, const RatFunc& b, const PipeContext& pipe);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b, const PipeContext& pipe);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b, const PipeContext& pipe);
// Throws DivisionByZeroPoly when b's numerator is identically zero.
RatFunc rf_div(const RatFunc& a, const RatFunc& b, const PipeContext& pipe);
// Quotient rule (num/den)' = (num'*den - num*den')/den^2, then cancellation.
RatFunc rf_derivative(const RatFunc& f, Var v, const PipeContext& pipe);

// Repeated exact trial division of num and den by each listed factor while
// both stay divisible, then monomial-content and rational-content removal and
// sign normalization. Never changes the represented function.
RatFunc cancel_structured(RatFunc f, const std::vector<MultiPoly>& factors);

// Probabilistic equality of f and g as functions on the trig variety
// (relation-respecting points). Sine/cosine pairs are sampled through the
// tangent half-angle map; the w-linear parts are compared separately, which
// is equivalent to demanding agreement at both square-root signs. With total
// degree <= 64 and coordinates of size 2^31, each trial fails spuriously with
// probability < 2^-24, so the default 50 trials are far below 2^-30 overall.
bool identity_test_random(const MultiPoly& f, const MultiPoly& g, int trials,
                          std::uint64_t seed, const TrigContext& ctx);

}  // namespace ddlab
