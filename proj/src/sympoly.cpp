#include "ddlab/sympoly.hpp"

#include <algorithm>
#include <unordered_map>

#include "ddlab/rng.hpp"

namespace ddlab {

const char* var_name(Var v) {
  static const char* names[kVarCount] = {"s",  "t",  "p",  "q",  "r",  "sa",
                                         "ca", "sb", "cb", "sg", "cg", "w"};
  return names[static_cast<unsigned>(v)];
}

bool mono_divisible(Mono a, Mono b) {
  for (unsigned i = 0; i < kVarCount; ++i) {
    if (((a >> (5u * i)) & 31u) < ((b >> (5u * i)) & 31u)) return false;
  }
  return true;
}

namespace {

struct MonoHash {
  std::size_t operator()(Mono m) const {
    std::uint64_t z = m + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

struct MonoGreaterCmp {
  bool operator()(Mono a, Mono b) const { return mono_greater(a, b); }
};

using Accumulator = std::unordered_map<Mono, Rational, MonoHash>;

MultiPoly collect(Accumulator&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [mono, coeff] : acc) {
    if (!coeff.is_zero()) out.push_back({mono, std::move(coeff)});
  }
  return MultiPoly::from_terms(std::move(out));
}

void max_degrees(const MultiPoly& p, unsigned out[kVarCount]) {
  for (unsigned i = 0; i < kVarCount; ++i) out[i] = 0;
  for (const Term& t : p.terms())
    for (unsigned i = 0; i < kVarCount; ++i)
      out[i] = std::max(out[i], static_cast<unsigned>((t.mono >> (5u * i)) & 31u));
}

}  // namespace

MultiPoly MultiPoly::constant(Rational c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.push_back({kMonoOne, std::move(c)});
  return p;
}

MultiPoly MultiPoly::variable(Var v, unsigned e) {
  if (e == 0) return constant(1);
  if (e > kMaxExponent) throw std::overflow_error("MultiPoly: exponent too large");
  MultiPoly p;
  p.terms_.push_back({mono_of(v, e), Rational(1)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return mono_greater(a.mono, b.mono); });
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly: leading term of zero");
  return terms_.front();
}

unsigned MultiPoly::degree_in(Var v) const {
  unsigned d = 0;
  for (const Term& t : terms_) d = std::max(d, mono_get(t.mono, v));
  return d;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const Term& t : terms_) d = std::max(d, mono_degree(t.mono));
  return d;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    const Term& ta = a.terms_[i];
    const Term& tb = b.terms_[j];
    if (ta.mono == tb.mono) {
      Rational c = ta.coeff + tb.coeff;
      if (!c.is_zero()) out.terms_.push_back({ta.mono, std::move(c)});
      ++i;
      ++j;
    } else if (mono_greater(ta.mono, tb.mono)) {
      out.terms_.push_back(ta);
      ++i;
    } else {
      out.terms_.push_back(tb);
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out;
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.mono, -t.coeff});
  return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return poly_mul(a, b); }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono) return false;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return MultiPoly();
  MultiPoly out;
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.mono, t.coeff * c});
  return out;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  unsigned da[kVarCount], db[kVarCount];
  max_degrees(a, da);
  max_degrees(b, db);
  for (unsigned i = 0; i < kVarCount; ++i)
    if (da[i] + db[i] > kMaxExponent)
      throw std::overflow_error("poly_mul: exponent field overflow");

  // keep the smaller operand in the inner loop for cache friendliness
  const MultiPoly& big = a.term_count() >= b.term_count() ? a : b;
  const MultiPoly& small = a.term_count() >= b.term_count() ? b : a;

  Accumulator acc;
  acc.reserve(std::min<std::size_t>(big.term_count() * small.term_count(),
                                    big.term_count() * 4 + 64));
  for (const Term& tb : big.terms()) {
    for (const Term& ts : small.terms()) {
      const Mono key = tb.mono + ts.mono;  // carry-free: checked above
      acc[key].add_mul(tb.coeff, ts.coeff);
    }
  }
  return collect(std::move(acc));
}

MultiPoly poly_derivative(const MultiPoly& f, Var v) {
  if (v != Var::S && v != Var::T)
    throw std::invalid_argument("poly_derivative: only s and t are differentiable");
  std::vector<Term> out;
  out.reserve(f.term_count());
  for (const Term& t : f.terms()) {
    const unsigned e = mono_get(t.mono, v);
    if (e == 0) continue;
    out.push_back({mono_set(t.mono, v, e - 1),
                   t.coeff * Rational(static_cast<long long>(e))});
  }
  return MultiPoly::from_terms(std::move(out));
}

TrigContext TrigContext::full() {
  TrigContext ctx;
  ctx.ca_rel = ctx.cb_rel = ctx.cg_rel = ctx.w_rel = true;
  ctx.w_rhs = MultiPoly::variable(Var::SA, 2) * MultiPoly::variable(Var::CB, 2) +
              MultiPoly::variable(Var::SB, 2);
  return ctx;
}

TrigContext TrigContext::cosines() {
  TrigContext ctx;
  ctx.ca_rel = ctx.cb_rel = ctx.cg_rel = true;
  return ctx;
}

TrigContext TrigContext::with_w_rhs(MultiPoly rhs) {
  TrigContext ctx = cosines();
  ctx.w_rel = true;
  ctx.explicit_w_rhs = true;
  ctx.w_rhs = std::move(rhs);
  return ctx;
}

TrigContext TrigContext::w_only(MultiPoly rhs) {
  TrigContext ctx;
  ctx.w_rel = true;
  ctx.explicit_w_rhs = true;
  ctx.w_rhs = std::move(rhs);
  return ctx;
}

void TrigContext::validate() const {
  if (w_rel && w_rhs.is_zero())
    throw std::invalid_argument("TrigContext: w relation needs a replacement");
  if (w_rel && !explicit_w_rhs && !(ca_rel && cb_rel))
    throw std::invalid_argument("TrigContext: w relation requires ca and cb relations");
}

namespace {

// One cosine-square replacement: var^2 -> rhs.
struct Relation {
  Var v;
  const MultiPoly* rhs;
};

bool term_reducible(Mono m, const std::vector<Relation>& rels) {
  for (const Relation& r : rels)
    if (mono_get(m, r.v) >= 2) return true;
  return false;
}

}  // namespace

MultiPoly reduce(const MultiPoly& f, const TrigContext& ctx) {
  ctx.validate();
  const MultiPoly one_minus_sa2 =
      MultiPoly::constant(1) - MultiPoly::variable(Var::SA, 2);
  const MultiPoly one_minus_sb2 =
      MultiPoly::constant(1) - MultiPoly::variable(Var::SB, 2);
  const MultiPoly one_minus_sg2 =
      MultiPoly::constant(1) - MultiPoly::variable(Var::SG, 2);

  std::vector<Relation> rels;
  if (ctx.ca_rel) rels.push_back({Var::CA, &one_minus_sa2});
  if (ctx.cb_rel) rels.push_back({Var::CB, &one_minus_sb2});
  if (ctx.cg_rel) rels.push_back({Var::CG, &one_minus_sg2});
  if (ctx.w_rel) rels.push_back({Var::W, &ctx.w_rhs});
  if (rels.empty()) return f;

  MultiPoly cur = f;
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (const Term& t : cur.terms()) {
      if (term_reducible(t.mono, rels)) {
        dirty = true;
        break;
      }
    }
    if (!dirty) break;

    std::map<std::pair<unsigned, unsigned>, MultiPoly> pow_cache;
    auto rhs_pow = [&](unsigned rel_idx, unsigned k) -> const MultiPoly& {
      auto key = std::make_pair(rel_idx, k);
      auto it = pow_cache.find(key);
      if (it != pow_cache.end()) return it->second;
      MultiPoly p = MultiPoly::constant(1);
      for (unsigned i = 0; i < k; ++i) p = poly_mul(p, *rels[rel_idx].rhs);
      return pow_cache.emplace(key, std::move(p)).first->second;
    };

    std::vector<Term> out;
    out.reserve(cur.term_count() * 2);
    for (const Term& t : cur.terms()) {
      if (!term_reducible(t.mono, rels)) {
        out.push_back(t);
        continue;
      }
      Mono base = t.mono;
      MultiPoly factor = MultiPoly::constant(t.coeff);
      for (unsigned ri = 0; ri < rels.size(); ++ri) {
        const unsigned e = mono_get(base, rels[ri].v);
        if (e >= 2) {
          base = mono_set(base, rels[ri].v, e & 1u);
          factor = poly_mul(factor, rhs_pow(ri, e >> 1));
        }
      }
      for (const Term& ft : factor.terms())
        out.push_back({ft.mono + base, ft.coeff});
    }
    cur = MultiPoly::from_terms(std::move(out));
  }
  return cur;
}

Rational poly_eval(const MultiPoly& f, const std::map<Var, Rational>& assignment) {
  // power tables per variable, built lazily up to the needed degree
  std::vector<std::vector<Rational>> powers(kVarCount);
  for (unsigned i = 0; i < kVarCount; ++i) {
    const Var v = static_cast<Var>(i);
    const unsigned d = f.degree_in(v);
    if (d == 0) continue;
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw std::invalid_argument(std::string("poly_eval: unbound variable ") +
                                  var_name(v));
    auto& tab = powers[i];
    tab.resize(d + 1);
    tab[0] = Rational(1);
    for (unsigned e = 1; e <= d; ++e) tab[e] = tab[e - 1] * it->second;
  }
  Rational acc(0);
  for (const Term& t : f.terms()) {
    Rational val = t.coeff;
    for (unsigned i = 0; i < kVarCount; ++i) {
      const unsigned e = mono_get(t.mono, static_cast<Var>(i));
      if (e) val *= powers[i][e];
    }
    acc += val;
  }
  return acc;
}

MultiPoly coefficient(const MultiPoly& f, unsigned s_deg, unsigned t_deg) {
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (mono_get(t.mono, Var::S) == s_deg && mono_get(t.mono, Var::T) == t_deg) {
      Mono m = mono_set(mono_set(t.mono, Var::S, 0), Var::T, 0);
      out.push_back({m, t.coeff});
    }
  }
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly substitute(const MultiPoly& f, Var v, const Rational& value) {
  std::vector<Term> out;
  out.reserve(f.term_count());
  for (const Term& t : f.terms()) {
    const unsigned e = mono_get(t.mono, v);
    if (e == 0) {
      out.push_back(t);
    } else {
      Rational c = t.coeff * value.pow(e);
      if (!c.is_zero()) out.push_back({mono_set(t.mono, v, 0), std::move(c)});
    }
  }
  return MultiPoly::from_terms(std::move(out));
}

std::pair<MultiPoly, MultiPoly> split_at_w(const MultiPoly& f) {
  std::vector<Term> a, b;
  for (const Term& t : f.terms()) {
    const unsigned e = mono_get(t.mono, Var::W);
    if (e == 0) {
      a.push_back(t);
    } else if (e == 1) {
      b.push_back({mono_set(t.mono, Var::W, 0), t.coeff});
    } else {
      throw std::logic_error("split_at_w: polynomial is not linear in w");
    }
  }
  return {MultiPoly::from_terms(std::move(a)), MultiPoly::from_terms(std::move(b))};
}

std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
  if (f.is_zero()) return MultiPoly();
  unsigned df[kVarCount], dg[kVarCount];
  max_degrees(f, df);
  max_degrees(g, dg);
  for (unsigned i = 0; i < kVarCount; ++i) {
    if (df[i] < dg[i]) return std::nullopt;
    if (df[i] + dg[i] > kMaxExponent) return std::nullopt;  // avoid field overflow
  }

  std::map<Mono, Rational, MonoGreaterCmp> rem;
  for (const Term& t : f.terms()) rem.emplace(t.mono, t.coeff);
  const Term& glead = g.leading_term();
  std::vector<Term> quot;

  while (!rem.empty()) {
    const auto lead = rem.begin();
    if (!mono_divisible(lead->first, glead.mono)) return std::nullopt;
    const Mono qm = mono_div(lead->first, glead.mono);
    const Rational qc = lead->second / glead.coeff;
    quot.push_back({qm, qc});
    for (const Term& gt : g.terms()) {
      const Mono key = gt.mono + qm;
      auto it = rem.find(key);
      if (it == rem.end()) {
        Rational c = -(qc * gt.coeff);
        if (!c.is_zero()) rem.emplace(key, std::move(c));
      } else {
        it->second -= qc * gt.coeff;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  return MultiPoly::from_terms(std::move(quot));
}

Rational poly_content(const MultiPoly& f) {
  if (f.is_zero()) return Rational(1);
  mpz_t gnum, lden;
  mpz_init_set_ui(gnum, 0);
  mpz_init_set_ui(lden, 1);
  for (const Term& t : f.terms()) {
    mpz_gcd(gnum, gnum, mpq_numref(t.coeff.raw()));
    mpz_lcm(lden, lden, mpq_denref(t.coeff.raw()));
  }
  Rational out;
  mpz_set(mpq_numref(out.raw()), gnum);
  mpz_set(mpq_denref(out.raw()), lden);
  mpq_canonicalize(out.raw());
  mpz_clear(gnum);
  mpz_clear(lden);
  return out.abs();
}

RatFunc cancel_structured(RatFunc f, const std::vector<MultiPoly>& factors) {
  if (f.den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
  if (f.num.is_zero()) return {MultiPoly(), MultiPoly::constant(1)};

  bool progress = true;
  while (progress) {
    progress = false;
    for (const MultiPoly& fac : factors) {
      if (fac.is_constant()) continue;
      while (true) {
        auto qn = divide_exact(f.num, fac);
        if (!qn) break;
        auto qd = divide_exact(f.den, fac);
        if (!qd) break;
        f.num = std::move(*qn);
        f.den = std::move(*qd);
        progress = true;
      }
    }
  }

  // common monomial content of numerator and denominator
  unsigned mins[kVarCount];
  for (unsigned i = 0; i < kVarCount; ++i) mins[i] = kMaxExponent;
  auto fold = [&](const MultiPoly& p) {
    for (const Term& t : p.terms())
      for (unsigned i = 0; i < kVarCount; ++i)
        mins[i] = std::min(mins[i], static_cast<unsigned>((t.mono >> (5u * i)) & 31u));
  };
  fold(f.num);
  fold(f.den);
  Mono common = kMonoOne;
  for (unsigned i = 0; i < kVarCount; ++i) common |= Mono(mins[i]) << (5u * i);
  if (common != kMonoOne) {
    auto strip = [&](MultiPoly& p) {
      std::vector<Term> out;
      out.reserve(p.term_count());
      for (const Term& t : p.terms()) out.push_back({t.mono - common, t.coeff});
      p = MultiPoly::from_terms(std::move(out));
    };
    strip(f.num);
    strip(f.den);
  }

  // integer coefficients on both sides with no shared content, denominator
  // leading coefficient positive
  const Rational cn = poly_content(f.num);
  Rational cd = poly_content(f.den);
  if (f.den.leading_term().coeff.sign() < 0) cd = -cd;
  const Rational ratio = cn / cd;
  f.num = f.num.scaled(ratio.numerator() / cn);
  f.den = f.den.scaled(ratio.denominator() / cd);
  return f;
}

RatFunc RatFunc::make(MultiPoly num, MultiPoly den, const PipeContext& pipe) {
  num = reduce(num, pipe.trig);
  den = reduce(den, pipe.trig);
  if (den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
  return cancel_structured({std::move(num), std::move(den)}, pipe.factors);
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b, const PipeContext& pipe) {
  MultiPoly num = poly_mul(a.num, b.den, pipe.trig) + poly_mul(b.num, a.den, pipe.trig);
  return RatFunc::make(std::move(num), poly_mul(a.den, b.den, pipe.trig), pipe);
}

RatFunc rf_sub(const RatFunc& a, const RatFunc& b, const PipeContext& pipe) {
  MultiPoly num = poly_mul(a.num, b.den, pipe.trig) - poly_mul(b.num, a.den, pipe.trig);
  return RatFunc::make(std::move(num), poly_mul(a.den, b.den, pipe.trig), pipe);
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b, const PipeContext& pipe) {
  return RatFunc::make(poly_mul(a.num, b.num, pipe.trig),
                       poly_mul(a.den, b.den, pipe.trig), pipe);
}

RatFunc rf_div(const RatFunc& a, const RatFunc& b, const PipeContext& pipe) {
  if (b.num.is_zero()) throw DivisionByZeroPoly();
  return RatFunc::make(poly_mul(a.num, b.den, pipe.trig),
                       poly_mul(a.den, b.num, pipe.trig), pipe);
}

RatFunc rf_derivative(const RatFunc& f, Var v, const PipeContext& pipe) {
  MultiPoly num = poly_mul(poly_derivative(f.num, v), f.den, pipe.trig) -
                  poly_mul(f.num, poly_derivative(f.den, v), pipe.trig);
  return RatFunc::make(std::move(num), poly_mul(f.den, f.den, pipe.trig), pipe);
}

bool identity_test_random(const MultiPoly& f, const MultiPoly& g, int trials,
                          std::uint64_t seed, const TrigContext& ctx) {
  if (trials < 1) throw std::invalid_argument("identity_test_random: trials must be >= 1");
  const MultiPoly d = reduce(f - g, ctx);
  if (d.is_zero()) return true;

  const bool separate_w = ctx.w_rel && d.uses(Var::W);
  MultiPoly part_a = d, part_b;
  if (separate_w) std::tie(part_a, part_b) = split_at_w(d);
  const bool free_w = !ctx.w_rel && d.uses(Var::W);

  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::map<Var, Rational> asg;
    const auto a_pair = half_angle_point(rng.rational31());
    const auto b_pair = half_angle_point(rng.rational31());
    const auto g_pair = half_angle_point(rng.rational31());
    asg[Var::SA] = a_pair.sin_v;
    asg[Var::CA] = a_pair.cos_v;
    asg[Var::SB] = b_pair.sin_v;
    asg[Var::CB] = b_pair.cos_v;
    asg[Var::SG] = g_pair.sin_v;
    asg[Var::CG] = g_pair.cos_v;
    asg[Var::S] = rng.rational31();
    asg[Var::T] = rng.rational31();
    asg[Var::P] = rng.rational31();
    asg[Var::Q] = rng.rational31();
    asg[Var::R] = rng.rational31();
    if (free_w) asg[Var::W] = rng.rational31();

    if (!poly_eval(part_a, asg).is_zero()) return false;
    if (separate_w && !part_b.is_zero()) {
      // agreement must hold at both square-root signs: the w-part has to
      // vanish wherever w itself is nonzero
      const Rational w2 = poly_eval(ctx.w_rhs, asg);
      if (!w2.is_zero() && !poly_eval(part_b, asg).is_zero()) return false;
    }
  }
  return true;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) out += " + ";
    first = false;
    out += t.coeff.str();
    for (unsigned i = 0; i < kVarCount; ++i) {
      const Var v = static_cast<Var>(i);
      const unsigned e = mono_get(t.mono, v);
      if (e == 0) continue;
      out += "*";
      out += var_name(v);
      if (e >= 2) {
        out += "^";
        out += std::to_string(e);
      }
    }
  }
  return out;
}

}  // namespace ddlab
