#include "ddlab/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ddlab {

Rational::Rational(long long n) {
  mpq_init(q_);
  mpz_set_si(mpq_numref(q_), n);
}

Rational::Rational(long long num, long long den) {
  mpq_init(q_);
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  mpz_set_si(mpq_numref(q_), num);
  mpz_set_si(mpq_denref(q_), den);
  mpq_canonicalize(q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(q_, q_, o.q_);
  return *this;
}

Rational Rational::from_string(std::string_view s) {
  auto valid_int = [](std::string_view v) {
    if (!v.empty() && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string_view::npos) {
    num = s.substr(0, pos);
    den = s.substr(pos + 1);
  }
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("Rational: malformed value '" + std::string(s) + "'");
  Rational r;
  std::string buf = std::string(num) + "/" + std::string(den);
  if (mpq_set_str(r.q_, buf.c_str(), 10) != 0)
    throw std::invalid_argument("Rational: malformed value '" + std::string(s) + "'");
  if (mpz_sgn(mpq_denref(r.q_)) == 0)
    throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
  mpq_canonicalize(r.q_);
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  mpq_inv(r.q_, q_);
  return r;
}

Rational Rational::pow(unsigned long e) const {
  Rational r;
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), e);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), e);
  // canonical inputs stay canonical under powering
  return r;
}

Rational Rational::numerator() const {
  Rational r;
  mpz_set(mpq_numref(r.q_), mpq_numref(q_));
  return r;
}

Rational Rational::denominator() const {
  Rational r;
  mpz_set(mpq_numref(r.q_), mpq_denref(q_));
  return r;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  static thread_local Rational tmp;
  mpq_mul(tmp.q_, a.q_, b.q_);
  mpq_add(q_, q_, tmp.q_);
}

std::string Rational::str() const {
  std::vector<char> buf(mpz_sizeinbase(mpq_numref(q_), 10) +
                        mpz_sizeinbase(mpq_denref(q_), 10) + 4);
  mpq_get_str(buf.data(), 10, q_);
  std::string s(buf.data());
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace ddlab
