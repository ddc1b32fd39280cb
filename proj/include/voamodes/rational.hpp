#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace voamodes {

// Exact scalar; mpq_class keeps lowest terms with a positive denominator
// as long as every constructed value is canonicalized.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(start);
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw std::invalid_argument("malformed rational: " + s);
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("not an integer: " + r.get_str());
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
  return r.get_num().get_si();
}

inline mpz_class floor_of(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// Fractional part in [0, 1).
inline Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

inline Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// a(a-1)...(a-m+1)/m! for rational a.
inline Rational falling_binomial(const Rational& a, long m) {
  if (m < 0) return Rational(0);
  Rational num = 1;
  mpz_class den = 1;
  for (long i = 0; i < m; ++i) {
    num *= (a - i);
    den *= (i + 1);
  }
  Rational r = num / Rational(den);
  r.canonicalize();
  return r;
}

inline Rational gen_binomial(long a, long m) { return falling_binomial(Rational(a), m); }

}  // namespace voamodes
