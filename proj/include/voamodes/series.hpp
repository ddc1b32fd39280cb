#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "voamodes/errors.hpp"
#include "voamodes/rational.hpp"

namespace voamodes {

// x^exponent (log x)^logpow
struct SeriesKey {
  Rational exponent;
  int logpow = 0;
};

struct SeriesKeyLess {
  bool operator()(const SeriesKey& a, const SeriesKey& b) const {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    return a.logpow < b.logpow;
  }
};

namespace detail {
template <class Coeff>
bool coeff_zero(const Coeff& c) {
  return is_zero(c);
}
}  // namespace detail

// Finitely supported series in x^r (log x)^k with coefficients in Coeff.
// Coeff must be default-constructible as zero and support +=, -=, *= Rational
// and an unqualified is_zero().
template <class Coeff>
class LogLaurent {
 public:
  using Terms = std::map<SeriesKey, Coeff, SeriesKeyLess>;

  explicit LogLaurent(int log_order = 0) : log_order_(log_order) {}

  static LogLaurent monomial(const Rational& exponent, const Coeff& c, int logpow = 0,
                             int log_order = 0) {
    LogLaurent s(std::max(log_order, logpow));
    s.add_term(exponent, logpow, c);
    return s;
  }

  int log_order() const { return log_order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Rational& exponent, int logpow, const Coeff& c) {
    if (logpow < 0 || logpow > log_order_)
      throw LogOrderExceeded("log power " + std::to_string(logpow) + " exceeds declared order " +
                             std::to_string(log_order_));
    if (coefficient_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(SeriesKey{exponent, logpow}, c);
    if (!inserted) {
      it->second += c;
      if (coefficient_is_zero(it->second)) terms_.erase(it);
    }
  }
  void add_term(const Rational& exponent, const Coeff& c) { add_term(exponent, 0, c); }

  Coeff coefficient(const Rational& exponent, int logpow = 0) const {
    auto it = terms_.find(SeriesKey{exponent, logpow});
    return it == terms_.end() ? Coeff{} : it->second;
  }

  LogLaurent& operator+=(const LogLaurent& o) {
    if (o.log_order_ > log_order_) log_order_ = o.log_order_;
    for (const auto& [k, c] : o.terms_) add_term(k.exponent, k.logpow, c);
    return *this;
  }
  LogLaurent& operator-=(const LogLaurent& o) {
    if (o.log_order_ > log_order_) log_order_ = o.log_order_;
    for (const auto& [k, c] : o.terms_) {
      Coeff neg = c;
      neg *= Rational(-1);
      add_term(k.exponent, k.logpow, neg);
    }
    return *this;
  }
  LogLaurent& operator*=(const Rational& s) {
    if (voamodes::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend LogLaurent operator+(LogLaurent a, const LogLaurent& b) { return a += b; }
  friend LogLaurent operator-(LogLaurent a, const LogLaurent& b) { return a -= b; }
  friend LogLaurent operator*(const Rational& s, LogLaurent a) { return a *= s; }

  friend bool operator==(const LogLaurent& a, const LogLaurent& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j) {
      if (i->first.exponent != j->first.exponent || i->first.logpow != j->first.logpow)
        return false;
      if (!(i->second == j->second)) return false;
    }
    return true;
  }

  // Multiply by x^shift.
  LogLaurent shifted(const Rational& shift) const {
    LogLaurent out(log_order_);
    for (const auto& [k, c] : terms_) out.add_term(k.exponent + shift, k.logpow, c);
    return out;
  }

  // d/dx, with d/dx (log x)^k = k x^{-1} (log x)^{k-1}.
  LogLaurent derivative() const {
    LogLaurent out(log_order_);
    for (const auto& [k, c] : terms_) {
      if (!voamodes::is_zero(k.exponent)) {
        Coeff t = c;
        t *= k.exponent;
        out.add_term(k.exponent - 1, k.logpow, t);
      }
      if (k.logpow > 0) {
        Coeff t = c;
        t *= Rational(k.logpow);
        out.add_term(k.exponent - 1, k.logpow - 1, t);
      }
    }
    return out;
  }

  // Keep only exponents in [lo, hi].
  LogLaurent window(const Rational& lo, const Rational& hi) const {
    LogLaurent out(log_order_);
    for (const auto& [k, c] : terms_)
      if (k.exponent >= lo && k.exponent <= hi) out.add_term(k.exponent, k.logpow, c);
    return out;
  }

  std::optional<Rational> min_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.exponent;
  }
  std::optional<Rational> max_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.exponent;
  }

 private:
  static bool coefficient_is_zero(const Coeff& c) { return detail::coeff_zero(c); }

  int log_order_ = 0;
  Terms terms_;
};

using ScalarSeries = LogLaurent<Rational>;

// Product of a scalar series with a series over Coeff; terms with exponent
// above `max_exponent` (when given) are discarded.
template <class Coeff>
LogLaurent<Coeff> multiply(const ScalarSeries& a, const LogLaurent<Coeff>& b,
                           std::optional<Rational> max_exponent = std::nullopt) {
  LogLaurent<Coeff> out(a.log_order() + b.log_order());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      Rational e = ka.exponent + kb.exponent;
      if (max_exponent && e > *max_exponent) continue;
      Coeff t = cb;
      t *= ca;
      out.add_term(e, ka.logpow + kb.logpow, t);
    }
  }
  return out;
}

inline ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  return multiply(a, b);
}

// Coefficient of x^{-1}.
template <class Coeff>
Coeff residue(const LogLaurent<Coeff>& s) {
  for (const auto& [k, c] : s.terms())
    if (k.logpow != 0) throw LogPresent("residue of a series carrying log x");
  return s.coefficient(Rational(-1), 0);
}

// The log-free series formed by the (log x)^k terms.
template <class Coeff>
LogLaurent<Coeff> coeff_log(const LogLaurent<Coeff>& s, int k) {
  LogLaurent<Coeff> out(0);
  for (const auto& [key, c] : s.terms())
    if (key.logpow == k) out.add_term(key.exponent, 0, c);
  return out;
}

// Value at x = 1; log 1 = 0 kills every term with logpow > 0.
template <class Coeff>
Coeff evaluate_at_one(const LogLaurent<Coeff>& s) {
  Coeff out{};
  for (const auto& [k, c] : s.terms())
    if (k.logpow == 0) out += c;
  return out;
}

// sum_{m <= alpha + order} binom(alpha, m) x^{alpha - m}
inline ScalarSeries truncated_taylor(long alpha, long order) {
  ScalarSeries s;
  for (long m = 0; m <= alpha + order; ++m) s.add_term(Rational(alpha - m), gen_binomial(alpha, m));
  return s;
}

// Same polynomial but with the inner sum cut at m <= bound; used only to
// compare the two readings of the product's upper limit.
inline ScalarSeries taylor_with_bound(long alpha, long bound) {
  ScalarSeries s;
  for (long m = 0; m <= bound; ++m) s.add_term(Rational(alpha - m), gen_binomial(alpha, m));
  return s;
}

// (1+x)^alpha up to x^maxdeg
inline ScalarSeries binom_series(const Rational& alpha, long maxdeg) {
  ScalarSeries s;
  for (long m = 0; m <= maxdeg; ++m) s.add_term(Rational(m), falling_binomial(alpha, m));
  return s;
}

// (log(1+x))^n up to x^maxdeg
inline ScalarSeries log1p_power(long n, long maxdeg) {
  ScalarSeries l;
  for (long m = 1; m <= maxdeg; ++m)
    l.add_term(Rational(m), sign_power(m + 1) * make_rational(1, m));
  ScalarSeries out = ScalarSeries::monomial(Rational(0), Rational(1));
  for (long i = 0; i < n; ++i) out = multiply(l, out, Rational(maxdeg));
  return out;
}

inline std::string to_string(const ScalarSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*x^(" << k.exponent.get_str() << ")";
    if (k.logpow) os << "*log(x)^" << k.logpow;
  }
  return os.str();
}

// Render a series with coefficients that provide str().
template <class Coeff>
std::string render(const LogLaurent<Coeff>& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*x^(" << k.exponent.get_str() << ")";
    if (k.logpow) os << "*log(x)^" << k.logpow;
  }
  return os.str();
}

}  // namespace voamodes
