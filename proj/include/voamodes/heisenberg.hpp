#pragma once

#include <string>

#include "voamodes/errors.hpp"
#include "voamodes/fock_vector.hpp"
#include "voamodes/free_field.hpp"
#include "voamodes/series.hpp"

namespace voamodes {

using VAElement = FockVector;

// Rank-one Heisenberg vertex operator algebra with omega = a(-1)^2 1 / 2.
// `cap` bounds the weight of every vector produced by a mode.
class HeisenbergVOA {
 public:
  explicit HeisenbergVOA(int cap) : cap_(cap), self_(Rational(0), Rational(0), cap) {
    if (cap < 0) throw ConfigError("negative weight cap");
  }

  int cap() const { return cap_; }
  const FreeFieldOperator& action() const { return self_; }

  static VAElement vacuum() { return VAElement(Partition{}); }
  static VAElement conformal_vector() { return VAElement(Partition{1, 1}, make_rational(1, 2)); }
  static Rational central_charge() { return Rational(1); }

  static int weight(const VAElement& v) {
    if (!v.is_homogeneous()) throw NonHomogeneous("weight of a mixed-weight element");
    return v.level();
  }

  // (Y_V)_n(v)u
  VAElement mode(const VAElement& v, long n, const VAElement& u) const {
    VAElement out;
    for (const auto& [d, vd] : v.by_level()) {
      for (const auto& [e, ue] : u.by_level()) {
        long t = e + d - n - 1;
        if (t < 0) continue;
        if (t > cap_)
          throw TruncationOverflow("weight " + std::to_string(t) + " exceeds cap " +
                                   std::to_string(cap_));
        out += self_.component(vd, ue, static_cast<int>(t));
      }
    }
    return out;
  }

  // L(n)v = omega_{n+1} v
  VAElement L(long n, const VAElement& v) const { return mode(conformal_vector(), n + 1, v); }
  VAElement L0(const VAElement& v) const { return L(0, v); }
  VAElement L1(const VAElement& v) const { return L(1, v); }
  VAElement Lminus1(const VAElement& v) const { return L(-1, v); }

  // e^{L(1)} v
  VAElement exp_L1(const VAElement& v) const {
    VAElement out = v;
    VAElement cur = v;
    for (long i = 1; !cur.is_zero(); ++i) {
      cur = L1(cur);
      cur *= make_rational(1, i);
      out += cur;
    }
    return out;
  }

  // Y_V(v, x)u restricted to exponents [lo, hi] (integers).
  LogLaurent<VAElement> vertex_series(const VAElement& v, const VAElement& u, long lo,
                                      long hi) const {
    LogLaurent<VAElement> s;
    for (const auto& [d, vd] : v.by_level()) {
      for (const auto& [e, ue] : u.by_level()) {
        for (long ex = std::max(lo, -static_cast<long>(d + e)); ex <= hi; ++ex) {
          long t = ex + d + e;
          if (t > cap_)
            throw TruncationOverflow("weight " + std::to_string(t) + " exceeds cap " +
                                     std::to_string(cap_));
          s.add_term(Rational(ex), self_.component(vd, ue, static_cast<int>(t)));
        }
      }
    }
    return s;
  }

 private:
  int cap_;
  FreeFieldOperator self_;
};

}  // namespace voamodes
