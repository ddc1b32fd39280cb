#pragma once

#include <functional>
#include <string>
#include <vector>

#include "voamodes/errors.hpp"
#include "voamodes/fock_vector.hpp"
#include "voamodes/free_field.hpp"
#include "voamodes/heisenberg.hpp"
#include "voamodes/series.hpp"

namespace voamodes {

using ModuleVector = FockVector;

struct CongruenceClass {
  Rational tag;  // h mod 1, in [0,1)
  Rational h;    // lowest weight
};

// Linear operator on coefficient vectors; used for the nilpotent part of L(0).
using VectorOperator = std::function<FockVector(const FockVector&)>;

// x^{sign N} applied to every coefficient of s:
//   sum_i sign^i (log x)^i N^i c / i!
// The output declares log order `log_order`; N must be nilpotent.
template <class Coeff>
LogLaurent<Coeff> log_dress(const LogLaurent<Coeff>& s, const std::function<Coeff(const Coeff&)>& N,
                            int sign, int log_order) {
  LogLaurent<Coeff> out(log_order);
  for (const auto& [key, c] : s.terms()) {
    Coeff cur = c;
    Rational fact = 1;
    for (int i = 0; !detail::coeff_zero(cur); ++i) {
      Coeff term = cur;
      term *= sign_power(sign < 0 ? i : 0) / fact;
      out.add_term(key.exponent, key.logpow + i, term);
      cur = N(cur);
      fact *= (i + 1);
    }
  }
  return out;
}

// Fock module F(lambda): basis a(-n1)...a(-nr)|lambda>, lowest weight lambda^2/2.
class FockModule {
 public:
  FockModule(Rational lambda, int cap)
      : lambda_(std::move(lambda)), cap_(cap), voa_(cap), action_(Rational(0), lambda_, cap) {}

  const Rational& lambda() const { return lambda_; }
  int cap() const { return cap_; }
  const HeisenbergVOA& voa() const { return voa_; }
  const FreeFieldOperator& action() const { return action_; }

  Rational lowest_weight() const { return lambda_ * lambda_ / 2; }
  std::vector<CongruenceClass> classes() const { return {{frac_of(lowest_weight()), lowest_weight()}}; }
  Rational weight_of_level(int level) const { return lowest_weight() + level; }

  // L(0) = L(0)_S + L(0)_N with L(0)_N = 0 on Fock space.
  VectorOperator nilpotent_part() const {
    return [](const FockVector&) { return FockVector{}; };
  }

  std::string name() const { return "F(" + lambda_.get_str() + ")"; }

  std::vector<Partition> basis(int level) const {
    if (level > cap_) throw TruncationOverflow("basis level above cap");
    return partitions_of(level);
  }
  std::vector<Partition> omega_N0(int N) const {
    if (N > cap_) throw ConfigError("N exceeds truncation");
    return partitions_up_to(N);
  }

  // (Y_W)_n(v) w; zero for non-integral n.
  ModuleVector mode(const VAElement& v, const Rational& n, const ModuleVector& w) const {
    if (!is_integer(n)) return {};
    return action_.mode(n, v, w);
  }
  ModuleVector mode(const VAElement& v, long n, const ModuleVector& w) const {
    return mode(v, Rational(n), w);
  }

  ModuleVector L(long n, const ModuleVector& w) const {
    return mode(HeisenbergVOA::conformal_vector(), n + 1, w);
  }
  ModuleVector L0(const ModuleVector& w) const { return L(0, w); }
  ModuleVector Lminus1(const ModuleVector& w) const { return L(-1, w); }
  ModuleVector L1(const ModuleVector& w) const { return L(1, w); }

  LogLaurent<ModuleVector> vertex_series(const VAElement& v, const ModuleVector& w, int lo,
                                         int hi) const {
    return action_.series(v, w, lo, hi);
  }

  // theta_W([v]_{kl}) w = delta_{l, level w} Res_x x^{l-k-1} Y_W(x^{L(0)} v, x) w
  ModuleVector theta(int k, int l, const VAElement& v, const ModuleVector& w) const {
    ModuleVector wl = w.at_level(l);
    if (wl.is_zero() || v.is_zero()) return {};
    ModuleVector out;
    for (const auto& [d, vd] : v.by_level()) {
      auto s = action_.series(vd, wl, k, k).shifted(Rational(d + l - k - 1));
      out += residue(coeff_log(s, 0));
    }
    return out;
  }

  // <a, b> with a(n)^dagger = a(-n) and <lambda|lambda> = 1
  static Rational pairing(const ModuleVector& a, const ModuleVector& b) {
    Rational s = 0;
    for (const auto& [p, c] : a.terms()) {
      Rational cb = b.coefficient(p);
      if (sgn(cb) != 0) s += c * cb * p.norm();
    }
    return s;
  }

  // Mode of the contragredient module, realized on the same partition basis
  // via the pairing:
  //   <Y'(v,x) w', w> = <w', Y(e^{x L(1)} (-x^{-2})^{L(0)} v, x^{-1}) w>.
  // For homogeneous v of weight d the x^{-n-1} coefficient is
  //   <v'_n w', w> = (-1)^d sum_i <w', (L(1)^i v / i!)_{2d-i-n-2} w>.
  ModuleVector contragredient_mode(const VAElement& v, const Rational& n,
                                   const ModuleVector& wprime) const {
    if (!is_integer(n)) return {};
    const long nn = to_long(n);
    ModuleVector out;
    for (const auto& [d, vd] : v.by_level()) {
      std::vector<VAElement> lowered{vd};
      for (long i = 1;; ++i) {
        VAElement next = voa_.L1(lowered.back());
        if (next.is_zero()) break;
        next *= make_rational(1, i);
        lowered.push_back(next);
      }
      for (const auto& [s, ws] : wprime.by_level()) {
        long r = s + d - nn - 1;
        if (r < 0) continue;
        if (r > cap_) throw TruncationOverflow("contragredient level above cap");
        for (const auto& b : partitions_of(static_cast<int>(r))) {
          ModuleVector bv(b);
          Rational val = 0;
          for (size_t i = 0; i < lowered.size(); ++i) {
            long j = 2L * d - static_cast<long>(i) - nn - 2;
            val += pairing(ws, mode(lowered[i], j, bv));
          }
          val *= sign_power(d);
          if (sgn(val) != 0) out.add(b, val / b.norm());
        }
      }
    }
    return out;
  }

  // theta for the contragredient module: v'_{wt v + l - k - 1} on level l.
  ModuleVector contragredient_theta(int k, int l, const VAElement& v, const ModuleVector& wprime) const {
    ModuleVector wl = wprime.at_level(l);
    ModuleVector out;
    if (wl.is_zero()) return out;
    for (const auto& [d, vd] : v.by_level())
      out += contragredient_mode(vd, Rational(d + l - k - 1), wl);
    return out;
  }

  friend bool operator==(const FockModule& a, const FockModule& b) {
    return a.lambda_ == b.lambda_ && a.cap_ == b.cap_;
  }

 private:
  Rational lambda_;
  int cap_;
  HeisenbergVOA voa_;
  FreeFieldOperator action_;
};

// The vertex algebra viewed as its own module F(0).
inline FockModule adjoint_module(int cap) { return FockModule(Rational(0), cap); }

}  // namespace voamodes
