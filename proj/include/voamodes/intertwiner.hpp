#pragma once

#include <concepts>
#include <string>

#include "voamodes/errors.hpp"
#include "voamodes/free_field.hpp"
#include "voamodes/module.hpp"
#include "voamodes/series.hpp"

namespace voamodes {

// Anything that expands Y(w1, x)w2 between Fock modules, addressed by target level.
template <class Y>
concept IntertwiningOperator = requires(const Y& y, const ModuleVector& a, const ModuleVector& b,
                                        int t) {
  { y.source1() } -> std::convertible_to<const FockModule&>;
  { y.source2() } -> std::convertible_to<const FockModule&>;
  { y.target() } -> std::convertible_to<const FockModule&>;
  { y.log_order() } -> std::convertible_to<int>;
  { y.series(a, b, t, t) } -> std::same_as<LogLaurent<ModuleVector>>;
};

// Free-field intertwining operator of type (F(l1+l2); F(l1) F(l2)), normalized so
// that Y(|l1>, x)|l2> = x^{l1 l2} |l1+l2> + ...
class FockIntertwiner {
 public:
  FockIntertwiner(const Rational& l1, const Rational& l2, int cap)
      : w1_(l1, cap), w2_(l2, cap), w3_(l1 + l2, cap), op_(l1, l2, cap) {}

  const FockModule& source1() const { return w1_; }
  const FockModule& source2() const { return w2_; }
  const FockModule& target() const { return w3_; }
  int log_order() const { return 0; }
  const FreeFieldOperator& op() const { return op_; }

  // h2 - h3
  Rational shift() const { return w2_.lowest_weight() - w3_.lowest_weight(); }

  std::string name() const {
    return "Y(" + w1_.lambda().get_str() + "," + w2_.lambda().get_str() + ")";
  }

  LogLaurent<ModuleVector> series(const ModuleVector& w1, const ModuleVector& w2, int lo,
                                  int hi) const {
    return op_.series(w1, w2, lo, hi);
  }

 private:
  FockModule w1_, w2_, w3_;
  FreeFieldOperator op_;
};

inline FockIntertwiner fock_intertwiner(const Rational& l1, const Rational& l2, int cap) {
  return FockIntertwiner(l1, l2, cap);
}

// The action of V on W, seen as an intertwining operator of type (W; V W).
inline FockIntertwiner module_action_intertwiner(const FockModule& W) {
  return FockIntertwiner(Rational(0), W.lambda(), W.cap());
}

// multiply by (log x)^i
inline LogLaurent<ModuleVector> times_log_power(const LogLaurent<ModuleVector>& s, int i,
                                                int log_order) {
  if (i == 0) return s;
  return multiply(ScalarSeries::monomial(Rational(0), Rational(1), i, log_order), s);
}

// Target level reached by the mode Y_m(w1)w2 for w1, w2 at the given levels, if integral.
template <IntertwiningOperator Y>
std::optional<int> mode_target_level(const Y& y, const Rational& m, int a, int b) {
  Rational t = y.source1().weight_of_level(a) + y.source2().weight_of_level(b) - m - 1 -
               y.target().lowest_weight();
  if (!is_integer(t) || sgn(t) < 0) return std::nullopt;
  return static_cast<int>(to_long(t));
}

// Y_{m,k}(w1)w2: coefficient of x^{-m-1} (log x)^k. Orders above the declared
// log order have no terms and give zero.
template <IntertwiningOperator Y>
ModuleVector intertwiner_Yk_mode(const Y& y, int k, const Rational& m, const ModuleVector& w1,
                                 const ModuleVector& w2) {
  if (k < 0) throw LogOrderExceeded("negative log power");
  ModuleVector out;
  if (k > y.log_order()) return out;
  for (const auto& [a, w1a] : w1.by_level()) {
    for (const auto& [b, w2b] : w2.by_level()) {
      auto t = mode_target_level(y, m, a, b);
      if (!t) continue;
      out += y.series(w1a, w2b, *t, *t).coefficient(-m - 1, k);
    }
  }
  return out;
}

// theta_Y([w1]_{kl}) w2 = sum over classes nu of the target of
//   Coeff^0_{log x} Res_x x^{h2 - h3^nu + l - k - 1} Y(x^{L(0)} w1, x) w2,
// with w2 cut to level l.
template <IntertwiningOperator Y>
ModuleVector theta_Y(const Y& y, int k, int l, const ModuleVector& w1, const ModuleVector& w2) {
  ModuleVector w2l = w2.at_level(l);
  ModuleVector out;
  if (w2l.is_zero() || w1.is_zero() || k < 0) return out;
  const Rational h2 = y.source2().lowest_weight();
  const auto N1 = y.source1().nilpotent_part();
  for (const auto& nu : y.target().classes()) {
    for (const auto& [a, w1a] : w1.by_level()) {
      const Rational semisimple = y.source1().weight_of_level(a);
      LogLaurent<ModuleVector> s(y.log_order());
      ModuleVector cur = w1a;
      Rational fact = 1;
      for (int i = 0; !cur.is_zero(); ++i) {
        ModuleVector scaled = cur;
        scaled *= 1 / fact;
        s += times_log_power(y.series(scaled, w2l, k, k), i, y.log_order());
        cur = N1(cur);
        fact *= (i + 1);
      }
      s = s.shifted(h2 - nu.h + l - k - 1 + semisimple);
      // target classes other than nu would need their own exponent; Fock targets have one
      out += residue(coeff_log(s, 0));
    }
  }
  return out;
}

// Level-t component of Y^0(w1, 1) w2.
template <IntertwiningOperator Y>
ModuleVector value_at_one(const Y& y, const ModuleVector& w1, const ModuleVector& w2, int t) {
  return evaluate_at_one(coeff_log(y.series(w1, w2, t, t), 0));
}

// x^{L_S} Y^0(x^{-L_S} w1, 1) x^{-L_S} w2 on target levels [lo, hi].
template <IntertwiningOperator Y>
LogLaurent<ModuleVector> conjugation_series(const Y& y, const ModuleVector& w1,
                                            const ModuleVector& w2, int lo, int hi) {
  LogLaurent<ModuleVector> s;
  for (const auto& [a, w1a] : w1.by_level()) {
    for (const auto& [b, w2b] : w2.by_level()) {
      Rational inv = y.source1().weight_of_level(a) + y.source2().weight_of_level(b);
      for (int t = std::max(lo, 0); t <= hi; ++t)
        s.add_term(y.target().weight_of_level(t) - inv, value_at_one(y, w1a, w2b, t));
    }
  }
  return s;
}

// Y_WV(w, x) v = e^{x L(-1)} Y_W(v, -x) w, up to exponent hi.
inline LogLaurent<ModuleVector> right_vertex_op(const FockModule& W, const ModuleVector& w,
                                                const VAElement& v, int hi) {
  LogLaurent<ModuleVector> s;
  if (w.is_zero() || v.is_zero()) return s;
  const int top_level = v.max_level() + w.max_level() + hi;
  // Y_W(v, -x) w
  LogLaurent<ModuleVector> base;
  const auto plain = W.vertex_series(v, w, 0, top_level);
  for (const auto& [key, c] : plain.terms()) {
    if (key.exponent > hi) continue;
    base.add_term(key.exponent, c * sign_power(to_long(key.exponent)));
  }
  for (const auto& [key, c] : base.terms()) {
    ModuleVector cur = c;
    long e = to_long(key.exponent);
    for (long i = 0; e + i <= hi; ++i) {
      if (i > 0) {
        cur = W.Lminus1(cur);
        cur *= make_rational(1, i);
      }
      if (cur.is_zero()) break;
      s.add_term(Rational(e + i), cur);
    }
  }
  return s;
}

}  // namespace voamodes
