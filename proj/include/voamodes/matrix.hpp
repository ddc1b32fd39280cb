#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "voamodes/errors.hpp"
#include "voamodes/heisenberg.hpp"
#include "voamodes/intertwiner.hpp"
#include "voamodes/module.hpp"
#include "voamodes/series.hpp"

namespace voamodes {

struct VSide {};
struct WSide {};

// Finitely supported N x N-indexed matrix with entries in V (VSide) or W (WSide).
template <class Side>
class IndexedMatrix {
 public:
  using Index = std::pair<int, int>;

  IndexedMatrix() = default;

  static IndexedMatrix single(int k, int l, const FockVector& e) {
    IndexedMatrix m;
    m.add(k, l, e);
    return m;
  }

  // Entries at negative indices are identically zero and are dropped.
  void add(int k, int l, const FockVector& e) {
    if (k < 0 || l < 0 || e.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(Index{k, l}, e);
    if (!inserted) {
      it->second += e;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  void add(int k, int l, const Rational& c, const FockVector& e) {
    if (sgn(c) == 0) return;
    add(k, l, c * e);
  }

  FockVector entry(int k, int l) const {
    auto it = entries_.find(Index{k, l});
    return it == entries_.end() ? FockVector{} : it->second;
  }
  const std::map<Index, FockVector>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  int bound() const {
    int b = -1;
    for (const auto& [ix, e] : entries_) b = std::max({b, ix.first, ix.second});
    return b;
  }

  IndexedMatrix& operator+=(const IndexedMatrix& o) {
    for (const auto& [ix, e] : o.entries_) add(ix.first, ix.second, e);
    return *this;
  }
  IndexedMatrix& operator-=(const IndexedMatrix& o) {
    for (const auto& [ix, e] : o.entries_) add(ix.first, ix.second, -e);
    return *this;
  }
  IndexedMatrix& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      entries_.clear();
      return *this;
    }
    for (auto& [ix, e] : entries_) e *= s;
    return *this;
  }
  friend IndexedMatrix operator+(IndexedMatrix a, const IndexedMatrix& b) { return a += b; }
  friend IndexedMatrix operator-(IndexedMatrix a, const IndexedMatrix& b) { return a -= b; }
  friend IndexedMatrix operator*(const Rational& s, IndexedMatrix a) { return a *= s; }
  friend bool operator==(const IndexedMatrix& a, const IndexedMatrix& b) {
    return a.entries_ == b.entries_;
  }

  std::string str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ix, e] : entries_) {
      if (!first) os << " ; ";
      first = false;
      os << "[" << e.str() << "]_{" << ix.first << "," << ix.second << "}";
    }
    return os.str();
  }

 private:
  std::map<Index, FockVector> entries_;
};

using VMatrix = IndexedMatrix<VSide>;
using WMatrix = IndexedMatrix<WSide>;

// Upper limit of the inner sum in the product: the order of the Taylor
// polynomial (m <= n), or the alternative reading m <= l kept for comparison.
enum class TaylorRule { order_based, display_l };

enum class RightForm { direct, conjugated, right_op };

enum class OppositeSign { plus, minus };

inline ScalarSeries product_taylor(int k, int n, int l, TaylorRule rule = TaylorRule::order_based) {
  const long alpha = -k + n - l - 1;
  return rule == TaylorRule::order_based ? truncated_taylor(alpha, k + l + 1)
                                         : taylor_with_bound(alpha, l);
}

namespace detail {

// Res_x T(x) (1+x)^p F(x), where F only needs exponents <= -1 - min(T).
inline FockVector taylor_residue(const ScalarSeries& T, long p, const LogLaurent<FockVector>& F) {
  const Rational H = -1 - *T.min_exponent();
  auto PF = multiply(binom_series(Rational(p), p), F, H);
  return residue(multiply(T, PF, Rational(-1)));
}

inline long needed_exponent(const ScalarSeries& T) { return to_long(-1 - *T.min_exponent()); }

// Y(x (1+x)^{L(0)} u, x) v up to exponent H, for an action of V.
inline LogLaurent<FockVector> weighted_vertex_series(const FreeFieldOperator& action,
                                                     const VAElement& u, const FockVector& v,
                                                     long H) {
  LogLaurent<FockVector> F;
  for (const auto& [d, ud] : u.by_level()) {
    const long lo = -(d + std::max(v.max_level(), 0));
    if (H < lo) continue;
    auto Y = action.series(ud, v, 0, static_cast<int>(H + d + std::max(v.max_level(), 0)));
    F += multiply(binom_series(Rational(d), H - lo), Y, Rational(H));
  }
  return F;
}

}  // namespace detail

// [u]_{kn} <> [v]_{nl}, computed with the given action of V on the right factor.
inline FockVector left_product_entry(const FreeFieldOperator& action, int k, int n, int l,
                                     const VAElement& u, const FockVector& v,
                                     TaylorRule rule = TaylorRule::order_based) {
  if (u.is_zero() || v.is_zero()) return {};
  ScalarSeries T = product_taylor(k, n, l, rule);
  if (T.is_zero()) return {};
  const long H = detail::needed_exponent(T);
  return detail::taylor_residue(T, l, detail::weighted_vertex_series(action, u, v, H));
}

inline VMatrix diamond_VV(const HeisenbergVOA& V, const VMatrix& a, const VMatrix& b,
                          TaylorRule rule = TaylorRule::order_based) {
  VMatrix out;
  for (const auto& [ia, u] : a.entries())
    for (const auto& [ib, v] : b.entries())
      if (ia.second == ib.first)
        out.add(ia.first, ib.second,
                left_product_entry(V.action(), ia.first, ia.second, ib.second, u, v, rule));
  return out;
}

inline WMatrix diamond_VW(const FockModule& W, const VMatrix& a, const WMatrix& b,
                          TaylorRule rule = TaylorRule::order_based) {
  WMatrix out;
  for (const auto& [ia, v] : a.entries())
    for (const auto& [ib, w] : b.entries())
      if (ia.second == ib.first)
        out.add(ia.first, ib.second,
                left_product_entry(W.action(), ia.first, ia.second, ib.second, v, w, rule));
  return out;
}

// (1+x)^{L(0)} w up to x^D
inline LogLaurent<ModuleVector> one_plus_x_L0(const FockModule& W, const ModuleVector& w, long D,
                                              int sign = 1) {
  LogLaurent<ModuleVector> s;
  for (const auto& [b, wb] : w.by_level()) {
    auto bs = binom_series(sign * W.weight_of_level(b), D);
    s += multiply(bs, LogLaurent<ModuleVector>::monomial(Rational(0), wb));
  }
  return s;
}

// Apply (1+x)^{sign L(0)} coefficientwise to a vector series, keeping exponents <= H.
inline LogLaurent<ModuleVector> apply_one_plus_x_L0(const FockModule& W,
                                                    const LogLaurent<ModuleVector>& s, long H,
                                                    int sign) {
  LogLaurent<ModuleVector> out;
  for (const auto& [key, c] : s.terms()) {
    long room = H - to_long(key.exponent);
    if (room < 0) continue;
    out += one_plus_x_L0(W, c, room, sign).shifted(key.exponent);
  }
  return out;
}

// Apply e^{x L(-1)} coefficientwise, keeping exponents <= H.
inline LogLaurent<ModuleVector> apply_exp_x_Lminus1(const FockModule& W,
                                                    const LogLaurent<ModuleVector>& s, long H) {
  LogLaurent<ModuleVector> out;
  for (const auto& [key, c] : s.terms()) {
    long e = to_long(key.exponent);
    ModuleVector cur = c;
    for (long i = 0; e + i <= H && !cur.is_zero(); ++i) {
      if (i > 0) {
        cur = W.Lminus1(cur);
        cur *= make_rational(1, i);
      }
      out.add_term(Rational(e + i), cur);
    }
  }
  return out;
}

// Apply (1+x)^{sign (L(-1) + L(0))} = exp(sign log(1+x) (L(-1) + L(0))) coefficientwise.
inline LogLaurent<ModuleVector> apply_one_plus_x_A(const FockModule& W,
                                                   const LogLaurent<ModuleVector>& s, long H,
                                                   int sign) {
  LogLaurent<ModuleVector> out;
  for (const auto& [key, c] : s.terms()) {
    long room = H - to_long(key.exponent);
    ModuleVector cur = c;
    Rational fact = 1;
    for (long n = 0; n <= room && !cur.is_zero(); ++n) {
      if (n > 0) {
        cur = W.Lminus1(cur) + W.L0(cur);
        if (sign < 0) cur *= Rational(-1);
        fact *= n;
      }
      auto lp = log1p_power(n, room);
      out += multiply(lp, LogLaurent<ModuleVector>::monomial(key.exponent, (1 / fact) * cur));
    }
  }
  return out;
}

// Y_W(v, -x) applied to each coefficient of s, keeping exponents <= H.
inline LogLaurent<ModuleVector> apply_vertex_minus_x(const FockModule& W, const VAElement& v,
                                                     const LogLaurent<ModuleVector>& s, long H) {
  LogLaurent<ModuleVector> out;
  for (const auto& [key, c] : s.terms()) {
    long room = H - to_long(key.exponent);
    for (const auto& [d, vd] : v.by_level()) {
      long top = room + d + std::max(c.max_level(), 0);
      if (top < 0) continue;
      const auto ys = W.vertex_series(vd, c, 0, static_cast<int>(top));
      for (const auto& [k2, c2] : ys.terms()) {
        long e = to_long(k2.exponent);
        if (e > room) continue;
        out.add_term(key.exponent + e, c2 * sign_power(e));
      }
    }
  }
  return out;
}

// [w]_{kn} <> [v]_{nl} in one of the three equivalent forms.
inline ModuleVector right_product_entry(const FockModule& W, int k, int n, int l,
                                        const ModuleVector& w, const VAElement& v,
                                        RightForm form = RightForm::conjugated) {
  if (w.is_zero() || v.is_zero()) return {};
  ScalarSeries T = product_taylor(k, n, l);
  if (T.is_zero()) return {};
  const long H = detail::needed_exponent(T);
  LogLaurent<ModuleVector> F;
  switch (form) {
    case RightForm::direct: {
      // Y_W((1+x)^{-L(0)} v, -x/(1+x)) w with (-x/(1+x))^{-j-1} = (-1)^{j+1} x^{-j-1} (1+x)^{j+1}
      for (const auto& [d, vd] : v.by_level()) {
        for (const auto& [b, wb] : w.by_level()) {
          for (long j = -H - 1; j <= d + b - 1; ++j) {
            ModuleVector c = W.mode(vd, j, wb);
            if (c.is_zero()) continue;
            long deg = H + j + 1;
            ScalarSeries z = multiply(binom_series(Rational(j + 1), deg),
                                      binom_series(Rational(-d), deg), Rational(deg));
            z = sign_power(j + 1) * z.shifted(Rational(-j - 1));
            F += multiply(z, LogLaurent<ModuleVector>::monomial(Rational(0), c), Rational(H));
          }
        }
      }
      break;
    }
    case RightForm::conjugated: {
      // (1+x)^{-L(0)} Y_W(v, -x) (1+x)^{L(0)} w
      long D = H + v.max_level() + w.max_level();
      auto G = one_plus_x_L0(W, w, D);
      F = apply_one_plus_x_L0(W, apply_vertex_minus_x(W, v, G, H), H, -1);
      break;
    }
    case RightForm::right_op: {
      // (1+x)^{-(L(-1)+L(0))} Y_WV((1+x)^{L(0)} w, x) v
      long D = H + v.max_level() + w.max_level();
      auto G = one_plus_x_L0(W, w, D);
      LogLaurent<ModuleVector> R;
      for (const auto& [key, c] : G.terms()) {
        long i = to_long(key.exponent);
        R += right_vertex_op(W, c, v, static_cast<int>(H - i)).shifted(key.exponent);
      }
      F = apply_one_plus_x_A(W, R, H, -1);
      break;
    }
  }
  return detail::taylor_residue(T, k, F);
}

inline WMatrix diamond_WV(const FockModule& W, const WMatrix& a, const VMatrix& b,
                          RightForm form = RightForm::conjugated) {
  WMatrix out;
  for (const auto& [ia, w] : a.entries())
    for (const auto& [ib, v] : b.entries())
      if (ia.second == ib.first)
        out.add(ia.first, ib.second,
                right_product_entry(W, ia.first, ia.second, ib.second, w, v, form));
  return out;
}

inline VMatrix identity_N(int N) {
  VMatrix m;
  for (int k = 0; k <= N; ++k) m.add(k, k, HeisenbergVOA::vacuum());
  return m;
}

inline VMatrix omega0_N(int N) {
  VMatrix m;
  for (int k = 0; k <= N; ++k) m.add(k, k, HeisenbergVOA::conformal_vector());
  return m;
}

inline VMatrix omega1_N(int N) {
  VMatrix m;
  for (int k = 0; k + 1 <= N; ++k) m.add(k + 1, k, HeisenbergVOA::conformal_vector());
  return m;
}

// sum_j (-1)^j C(p,j) [v]_{k,n+p-j} <> [w]_{n+p-j,l+p}
// - sum_j (-1)^{p-j} C(p,j) [w]_{k,l-n+k+p-j} <> [v]_{l-n+k+p-j,l+p}
// - sum_j C(wt v+n-k-1, j) [(Y_W)_{p+j}(v) w]_{k,l+p}
inline WMatrix jacobi_kernel_element(const FockModule& W, int k, int l, int n, int p,
                                     const VAElement& v, const ModuleVector& w,
                                     RightForm form = RightForm::conjugated) {
  if (l + p < 0) throw std::invalid_argument("l + p must be nonnegative");
  const int d = HeisenbergVOA::weight(v);
  WMatrix out;
  for (int j = 0; n + p - j >= 0; ++j) {
    Rational c = sign_power(j) * gen_binomial(p, j);
    if (sgn(c) == 0) continue;
    int mid = n + p - j;
    out.add(k, l + p, c, left_product_entry(W.action(), k, mid, l + p, v, w));
  }
  for (int j = 0; l - n + k + p - j >= 0; ++j) {
    Rational c = sign_power(p - j) * gen_binomial(p, j);
    if (sgn(c) == 0) continue;
    int mid = l - n + k + p - j;
    out.add(k, l + p, -c, right_product_entry(W, k, mid, l + p, w, v, form));
  }
  const int wl = std::max(w.max_level(), 0);
  for (int j = 0; wl + d - (p + j) - 1 >= 0; ++j) {
    Rational c = gen_binomial(d + n - k - 1, j);
    if (sgn(c) == 0) continue;
    out.add(k, l + p, -c, W.mode(v, static_cast<long>(p + j), w));
  }
  return out;
}

// omega(0) <> [w]_{nl} - [w]_{nl} <> omega(0) - [(L(-1) + L(0)) w]_{nl}
inline WMatrix omega0_kernel_element(const FockModule& W, int n, int l, const ModuleVector& w) {
  const int M = std::max(n, l);
  WMatrix ww = WMatrix::single(n, l, w);
  WMatrix out = diamond_VW(W, omega0_N(M), ww) - diamond_WV(W, ww, omega0_N(M));
  out.add(n, l, -(W.Lminus1(w) + W.L0(w)));
  return out;
}

// omega(-1) <> [w]_{nl} - [w]_{n+1,l+1} <> omega(-1) - [L(-1) w]_{n+1,l}
inline WMatrix omega1_kernel_element(const FockModule& W, int n, int l, const ModuleVector& w) {
  const int M = std::max(n, l) + 1;
  WMatrix out = diamond_VW(W, omega1_N(M), WMatrix::single(n, l, w)) -
                diamond_WV(W, WMatrix::single(n + 1, l + 1, w), omega1_N(M));
  out.add(n + 1, l, -W.Lminus1(w));
  return out;
}

// O([v]_{kl}) = sign [e^{L(1)} (-1)^{L(0)} v]_{lk} (or at (k,l) when not transposed)
inline VMatrix opposite_map(const HeisenbergVOA& V, const VMatrix& m, OppositeSign sign,
                            bool transpose = true) {
  VMatrix out;
  const Rational s = sign == OppositeSign::plus ? Rational(1) : Rational(-1);
  for (const auto& [ix, v] : m.entries()) {
    VAElement twisted;
    for (const auto& [d, vd] : v.by_level()) twisted.axpy(sign_power(d), vd);
    VAElement image = V.exp_L1(twisted);
    if (transpose)
      out.add(ix.second, ix.first, s, image);
    else
      out.add(ix.first, ix.second, s, image);
  }
  return out;
}

inline ModuleVector theta_W(const FockModule& W, const VMatrix& m, const ModuleVector& w) {
  ModuleVector out;
  for (const auto& [ix, v] : m.entries()) out += W.theta(ix.first, ix.second, v, w);
  return out;
}

inline ModuleVector theta_contragredient(const FockModule& W, const VMatrix& m,
                                         const ModuleVector& wprime) {
  ModuleVector out;
  for (const auto& [ix, v] : m.entries())
    out += W.contragredient_theta(ix.first, ix.second, v, wprime);
  return out;
}

template <IntertwiningOperator Y>
ModuleVector theta_Y(const Y& y, const WMatrix& m, const ModuleVector& w2) {
  ModuleVector out;
  for (const auto& [ix, w1] : m.entries()) out += theta_Y(y, ix.first, ix.second, w1, w2);
  return out;
}

// Evaluation contexts standing in for the intersection of kernels over all modules.
template <class Probe>
struct ProbeFamily {
  std::vector<Probe> probes;
};

inline bool probe_equal(const VMatrix& a, const VMatrix& b, const ProbeFamily<FockModule>& family) {
  if (family.probes.empty()) throw std::invalid_argument("empty probe family");
  VMatrix diff = a - b;
  for (const auto& P : family.probes) {
    std::map<int, VMatrix> by_column;
    for (const auto& [ix, e] : diff.entries()) by_column[ix.second].add(ix.first, ix.second, e);
    for (const auto& [l, col] : by_column)
      for (const auto& w : P.basis(l))
        if (!theta_W(P, col, ModuleVector(w)).is_zero()) return false;
  }
  return true;
}

template <IntertwiningOperator Y>
bool probe_equal(const WMatrix& a, const WMatrix& b, const ProbeFamily<Y>& family) {
  if (family.probes.empty()) throw std::invalid_argument("empty probe family");
  WMatrix diff = a - b;
  for (const auto& P : family.probes) {
    std::map<int, WMatrix> by_column;
    for (const auto& [ix, e] : diff.entries()) by_column[ix.second].add(ix.first, ix.second, e);
    for (const auto& [l, col] : by_column)
      for (const auto& w2 : P.source2().basis(l))
        if (!theta_Y(P, col, ModuleVector(w2)).is_zero()) return false;
  }
  return true;
}

}  // namespace voamodes
