#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "voamodes/errors.hpp"
#include "voamodes/fock_vector.hpp"
#include "voamodes/partition.hpp"
#include "voamodes/series.hpp"

namespace voamodes {

// The vertex operator Y(u, x) of u in F(emitted) acting F(source) -> F(emitted + source),
// built as the normally ordered product of the currents d^{n-1}a(x)/(n-1)! with
//   Gamma(x) = exp(c sum_{n>0} a(-n) x^n / n) exp(-c sum_{n>0} a(n) x^{-n} / n) e^{c} x^{c a(0)},
// c = emitted. For emitted = 0 this is the module action of V on F(source).
//
// A coefficient of Y(u, x)w is addressed by the level it lands in; the matching
// power of x is emitted*source + target - level(u) - level(w).
class FreeFieldOperator {
 public:
  FreeFieldOperator(Rational emitted, Rational source, int cap)
      : emitted_(std::move(emitted)),
        source_(std::move(source)),
        cap_(cap),
        cache_(std::make_shared<Cache>()) {}

  const Rational& emitted_charge() const { return emitted_; }
  const Rational& source_charge() const { return source_; }
  Rational target_charge() const { return emitted_ + source_; }
  int cap() const { return cap_; }
  Rational leading_exponent() const { return emitted_ * source_; }

  Rational exponent(int u_level, int w_level, int target) const {
    return leading_exponent() + target - u_level - w_level;
  }

  FockVector component(const Partition& u, const Partition& w, int target) const {
    if (target < 0) return {};
    if (target > cap_)
      throw TruncationOverflow("level " + std::to_string(target) + " exceeds cap " +
                               std::to_string(cap_));
    auto key = std::make_tuple(u, w, target);
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->memo.find(key);
      if (it != cache_->memo.end()) return it->second;
    }
    FockVector out = u.empty() ? gamma_component(w, target) : current_component(u, w, target);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->memo.emplace(std::move(key), out);
    return out;
  }

  FockVector component(const FockVector& u, const FockVector& w, int target) const {
    FockVector out;
    for (const auto& [pu, cu] : u.terms())
      for (const auto& [pw, cw] : w.terms()) out.axpy(cu * cw, component(pu, pw, target));
    return out;
  }

  // Terms of Y(u, x)w landing in levels [lo, hi].
  LogLaurent<FockVector> series(const FockVector& u, const FockVector& w, int lo, int hi) const {
    LogLaurent<FockVector> s;
    for (const auto& [a, ua] : u.by_level())
      for (const auto& [b, wb] : w.by_level())
        for (int t = std::max(lo, 0); t <= hi; ++t)
          s.add_term(exponent(a, b, t), component(ua, wb, t));
    return s;
  }

  // Coefficient of x^{-m-1}.
  FockVector mode(const Rational& m, const FockVector& u, const FockVector& w) const {
    FockVector out;
    for (const auto& [a, ua] : u.by_level()) {
      for (const auto& [b, wb] : w.by_level()) {
        Rational t = Rational(a + b - 1) - leading_exponent() - m;
        if (!is_integer(t) || sgn(t) < 0) continue;
        out += component(ua, wb, static_cast<int>(to_long(t)));
      }
    }
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<Partition, Partition, int>, FockVector> memo;
  };

  // Y(a(-n)u', x) = sum_{m<0} c(n,m) x^{-m-n} a(m) Y(u',x)
  //              + sum_{m>=0} c(n,m) x^{-m-n} Y(u',x) a(m),   c(n,m) = binom(-m-1, n-1).
  FockVector current_component(const Partition& u, const Partition& w, int target) const {
    const int n = u.first();
    const Partition tail = u.rest();
    FockVector out;
    for (int m = n; m <= target; ++m) {
      Rational c = gen_binomial(m - 1, n - 1);
      FockVector inner = component(tail, w, target - m);
      if (!inner.is_zero()) out.axpy(c, create(m, inner));
    }
    for (int m = 1; m <= w.weight(); ++m) {
      int mult = w.multiplicity(m);
      if (!mult) continue;
      Rational c = gen_binomial(-m - 1, n - 1) * m * mult;
      out.axpy(c, component(tail, w.without_part(m), target));
    }
    if (sgn(source_) != 0) out.axpy(sign_power(n - 1) * source_, component(tail, w, target));
    return out;
  }

  // Gamma(x) w at the given target level: sum over E^-_a E^+_b with a - b = target - level(w).
  FockVector gamma_component(const Partition& w, int target) const {
    const int d = target - w.weight();
    if (sgn(emitted_) == 0) return d == 0 ? FockVector(w) : FockVector{};
    FockVector out;
    for (int b = 0; b <= w.weight(); ++b) {
      int a = d + b;
      if (a < 0) continue;
      FockVector lowered = exp_annihilators(b, FockVector(w));
      if (lowered.is_zero()) continue;
      out += exp_creators(a, lowered);
    }
    return out;
  }

  // degree-b part of exp(-c sum a(n) y^n / n)
  FockVector exp_annihilators(int b, const FockVector& v) const {
    FockVector out;
    for (const auto& mu : partitions_of(b)) {
      Rational coef = exp_coefficient(mu, -emitted_);
      FockVector cur = v;
      for (int part : mu.parts()) {
        cur = annihilate(part, cur);
        if (cur.is_zero()) break;
      }
      if (!cur.is_zero()) out.axpy(coef, cur);
    }
    return out;
  }

  // degree-a part of exp(c sum a(-n) y^n / n)
  FockVector exp_creators(int a, const FockVector& v) const {
    FockVector out;
    for (const auto& mu : partitions_of(a)) {
      Rational coef = exp_coefficient(mu, emitted_);
      FockVector cur = v;
      for (int part : mu.parts()) cur = create(part, cur);
      out.axpy(coef, cur);
    }
    return out;
  }

  // prod_i (c / mu_i) / prod_n m_n!
  static Rational exp_coefficient(const Partition& mu, const Rational& c) {
    Rational coef = 1;
    for (int part : mu.parts()) coef *= c / part;
    Rational norm = mu.norm();
    for (int part : mu.parts()) norm /= part;
    return coef / norm;
  }

  Rational emitted_;
  Rational source_;
  int cap_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace voamodes
