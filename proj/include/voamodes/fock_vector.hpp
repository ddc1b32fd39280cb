#pragma once

#include <map>
#include <sstream>
#include <string>

#include "voamodes/errors.hpp"
#include "voamodes/partition.hpp"
#include "voamodes/rational.hpp"

namespace voamodes {

// Finite rational combination of monomials a(-n1)...a(-nr)|charge>. The
// charge (and hence the congruence class) belongs to the ambient module, so a
// vector only stores partitions; its level is the partition weight.
class FockVector {
 public:
  using Terms = std::map<Partition, Rational>;

  FockVector() = default;
  explicit FockVector(const Partition& p, const Rational& c = Rational(1)) { add(p, c); }

  static FockVector basis(const Partition& p) { return FockVector(p); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Rational coefficient(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Partition& p, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  FockVector& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }
  // Add s*o in place.
  void axpy(const Rational& s, const FockVector& o) {
    if (sgn(s) == 0) return;
    for (const auto& [p, c] : o.terms_) add(p, s * c);
  }

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator-(FockVector a) { return a *= Rational(-1); }
  friend FockVector operator*(const Rational& s, FockVector a) { return a *= s; }
  friend FockVector operator*(FockVector a, const Rational& s) { return a *= s; }
  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms_ == b.terms_; }

  std::map<int, FockVector> by_level() const {
    std::map<int, FockVector> out;
    for (const auto& [p, c] : terms_) out[p.weight()].add(p, c);
    return out;
  }
  FockVector at_level(int level) const {
    FockVector out;
    for (const auto& [p, c] : terms_)
      if (p.weight() == level) out.add(p, c);
    return out;
  }
  bool is_homogeneous() const { return by_level().size() <= 1; }
  int level() const {
    auto lv = by_level();
    if (lv.size() > 1) throw NonHomogeneous("vector mixes levels");
    return lv.empty() ? 0 : lv.begin()->first;
  }
  int max_level() const {
    int m = -1;
    for (const auto& [p, c] : terms_) m = std::max(m, p.weight());
    return m;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.get_str() << "*" << p.str();
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline bool is_zero(const FockVector& v) { return v.is_zero(); }

// a(-n) for n > 0
inline FockVector create(int n, const FockVector& v) {
  FockVector out;
  for (const auto& [p, c] : v.terms()) out.add(p.with_part(n), c);
  return out;
}

// a(n) for n > 0: removes one part n with factor n * multiplicity.
inline FockVector annihilate(int n, const FockVector& v) {
  FockVector out;
  for (const auto& [p, c] : v.terms()) {
    int m = p.multiplicity(n);
    if (m) out.add(p.without_part(n), c * n * m);
  }
  return out;
}

}  // namespace voamodes
