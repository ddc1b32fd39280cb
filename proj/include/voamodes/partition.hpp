#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "voamodes/rational.hpp"

namespace voamodes {

// Mode labels n1 >= n2 >= ... >= 1 of a monomial a(-n1)...a(-nr)|charge>.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : parts_(parts) { normalize(); }
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { normalize(); }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  size_t length() const { return parts_.size(); }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  int multiplicity(int n) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), n));
  }
  int first() const { return parts_.front(); }

  Partition rest() const {
    Partition p;
    p.parts_.assign(parts_.begin() + 1, parts_.end());
    return p;
  }
  Partition with_part(int n) const {
    Partition p = *this;
    p.parts_.insert(std::upper_bound(p.parts_.begin(), p.parts_.end(), n, std::greater<int>()), n);
    return p;
  }
  Partition without_part(int n) const {
    Partition p = *this;
    auto it = std::find(p.parts_.begin(), p.parts_.end(), n);
    if (it == p.parts_.end()) throw std::logic_error("part not present");
    p.parts_.erase(it);
    return p;
  }
  Partition merged(const Partition& o) const {
    std::vector<int> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return Partition(std::move(all));
  }

  // Norm of the monomial under a(n)^dagger = a(-n): prod n^{m_n} m_n!.
  Rational norm() const {
    mpz_class z = 1;
    int i = 0;
    const int r = static_cast<int>(parts_.size());
    while (i < r) {
      int j = i;
      while (j < r && parts_[j] == parts_[i]) ++j;
      for (int t = 1; t <= j - i; ++t) z *= mpz_class(parts_[i]) * t;
      i = j;
    }
    return Rational(z);
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  void normalize() {
    for (int p : parts_)
      if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  }
  std::vector<int> parts_;
};

// Partitions of n in reverse lexicographic order, largest part first.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k) {
    auto ps = partitions_of(k);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

inline long partition_count(int n) { return static_cast<long>(partitions_of(n).size()); }

}  // namespace voamodes
