#pragma once

#include <deque>
#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "voamodes/errors.hpp"
#include "voamodes/intertwiner.hpp"
#include "voamodes/matrix.hpp"
#include "voamodes/module.hpp"
#include "voamodes/tally.hpp"

namespace voamodes {

struct TableBounds {
  int rows = 0;      // k <= rows
  int cols = 0;      // l <= cols
  int w1_level = 0;  // generators w1 of level <= w1_level
};

struct TableKey {
  int k = 0;
  int l = 0;
  Partition w1;
  Partition w2;
  auto operator<=>(const TableKey&) const = default;
  bool operator==(const TableKey&) const = default;

  std::string str() const {
    return "(k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",w1=" + w1.str() +
           ",w2=" + w2.str() + ")";
  }
};

// Values of a module map on the generators [w1]_{kl} (x) w2, level(w2) = l.
class MapTable {
 public:
  MapTable(TableBounds bounds, FockModule w1, FockModule w2, FockModule w3)
      : bounds_(bounds), w1_(std::move(w1)), w2_(std::move(w2)), w3_(std::move(w3)) {}

  const TableBounds& bounds() const { return bounds_; }
  const FockModule& source1() const { return w1_; }
  const FockModule& source2() const { return w2_; }
  const FockModule& target() const { return w3_; }
  const std::map<TableKey, ModuleVector>& entries() const { return entries_; }

  bool in_grid(int k, int l, const Partition& w1, const Partition& w2) const {
    return k >= 0 && l >= 0 && k <= bounds_.rows && l <= bounds_.cols &&
           w1.weight() <= bounds_.w1_level && w2.weight() == l;
  }

  // Every generator of the grid, ordered by (k, l, w1, w2).
  std::vector<TableKey> grid() const {
    std::vector<TableKey> keys;
    for (int k = 0; k <= bounds_.rows; ++k)
      for (int l = 0; l <= bounds_.cols; ++l)
        for (const auto& a : partitions_up_to(bounds_.w1_level))
          for (const auto& b : partitions_of(l)) keys.push_back({k, l, a, b});
    return keys;
  }

  void set(const TableKey& key, const ModuleVector& value) {
    if (!in_grid(key.k, key.l, key.w1, key.w2)) throw OutOfTable("set outside grid " + key.str());
    if (value.is_zero())
      entries_.erase(key);
    else
      entries_[key] = value;
  }

  ModuleVector entry(const TableKey& key) const {
    if (!in_grid(key.k, key.l, key.w1, key.w2)) throw OutOfTable("lookup outside grid " + key.str());
    auto it = entries_.find(key);
    return it == entries_.end() ? ModuleVector{} : it->second;
  }

  // Bilinear extension; components of w2 away from level l contribute zero.
  ModuleVector value(int k, int l, const ModuleVector& w1, const ModuleVector& w2) const {
    ModuleVector out;
    if (k < 0 || l < 0) return out;
    const ModuleVector w2l = w2.at_level(l);
    for (const auto& [b, cb] : w2l.terms())
      for (const auto& [a, ca] : w1.terms()) out.axpy(ca * cb, entry({k, l, a, b}));
    return out;
  }

  MapTable scaled(const Rational& c) const {
    MapTable t(bounds_, w1_, w2_, w3_);
    for (const auto& [k, v] : entries_) t.set(k, c * v);
    return t;
  }

  friend bool operator==(const MapTable& a, const MapTable& b) { return a.entries_ == b.entries_; }

 private:
  TableBounds bounds_;
  FockModule w1_, w2_, w3_;
  std::map<TableKey, ModuleVector> entries_;
};

template <IntertwiningOperator Y>
MapTable rho(const Y& y, TableBounds bounds) {
  MapTable t(bounds, y.source1(), y.source2(), y.target());
  for (const auto& key : t.grid())
    t.set(key, theta_Y(y, key.k, key.l, ModuleVector(key.w1), ModuleVector(key.w2)));
  return t;
}

template <IntertwiningOperator Y>
MapTable rho_N(const Y& y, int N) {
  return rho(y, TableBounds{N, N, N});
}

// Mode of the reconstructed intertwiner fixed by the table:
//   Y^f_{h2 - h3 + l - k + wt w1 - 1, 0}(w1) w2 = f([w1]_{kl} (x) w2)
inline ModuleVector yf_zero_mode(const MapTable& f, int k, int l, const ModuleVector& w1,
                                 const ModuleVector& w2) {
  return f.value(k, l, w1, w2);
}

inline Rational yf_mode_index(const MapTable& f, int k, int l, int w1_level) {
  return f.source2().lowest_weight() - f.target().lowest_weight() + l - k +
         f.source1().weight_of_level(w1_level) - 1;
}

struct NilpotentParts {
  VectorOperator n1, n2, n3;
  static NilpotentParts of(const MapTable& f) {
    return {f.source1().nilpotent_part(), f.source2().nilpotent_part(),
            f.target().nilpotent_part()};
  }
};

// x^{-N} v split into (log power, vector) pairs
inline std::vector<std::pair<int, ModuleVector>> negative_log_expansion(const VectorOperator& N,
                                                                        const ModuleVector& v) {
  std::vector<std::pair<int, ModuleVector>> out;
  ModuleVector cur = v;
  Rational fact = 1;
  for (int i = 0; !cur.is_zero(); ++i) {
    out.emplace_back(i, (sign_power(i) / fact) * cur);
    cur = N(cur);
    fact *= (i + 1);
  }
  return out;
}

// Y^f(w1, x) w2 = x^{L(0)} (Y^f)^0(x^{-L(0)} w1, 1) x^{-L(0)} w2, target levels [lo, hi].
inline LogLaurent<ModuleVector> yf_series(const MapTable& f, const ModuleVector& w1,
                                          const ModuleVector& w2, int lo, int hi,
                                          const NilpotentParts& nil, int log_order = 0) {
  LogLaurent<ModuleVector> inner(log_order);
  for (const auto& [a, w1a] : w1.by_level()) {
    for (const auto& [b, w2b] : w2.by_level()) {
      const Rational inv = f.source1().weight_of_level(a) + f.source2().weight_of_level(b);
      for (const auto& [i, x1] : negative_log_expansion(nil.n1, w1a)) {
        for (const auto& [j, x2] : negative_log_expansion(nil.n2, w2b)) {
          for (int t = std::max(lo, 0); t <= hi; ++t) {
            if (t > f.bounds().rows) throw OutOfTable("series window above table rows");
            inner.add_term(f.target().weight_of_level(t) - inv, i + j, f.value(t, b, x1, x2));
          }
        }
      }
    }
  }
  return log_dress<ModuleVector>(inner, nil.n3, +1, log_order);
}

inline LogLaurent<ModuleVector> yf_series(const MapTable& f, const ModuleVector& w1,
                                          const ModuleVector& w2, int lo, int hi) {
  return yf_series(f, w1, w2, lo, hi, NilpotentParts::of(f), 0);
}

// Y^f as an intertwining operator.
class ReconstructedIntertwiner {
 public:
  explicit ReconstructedIntertwiner(MapTable f) : f_(std::move(f)), nil_(NilpotentParts::of(f_)) {}
  ReconstructedIntertwiner(MapTable f, NilpotentParts nil, int log_order)
      : f_(std::move(f)), nil_(std::move(nil)), log_order_(log_order) {}

  const FockModule& source1() const { return f_.source1(); }
  const FockModule& source2() const { return f_.source2(); }
  const FockModule& target() const { return f_.target(); }
  int log_order() const { return log_order_; }
  const MapTable& table() const { return f_; }

  LogLaurent<ModuleVector> series(const ModuleVector& w1, const ModuleVector& w2, int lo,
                                  int hi) const {
    return yf_series(f_, w1, w2, lo, hi, nil_, log_order_);
  }

 private:
  MapTable f_;
  NilpotentParts nil_;
  int log_order_ = 0;
};

struct CertificationGrid {
  int N = 2;
  int p_lo = -2;
  int p_hi = 2;
  int max_v_weight = 3;
  int w1_level = 2;

  // Table bounds that contain every lookup the certifiers make.
  TableBounds table_bounds() const {
    return {N + std::max(p_hi, 0), 2 * N + std::max(p_hi, 0),
            w1_level + max_v_weight + std::max(-p_lo, 0) + 1};
  }
};

// Coefficient form of the Jacobi identity for Y^f, evaluated through the table:
//   sum_j (-1)^j C(p,j) theta_3([v]_{k,n+p-j}) f([w1]_{n+p-j,l+p} (x) w2)
// - sum_j (-1)^{p-j} C(p,j) f([w1]_{k,l-n+k+p-j} (x) theta_2([v]_{l-n+k+p-j,l+p}) w2)
// - sum_j C(wt v+n-k-1, j) f([(Y_1)_{p+j}(v) w1]_{k,l+p} (x) w2)  = 0
inline ModuleVector jacobi_defect(const MapTable& f, int k, int l, int n, int p,
                                  const VAElement& v, const ModuleVector& w1,
                                  const ModuleVector& w2) {
  const int d = HeisenbergVOA::weight(v);
  ModuleVector out;
  for (int j = 0; n + p - j >= 0; ++j) {
    Rational c = sign_power(j) * gen_binomial(p, j);
    if (sgn(c) == 0) continue;
    int mid = n + p - j;
    out.axpy(c, f.target().theta(k, mid, v, f.value(mid, l + p, w1, w2)));
  }
  for (int j = 0; l - n + k + p - j >= 0; ++j) {
    Rational c = sign_power(p - j) * gen_binomial(p, j);
    if (sgn(c) == 0) continue;
    int mid = l - n + k + p - j;
    out.axpy(-c, f.value(k, mid, w1, f.source2().theta(mid, l + p, v, w2)));
  }
  const int top = std::max(w1.max_level(), 0);
  for (int j = 0; top + d - (p + j) - 1 >= 0; ++j) {
    Rational c = gen_binomial(d + n - k - 1, j);
    if (sgn(c) == 0) continue;
    out.axpy(-c, f.value(k, l + p, f.source1().mode(v, static_cast<long>(p + j), w1), w2));
  }
  return out;
}

inline Tally certify_jacobi(const MapTable& f, const CertificationGrid& g) {
  Tally tally;
  const auto vs = partitions_up_to(g.max_v_weight);
  const auto w1s = partitions_up_to(g.w1_level);
  for (int k = 0; k <= g.N; ++k)
    for (int l = 0; l <= g.N; ++l)
      for (int n = 0; n <= g.N; ++n)
        for (int p = g.p_lo; p <= g.p_hi; ++p) {
          if (l + p < 0) continue;
          for (const auto& v : vs)
            for (const auto& w1 : w1s)
              for (const auto& w2 : partitions_of(l + p)) {
                ModuleVector defect =
                    jacobi_defect(f, k, l, n, p, VAElement(v), ModuleVector(w1), ModuleVector(w2));
                tally.record(defect.is_zero(), [&] {
                  std::ostringstream os;
                  os << "k=" << k << " l=" << l << " n=" << n << " p=" << p << " v=" << v.str()
                     << " w1=" << w1.str() << " w2=" << w2.str();
                  return Failure{os.str(), defect.str(), "0"};
                });
              }
        }
  return tally;
}

// d/dx Y^f(w1, x) w2 = Y^f(L(-1) w1, x) w2 on target levels [0, N].
inline Tally certify_L1_derivative(const MapTable& f, const CertificationGrid& g) {
  Tally tally;
  const auto& W1 = f.source1();
  for (const auto& w1 : partitions_up_to(g.w1_level)) {
    ModuleVector a(w1);
    ModuleVector da = W1.Lminus1(a);
    for (const auto& w2 : partitions_up_to(g.N)) {
      ModuleVector b(w2);
      auto lhs = yf_series(f, a, b, 0, g.N).derivative();
      auto rhs = yf_series(f, da, b, 0, g.N);
      // one case per exponent of either side
      std::set<Rational> exps;
      for (const auto& [key, c] : lhs.terms()) exps.insert(key.exponent);
      for (const auto& [key, c] : rhs.terms()) exps.insert(key.exponent);
      for (const auto& e : exps) {
        ModuleVector l = lhs.coefficient(e), r = rhs.coefficient(e);
        tally.record(l == r, [&] {
          return Failure{"w1=" + w1.str() + " w2=" + w2.str() + " x^" + e.get_str(), l.str(),
                         r.str()};
        });
      }
    }
  }
  return tally;
}

// rho(Y^f) = f on every generator of the table.
inline Tally roundtrip(const MapTable& f) {
  Tally tally;
  ReconstructedIntertwiner yf(f);
  for (const auto& key : f.grid()) {
    ModuleVector got = theta_Y(yf, key.k, key.l, ModuleVector(key.w1), ModuleVector(key.w2));
    ModuleVector want = f.entry(key);
    tally.record(got == want, [&] { return Failure{key.str(), got.str(), want.str()}; });
  }
  return tally;
}

inline std::optional<TableKey> nonzero_entry(const MapTable& f) {
  if (f.entries().empty()) return std::nullopt;
  return f.entries().begin()->first;
}

// Every mode of Y landing on the table grid equals a table entry, both as an
// expansion coefficient and as a level component of Y^0(w1, 1) w2. Hence a
// vanishing table forces every such mode to vanish.
template <IntertwiningOperator Y>
Tally modes_determined_by_table(const Y& y, const MapTable& f) {
  Tally tally;
  for (const auto& key : f.grid()) {
    ModuleVector w1(key.w1), w2(key.w2);
    Rational m = yf_mode_index(f, key.k, key.l, key.w1.weight());
    ModuleVector mode = intertwiner_Yk_mode(y, 0, m, w1, w2);
    ModuleVector at_one = value_at_one(y, w1, w2, key.k);
    ModuleVector want = f.entry(key);
    tally.record(mode == want && at_one == want, [&] {
      return Failure{key.str(), "mode " + mode.str() + " ; at one " + at_one.str(), want.str()};
    });
  }
  return tally;
}

// Row-reduced spans, one per level.
class LevelSpan {
 public:
  // Returns true when v enlarged the span.
  bool insert(ModuleVector v) {
    for (const auto& [pivot, row] : rows_) {
      Rational c = v.coefficient(pivot);
      if (sgn(c) != 0) v.axpy(-c, row);
    }
    if (v.is_zero()) return false;
    const Partition pivot = v.terms().begin()->first;
    v *= 1 / v.coefficient(pivot);
    for (auto& [p, row] : rows_) {
      Rational c = row.coefficient(pivot);
      if (sgn(c) != 0) row.axpy(-c, v);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
  }
  size_t rank() const { return rows_.size(); }

 private:
  std::map<Partition, ModuleVector> rows_;
};

struct ReachabilityReport {
  std::map<int, size_t> rank;
  std::map<int, long> dimension;
  bool complete() const {
    for (const auto& [lv, dim] : dimension) {
      auto it = rank.find(lv);
      if (it == rank.end() || static_cast<long>(it->second) != dim) return false;
    }
    return true;
  }
};

// Closure of the levels <= N under the given operators, within levels <= L_max.
inline ReachabilityReport reachability_closure(int N, int L_max,
                                               const std::vector<VectorOperator>& ops) {
  std::map<int, LevelSpan> spans;
  std::deque<ModuleVector> queue;
  for (const auto& p : partitions_up_to(N)) {
    ModuleVector v(p);
    if (spans[p.weight()].insert(v)) queue.push_back(v);
  }
  while (!queue.empty()) {
    ModuleVector v = queue.front();
    queue.pop_front();
    for (const auto& op : ops) {
      for (const auto& [lv, part] : op(v).by_level()) {
        if (lv > L_max) continue;
        if (spans[lv].insert(part)) queue.push_back(part);
      }
    }
  }
  ReachabilityReport rep;
  for (int lv = 0; lv <= L_max; ++lv) {
    rep.dimension[lv] = partition_count(lv);
    rep.rank[lv] = spans[lv].rank();
  }
  return rep;
}

// Mode actions of V elements of weight <= vw on a module, as raising/lowering
// operators with level shift in [-L_max, L_max].
inline std::vector<VectorOperator> module_mode_operators(const FockModule& W, int vw, int L_max,
                                                         bool contragredient) {
  std::vector<VectorOperator> ops;
  for (const auto& p : partitions_up_to(vw)) {
    if (p.empty()) continue;
    const int d = p.weight();
    for (int shift = -L_max; shift <= L_max; ++shift) {
      if (shift == 0) continue;
      const long n = d - shift - 1;
      VAElement v(p);
      ops.push_back([W, v, n, contragredient, L_max, shift](const ModuleVector& w) {
        if (w.max_level() + shift > L_max || w.max_level() + shift < 0) return ModuleVector{};
        return contragredient ? W.contragredient_mode(v, Rational(n), w) : W.mode(v, n, w);
      });
    }
  }
  return ops;
}

}  // namespace voamodes
