#include <catch2/catch_amalgamated.hpp>

#include "voamodes/voamodes.hpp"

using namespace voamodes;

namespace {
constexpr int kCap = 24;
Rational q(long p, long d = 1) { return make_rational(p, d); }
ModuleVector m(std::initializer_list<int> parts, Rational c = 1) {
  return ModuleVector(Partition(parts), c);
}
const FockIntertwiner& fock() {
  static const FockIntertwiner Y(q(1, 2), q(1, 2), kCap);
  return Y;
}
const MapTable& table() {
  static const MapTable f = rho(fock(), CertificationGrid{}.table_bounds());
  return f;
}
MapTable zero_like(const MapTable& f) {
  return MapTable(f.bounds(), f.source1(), f.source2(), f.target());
}
}  // namespace

TEST_CASE("rho of the Fock intertwiner") {
  const MapTable& f = table();
  CHECK(f.entry({0, 0, Partition{}, Partition{}}) == m({}));
  for (const auto& [key, v] : f.entries()) {
    CHECK(v.is_homogeneous());
    CHECK(v.level() == key.k);
  }
  CHECK_THROWS_AS(f.entry({f.bounds().rows + 1, 0, Partition{}, Partition{}}), OutOfTable);
}

TEST_CASE("rho_N is a restriction") {
  MapTable f2 = rho_N(fock(), 2);
  for (const auto& key : f2.grid()) CHECK(f2.entry(key) == table().entry(key));
  MapTable f0 = rho_N(fock(), 0);
  CHECK(f0.grid().size() == 1);
  CHECK(nonzero_entry(f0).has_value());
}

TEST_CASE("zero mode of the reconstruction") {
  const MapTable& f = table();
  for (const auto& key : rho_N(fock(), 2).grid()) {
    ModuleVector a(key.w1), b(key.w2);
    ModuleVector z = yf_zero_mode(f, key.k, key.l, a, b);
    CHECK(z == theta_Y(fock(), key.k, key.l, a, b));
    if (!z.is_zero()) CHECK(z.level() == key.k);
    CHECK(yf_zero_mode(zero_like(f), key.k, key.l, a, b).is_zero());
  }
}

TEST_CASE("reconstructed series") {
  const MapTable& f = table();
  for (const auto& pa : partitions_up_to(2))
    for (const auto& pb : partitions_up_to(2)) {
      ModuleVector a(pa), b(pb);
      CHECK(yf_series(f, a, b, 0, 2) == coeff_log(fock().series(a, b, 0, 2), 0));
      CHECK(yf_series(zero_like(f), a, b, 0, 2).is_zero());
    }
  FockModule W(q(1), kCap);
  FockIntertwiner A = module_action_intertwiner(W);
  MapTable g = rho(A, TableBounds{2, 2, 2});
  CHECK(yf_series(g, m({}), m({1}), 0, 2) == W.vertex_series(VAElement(Partition{}), m({1}), 0, 2));
}

TEST_CASE("certifiers") {
  const MapTable& f = table();
  const CertificationGrid grid;
  CHECK(certify_jacobi(f, grid).ok());
  CHECK(certify_L1_derivative(f, grid).ok());
  CHECK(certify_jacobi(zero_like(f), grid).ok());
  CHECK(certify_L1_derivative(zero_like(f), grid).ok());
  MapTable bad = f;
  TableKey key{0, 0, Partition{}, Partition{}};
  bad.set(key, f.entry(key) + m({}));
  CHECK_FALSE(certify_L1_derivative(bad, grid).ok());
  MapTable bad2 = f;
  TableKey key2{1, 1, Partition{1}, Partition{1}};
  bad2.set(key2, f.entry(key2) + m({1}));
  CHECK_FALSE(certify_jacobi(bad2, grid).ok());
}

TEST_CASE("round trip") {
  const MapTable& f = table();
  CHECK(roundtrip(f).ok());
  CHECK(roundtrip(zero_like(f)).ok());
  MapTable cf = f.scaled(q(-2, 3));
  ReconstructedIntertwiner y(cf);
  for (const auto& key : rho_N(fock(), 2).grid())
    CHECK(theta_Y(y, key.k, key.l, ModuleVector(key.w1), ModuleVector(key.w2)) ==
          q(-2, 3) * f.entry(key));
}

TEST_CASE("reconstruction with a toy nilpotent part keeps the log-free table") {
  // N3 on the level-2 slice of the target: (1,1) -> (2)
  NilpotentParts nil = NilpotentParts::of(table());
  nil.n3 = [](const ModuleVector& v) { return ModuleVector(Partition{2}, v.coefficient(Partition{1, 1})); };
  ReconstructedIntertwiner y(table(), nil, 1);
  auto s = y.series(m({}), m({}), 2, 2);
  auto plain = yf_series(table(), m({}), m({}), 2, 2);
  CHECK(coeff_log(s, 0) == plain);
  for (const auto& [key, c] : plain.terms())
    CHECK(s.coefficient(key.exponent, 1) == nil.n3(c));
  for (const auto& key : rho_N(fock(), 2).grid())
    CHECK(theta_Y(y, key.k, key.l, ModuleVector(key.w1), ModuleVector(key.w2)) == table().entry(key));
}

TEST_CASE("injectivity witnesses") {
  MapTable f = rho_N(fock(), 2);
  CHECK(nonzero_entry(f).has_value());
  CHECK(modes_determined_by_table(fock(), f).ok());
  CHECK_FALSE(nonzero_entry(zero_like(f)).has_value());
}

TEST_CASE("reachability from the lowest levels") {
  FockModule W(q(1, 2), kCap);
  auto full = reachability_closure(2, 6, module_mode_operators(W, 2, 6, false));
  CHECK(full.complete());
  auto dual = reachability_closure(2, 6, module_mode_operators(W, 2, 6, true));
  CHECK(dual.complete());
  // without any operators only the starting levels are spanned
  auto none = reachability_closure(2, 4, {});
  CHECK_FALSE(none.complete());
  CHECK(none.rank.at(2) == 2);
}

TEST_CASE("linear extension to non-homogeneous vectors") {
  const MapTable& f = table();
  ModuleVector a = m({}) + m({1}, q(3));
  ModuleVector b = m({1}) + m({2}, q(-1, 2));
  CHECK(f.value(1, 1, a, b) == f.value(1, 1, m({}), m({1})) + q(3) * f.value(1, 1, m({1}), m({1})));
}
