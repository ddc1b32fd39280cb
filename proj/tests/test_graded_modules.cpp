#include <catch2/catch_amalgamated.hpp>

#include "voamodes/voamodes.hpp"

using namespace voamodes;

namespace {
constexpr int kCap = 24;
Rational q(long p, long d = 1) { return make_rational(p, d); }
ModuleVector m(std::initializer_list<int> parts, Rational c = 1) {
  return ModuleVector(Partition(parts), c);
}
const VAElement kVac = HeisenbergVOA::vacuum();
const VAElement kOmega = HeisenbergVOA::conformal_vector();
const VAElement kAlpha = VAElement(Partition{1});
}  // namespace

TEST_CASE("module modes of Fock modules") {
  for (const Rational& lam : {q(0), q(1, 2), q(1), q(-3, 2)}) {
    FockModule W(lam, kCap);
    CHECK(W.mode(kAlpha, 0L, m({})) == lam * m({}));
    CHECK(W.mode(kOmega, 1L, m({})) == (lam * lam / 2) * m({}));
    for (const auto& p : partitions_up_to(3)) {
      CHECK(W.mode(kVac, -1L, ModuleVector(p)) == ModuleVector(p));
      CHECK(W.L0(ModuleVector(p)) == W.weight_of_level(p.weight()) * ModuleVector(p));
    }
    CHECK(W.mode(kAlpha, q(1, 2), m({})).is_zero());
  }
}

TEST_CASE("theta_W examples") {
  FockModule W(q(1), kCap);
  for (int k = 0; k <= 2; ++k)
    for (int l = 0; l <= 2; ++l)
      for (const auto& p : partitions_of(l))
        CHECK(W.theta(k, l, kVac, ModuleVector(p)) == (k == l ? ModuleVector(p) : ModuleVector{}));
  for (int l = 0; l <= 3; ++l)
    for (const auto& p : partitions_of(l)) CHECK(W.theta(l, l, kAlpha, ModuleVector(p)) == ModuleVector(p));
  CHECK(W.theta(1, 1, kAlpha, m({2})).is_zero());
  // theta([a(-1)]_{10}) creates a(-1)
  CHECK(W.theta(1, 0, kAlpha, m({})) == m({1}));
}

TEST_CASE("Omega_N^0 sizes") {
  FockModule W(q(1, 2), kCap);
  CHECK(W.omega_N0(0).size() == 1);
  CHECK(W.omega_N0(1) == std::vector<Partition>{Partition{}, Partition{1}});
  CHECK(W.omega_N0(2).size() == 4);
}

TEST_CASE("contragredient modes") {
  FockModule W(q(1, 2), kCap);
  for (const auto& p : partitions_up_to(3))
    for (long n = -3; n <= 1; ++n) {
      ModuleVector wp(p);
      auto expect = n == -1 ? wp : ModuleVector{};
      CHECK(W.contragredient_mode(kVac, Rational(n), wp) == expect);
    }
  // pairing duality against a brute-force adjoint for v = a(-1): a(n)^T = -a(-n)
  for (const auto& pw : partitions_up_to(2))
    for (const auto& pv : partitions_up_to(2))
      for (long n = -2; n <= 2; ++n) {
        ModuleVector wp(pw), w(pv);
        Rational lhs = FockModule::pairing(W.contragredient_mode(kAlpha, Rational(n), wp), w);
        Rational rhs = -FockModule::pairing(wp, W.mode(kAlpha, -n, w));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("contragredient modes are the modes twisted by a -> -a") {
  FockModule W(q(1, 2), kCap);
  auto twist = [](const VAElement& v) {
    VAElement out;
    for (const auto& [p, c] : v.terms()) out.add(p, c * sign_power(static_cast<long>(p.parts().size())));
    return out;
  };
  for (const auto& pv : partitions_up_to(3))
    for (const auto& pw : partitions_up_to(2))
      for (long n = -3; n <= 3; ++n) {
        VAElement v(pv);
        ModuleVector w(pw);
        CHECK(W.contragredient_mode(v, Rational(n), w) == W.mode(twist(v), n, w));
      }
}

TEST_CASE("adjoint module is V itself") {
  HeisenbergVOA V(kCap);
  FockModule V0 = adjoint_module(kCap);
  for (const auto& pu : partitions_up_to(3))
    for (const auto& pv : partitions_up_to(3))
      for (long n = -3; n <= 3; ++n)
        CHECK(V0.mode(VAElement(pu), n, ModuleVector(pv)) == V.mode(VAElement(pu), n, VAElement(pv)));
}

TEST_CASE("log dressing with a nilpotent toy grading operator") {
  // Two-dimensional level-2 space with N: (1,1) -> (2), (2) -> 0.
  VectorOperator N = [](const ModuleVector& v) {
    return ModuleVector(Partition{2}, v.coefficient(Partition{1, 1}));
  };
  LogLaurent<ModuleVector> s;
  s.add_term(q(1, 3), m({1, 1}));
  auto dressed = log_dress<ModuleVector>(s, N, +1, 1);
  CHECK(dressed.coefficient(q(1, 3), 0) == m({1, 1}));
  CHECK(dressed.coefficient(q(1, 3), 1) == m({2}));
  CHECK_THROWS_AS(log_dress<ModuleVector>(s, N, +1, 0), LogOrderExceeded);
  // x^{N} x^{-N} = 1
  auto undone = log_dress<ModuleVector>(log_dress<ModuleVector>(s, N, -1, 2), N, +1, 2);
  CHECK(undone == s);
  auto neg = negative_log_expansion(N, m({1, 1}));
  REQUIRE(neg.size() == 2);
  CHECK(neg[1].first == 1);
  CHECK(neg[1].second == m({2}, -1));
}
