#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "voamodes/voamodes.hpp"

using namespace voamodes;

namespace {
constexpr int kCap = 24;
Rational q(long p, long d = 1) { return make_rational(p, d); }
ModuleVector m(std::initializer_list<int> parts, Rational c = 1) {
  return ModuleVector(Partition(parts), c);
}
}  // namespace

TEST_CASE("leading terms of the Fock intertwiner") {
  for (auto [l1, l2] : {std::pair{q(1, 2), q(1, 2)}, {q(1), q(-1, 2)}, {q(2, 3), q(3)}}) {
    FockIntertwiner Y(l1, l2, kCap);
    auto s = Y.series(m({}), m({}), 0, 1);
    CHECK(s.coefficient(l1 * l2) == m({}));
    CHECK(s.coefficient(l1 * l2 + 1) == m({1}, l1));
    const auto wide = Y.series(m({1}), m({2}), 0, 4);
    for (const auto& [key, c] : wide.terms())
      CHECK(is_integer(key.exponent - l1 * l2));
    CHECK(Y.shift() == Y.source2().lowest_weight() - Y.target().lowest_weight());
  }
  CHECK(FockIntertwiner(q(1, 2), q(1, 2), kCap).shift() == q(-3, 8));
}

TEST_CASE("zero first charge is the module action") {
  FockModule W(q(1, 2), kCap);
  FockIntertwiner Y = module_action_intertwiner(W);
  for (const auto& pv : partitions_up_to(3))
    for (const auto& pw : partitions_up_to(2))
      CHECK(Y.series(ModuleVector(pv), ModuleVector(pw), 0, 4) ==
            W.vertex_series(VAElement(pv), ModuleVector(pw), 0, 4));
}

TEST_CASE("intertwiner modes") {
  FockIntertwiner Y(q(1, 2), q(1, 2), kCap);
  // leading mode: x^{1/4} = x^{-m-1}
  const Rational lead = q(-5, 4);
  CHECK(intertwiner_Yk_mode(Y, 0, lead, m({}), m({})) == m({}));
  CHECK(intertwiner_Yk_mode(Y, 1, lead, m({}), m({})).is_zero());
  CHECK_THROWS_AS(intertwiner_Yk_mode(Y, -1, lead, m({}), m({})), LogOrderExceeded);
  std::mt19937_64 g(7);
  auto basis = partitions_up_to(3);
  for (int trial = 0; trial < 20; ++trial) {
    Partition a = basis[g() % basis.size()], b = basis[g() % basis.size()];
    long shift = static_cast<long>(g() % 5) - 1;
    Rational mode = Y.source1().weight_of_level(a.weight()) + Y.source2().weight_of_level(b.weight()) -
                    Y.target().lowest_weight() - 1 - shift;
    ModuleVector out = intertwiner_Yk_mode(Y, 0, mode, ModuleVector(a), ModuleVector(b));
    if (shift < 0) {
      CHECK(out.is_zero());
    } else if (!out.is_zero()) {
      CHECK(out.level() == shift);
    }
  }
}

TEST_CASE("theta_Y examples") {
  FockIntertwiner Y(q(1, 2), q(1, 2), kCap);
  CHECK(theta_Y(Y, 0, 0, m({}), m({})) == m({}));
  CHECK(theta_Y(Y, 0, 1, m({}), m({})).is_zero());
  CHECK(theta_Y(Y, 1, 0, m({}), m({})) == m({1}, q(1, 2)));
  FockModule W(q(1), kCap);
  FockIntertwiner A = module_action_intertwiner(W);
  for (int k = 0; k <= 2; ++k)
    for (int l = 0; l <= 2; ++l)
      for (const auto& v : partitions_up_to(3))
        for (const auto& w : partitions_of(l))
          CHECK(theta_Y(A, k, l, ModuleVector(v), ModuleVector(w)) ==
                W.theta(k, l, VAElement(v), ModuleVector(w)));
}

TEST_CASE("right vertex operator") {
  FockModule V0 = adjoint_module(kCap);
  auto s = right_vertex_op(V0, m({}), HeisenbergVOA::vacuum(), 4);
  CHECK(s.size() == 1);
  CHECK(s.coefficient(0) == m({}));
  FockModule W(q(1, 2), kCap);
  for (const auto& p : partitions_up_to(3)) {
    auto r = right_vertex_op(W, ModuleVector(p), HeisenbergVOA::vacuum(), 4);
    CHECK(r.coefficient(0) == ModuleVector(p));
    // Y_WV(w, x) 1 = e^{x L(-1)} w
    CHECK(r.coefficient(1) == W.Lminus1(ModuleVector(p)));
  }
}

TEST_CASE("conjugation formula for the series") {
  FockIntertwiner Y(q(1), q(-1, 2), kCap);
  for (const auto& a : partitions_up_to(2))
    for (const auto& b : partitions_up_to(2))
      CHECK(conjugation_series(Y, ModuleVector(a), ModuleVector(b), 0, 3) ==
            coeff_log(Y.series(ModuleVector(a), ModuleVector(b), 0, 3), 0));
}
