#include <catch2/catch_amalgamated.hpp>

#include "voamodes/voamodes.hpp"

using namespace voamodes;

namespace {
const HeisenbergVOA V(24);
VAElement a(std::initializer_list<int> parts, Rational c = 1) { return VAElement(Partition(parts), c); }
}  // namespace

TEST_CASE("vacuum and conformal vector") {
  CHECK(HeisenbergVOA::weight(HeisenbergVOA::vacuum()) == 0);
  CHECK(HeisenbergVOA::weight(HeisenbergVOA::conformal_vector()) == 2);
  CHECK(V.L1(HeisenbergVOA::conformal_vector()).is_zero());
  CHECK(V.L0(HeisenbergVOA::vacuum()).is_zero());
  CHECK(V.Lminus1(HeisenbergVOA::vacuum()).is_zero());
  CHECK(V.L0(a({3})) == a({3}, 3));
  CHECK(V.L(2, HeisenbergVOA::conformal_vector()) == a({}, make_rational(1, 2)));
}

TEST_CASE("vertex algebra modes") {
  for (const auto& p : partitions_up_to(4)) {
    VAElement u(p);
    CHECK(V.mode(HeisenbergVOA::vacuum(), -1, u) == u);
    CHECK(V.mode(HeisenbergVOA::conformal_vector(), 1, u) == Rational(p.weight()) * u);
  }
  CHECK(V.mode(HeisenbergVOA::conformal_vector(), 0, a({1})) == a({2}));
  CHECK(V.mode(a({1}), -1, a({1})) == a({1, 1}));
  CHECK(V.mode(a({1}), 1, a({1})) == a({}));
  CHECK(V.mode(a({1}), -2, HeisenbergVOA::vacuum()) == a({2}));
}

TEST_CASE("vertex series coefficients") {
  const VAElement omega = HeisenbergVOA::conformal_vector();
  auto s = V.vertex_series(HeisenbergVOA::vacuum(), a({2, 1}), -10, 10);
  CHECK(s.size() == 1);
  CHECK(s.coefficient(0) == a({2, 1}));
  auto t = V.vertex_series(omega, omega, -4, -4);
  CHECK(t.coefficient(-4) == a({}, make_rational(1, 2)));
  auto r = V.vertex_series(a({1}), a({1}), -2, -2);
  CHECK(r.coefficient(-2) == a({}));
}

TEST_CASE("Virasoro relations on low weights") {
  for (const auto& p : partitions_up_to(4))
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n) {
        VAElement u(p);
        VAElement lhs = V.L(m, V.L(n, u)) - V.L(n, V.L(m, u));
        VAElement rhs = Rational(m - n) * V.L(m + n, u);
        if (m + n == 0) rhs.axpy(make_rational(m * m * m - m, 12), u);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("e^{L(1)} terminates") {
  CHECK(V.exp_L1(HeisenbergVOA::conformal_vector()) == HeisenbergVOA::conformal_vector());
  VAElement v = a({2});
  CHECK(V.exp_L1(v) == v + V.L1(v));
}

TEST_CASE("truncation overflow is an error") {
  HeisenbergVOA small(3);
  CHECK_THROWS_AS(small.mode(a({1}), -3, a({1})), TruncationOverflow);
  CHECK_THROWS_AS(HeisenbergVOA::weight(a({1}) + a({})), NonHomogeneous);
}
