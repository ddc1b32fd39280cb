#include <catch2/catch_amalgamated.hpp>

#include "voamodes/voamodes.hpp"

using namespace voamodes;

namespace {
Rational q(long p, long d = 1) { return make_rational(p, d); }

ScalarSeries poly(std::initializer_list<std::pair<Rational, Rational>> terms) {
  ScalarSeries s;
  for (const auto& [e, c] : terms) s.add_term(e, c);
  return s;
}
}  // namespace

TEST_CASE("generalized binomial coefficients") {
  CHECK(gen_binomial(5, 0) == 1);
  CHECK(gen_binomial(2, 5) == 0);
  CHECK(gen_binomial(-3, 2) == 6);
  CHECK(gen_binomial(-1, 3) == -1);
  CHECK(falling_binomial(q(1, 2), 2) == q(-1, 8));
}

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-2") == -2);
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(floor_of(q(-1, 2)) == -1);
  CHECK(frac_of(q(-1, 2)) == q(1, 2));
}

TEST_CASE("truncated Taylor polynomials of (x+1)^alpha") {
  CHECK(truncated_taylor(-1, 1) == poly({{q(-1), q(1)}}));
  CHECK(truncated_taylor(1, 0) == poly({{q(1), q(1)}, {q(0), q(1)}}));
  CHECK(truncated_taylor(-2, 2) == poly({{q(-2), q(1)}}));
  CHECK(truncated_taylor(-3, 1).is_zero());
  CHECK(truncated_taylor(-2, 4) == poly({{q(-2), q(1)}, {q(-3), q(-2)}, {q(-4), q(3)}}));
}

TEST_CASE("residue extracts the x^-1 coefficient") {
  CHECK(residue(poly({{q(-1), q(3)}, {q(0), q(2)}})) == 3);
  CHECK(residue(poly({{q(1, 2), q(1)}})) == 0);
  CHECK(residue(truncated_taylor(-1, 1)) == 1);
  ScalarSeries logged(2);
  logged.add_term(q(-1), 1, q(1));
  CHECK_THROWS_AS(residue(logged), LogPresent);
}

TEST_CASE("log coefficient extraction") {
  ScalarSeries s = poly({{q(-1), q(2)}, {q(3, 2), q(5)}});
  CHECK(coeff_log(s, 0) == s);
  CHECK(coeff_log(s, 1).is_zero());
  ScalarSeries t(2);
  t.add_term(q(-1), 2, q(1));
  t.add_term(q(1), 0, q(1));
  CHECK(coeff_log(t, 2) == poly({{q(-1), q(1)}}));
}

TEST_CASE("declared log order is enforced") {
  ScalarSeries s(1);
  CHECK_NOTHROW(s.add_term(q(0), 1, q(1)));
  CHECK_THROWS_AS(s.add_term(q(0), 2, q(1)), LogOrderExceeded);
}

TEST_CASE("binomial series of (1+x)^alpha") {
  CHECK(binom_series(q(2), 5) == poly({{q(0), q(1)}, {q(1), q(2)}, {q(2), q(1)}}));
  CHECK(binom_series(q(0), 3) == poly({{q(0), q(1)}}));
  CHECK(binom_series(q(1, 2), 2) == poly({{q(0), q(1)}, {q(1), q(1, 2)}, {q(2), q(-1, 8)}}));
}

TEST_CASE("series arithmetic") {
  ScalarSeries a = binom_series(q(1, 3), 4);
  ScalarSeries b = binom_series(q(2, 3), 4);
  CHECK(multiply(a, b, q(4)) == binom_series(q(1), 4));
  ScalarSeries d = poly({{q(3, 2), q(2)}}).derivative();
  CHECK(d == poly({{q(1, 2), q(3)}}));
  ScalarSeries l(1);
  l.add_term(q(2), 1, q(1));  // x^2 log x
  ScalarSeries dl = l.derivative();
  CHECK(dl.coefficient(q(1), 1) == 2);
  CHECK(dl.coefficient(q(1), 0) == 1);
  CHECK(evaluate_at_one(poly({{q(1, 2), q(2)}, {q(-3), q(1)}})) == 3);
}

TEST_CASE("log(1+x) powers") {
  ScalarSeries l = log1p_power(1, 3);
  CHECK(l == poly({{q(1), q(1)}, {q(2), q(-1, 2)}, {q(3), q(1, 3)}}));
  ScalarSeries l2 = log1p_power(2, 3);
  CHECK(l2 == poly({{q(2), q(1)}, {q(3), q(-1)}}));
}

TEST_CASE("partition enumeration and norms") {
  CHECK(partition_count(4) == 5);
  CHECK(partitions_up_to(2).size() == 4);
  Partition p{2, 1, 1};
  CHECK(p.weight() == 4);
  CHECK(p.norm() == 2 * 2);  // 2^1 1! * 1^2 2!
  CHECK(p.str() == "(2,1,1)");
  CHECK(p.without_part(1) == Partition{2, 1});
  CHECK(p.with_part(3) == Partition{3, 2, 1, 1});
}

TEST_CASE("Fock vector arithmetic") {
  FockVector v(Partition{1}, q(2));
  v.add(Partition{1}, q(-2));
  CHECK(v.is_zero());
  FockVector w(Partition{2});
  w.add(Partition{1, 1}, q(1, 2));
  CHECK(w.is_homogeneous());
  CHECK(w.level() == 2);
  w.add(Partition{}, q(1));
  CHECK_THROWS_AS(w.level(), NonHomogeneous);
  CHECK(w.at_level(0) == FockVector(Partition{}));
}
