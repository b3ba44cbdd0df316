#include <random>

#include "doctest.h"
#include "padic/potts_bethe.hpp"

using namespace padic;

namespace {

mpz_class rational_mod(const mpq_class& r, prime_t p, int k) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(k));
  mpz_class inv;
  REQUIRE(mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), m.get_mpz_t()) != 0);
  mpz_class out = r.get_num() * inv;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), m.get_mpz_t());
  return out;
}

MapParams params_5226() { return MapParams::from_literal(5, 2, 2, "6"); }

}  // namespace

TEST_CASE("MapParams derived quantities and validation") {
  MapParams m = params_5226();
  CHECK(m.s() == 0);
  CHECK(m.t() == 1);
  CHECK(m.vp_k() == 0);
  CHECK(m.theta_closer_than_q());
  CHECK(agrees(m.pole(), m.constant(2 - 2 - 6)));
  CHECK(m.roots_of_one_minus_q().size() == 2);
  CHECK(m.precision() == 64);

  CHECK_THROWS_AS(MapParams::from_literal(5, 2, 2, "1"), std::invalid_argument);
  CHECK_THROWS_AS(MapParams::from_literal(5, 2, 2, "2"), std::invalid_argument);
  CHECK_THROWS_AS(MapParams::from_literal(5, 5, 2, "6"), std::invalid_argument);
  CHECK_THROWS_AS(MapParams::from_literal(2, 3, 2, "3"), std::invalid_argument);
  CHECK_THROWS_AS(MapParams::from_literal(5, 1, 2, "6"), std::invalid_argument);
  CHECK_THROWS_AS(MapParams::from_literal(5, 2, 0, "6"), std::invalid_argument);

  MapParams sgt = MapParams::from_literal(5, 26, 2, "126");
  CHECK(sgt.s() == 2);
  CHECK(sgt.t() == 3);
}

TEST_CASE("eval examples") {
  for (auto [p, q, k, theta] : {std::tuple{5UL, 2L, 2L, "6"}, std::tuple{7UL, 3L, 3L, "8"},
                                std::tuple{13UL, 4L, 5L, "1+13^2*3"}}) {
    MapParams m = MapParams::from_literal(p, q, k, theta);
    CHECK(agrees(eval(m, m.one()), m.one()));
    CHECK(agrees(eval(m, m.one_minus_q()), m.one_minus_q().pow(k)));
  }
  MapParams m = params_5226();
  PadicNumber f9 = eval(m, m.constant(9));
  mpq_class oracle(55, 15);
  oracle.canonicalize();
  oracle *= oracle;
  CHECK(rational_mod(oracle, 5, 2) == 19);
  CHECK(rational_mod(f9.representative(), 5, 2) == 19);
  CHECK(rational_mod(f9.representative(), 5, 30) == rational_mod(oracle, 5, 30));

  // theta carries finite precision, so its pole is only known to O(p^N)
  CHECK_THROWS_AS(eval(m, m.pole()), PrecisionExhausted);
  CHECK_THROWS_AS(eval(m, m.pole().with_precision(10)), PrecisionExhausted);
}

TEST_CASE("derivative") {
  MapParams m = params_5226();
  PadicNumber at_one = derivative(m, m.one());
  PadicNumber expected =
      m.constant(2) * (m.theta() - m.one()) / (m.theta() - m.one() + m.constant(2));
  CHECK(agrees(at_one, expected));
  CHECK(norm_and_valuation(at_one).norm == mpq_class(1, 5));

  // finite differences at |h| = p^-(N/2)
  std::mt19937_64 rng(5);
  const int n = m.precision();
  for (int i = 0; i < 40; ++i) {
    PadicNumber x = random_integer(5, n, rng) * m.constant(7) + m.constant(3);
    PadicNumber h = PadicNumber::from_unit(5, n / 2, mpz_class(1), n);
    PadicNumber slope = (eval(m, x + h) - eval(m, x)) / h;
    PadicNumber fx = derivative(m, x);
    CHECK(agreement(slope, fx) >= ord(fx) + n / 2 - 4);
  }
}

TEST_CASE("factored difference identity") {
  std::mt19937_64 rng(9);
  for (auto [p, q, k, theta] : {std::tuple{5UL, 2L, 2L, "6"}, std::tuple{7UL, 2L, 3L, "8"},
                                std::tuple{5UL, 26L, 2L, "126"}, std::tuple{3UL, 2L, 6L, "4"}}) {
    MapParams m = MapParams::from_literal(p, q, k, theta);
    for (int i = 0; i < 30; ++i) {
      PadicNumber x = random_integer(p, 40, rng) + m.constant(static_cast<long>(i));
      PadicNumber y = random_integer(p, 40, rng);
      PadicNumber lhs = eval(m, x) - eval(m, y);
      CHECK(agreement(lhs, factored_difference(m, x, y)) >= ord(lhs) + 20);
    }
  }
}

TEST_CASE("fixed point classification") {
  MapParams m = params_5226();
  FixedPointReport one = classify_fixed_point(m, m.one());
  CHECK(one.cls == FixedPointClass::attractive);
  CHECK(one.multiplier_valuation == 1);
  CHECK_THROWS_AS(classify_fixed_point(m, m.constant(2)), std::invalid_argument);
}

TEST_CASE("region trichotomy") {
  MapParams m = params_5226();
  CHECK(region(m, m.one()) == Region::B1);
  CHECK(region(m, m.one_minus_q()) == Region::B3);
  CHECK(region(m, m.one_minus_q() + m.theta() - m.one()) == Region::B2);
  CHECK(region(m, m.one_minus_q() + m.constant(25)) == Region::B3);
}

TEST_CASE("contraction on E_p is exact") {
  ContractionReport a = check_contraction_on_ep(params_5226(), 120, 1);
  CHECK(a.ok);
  CHECK(a.expected_exponent == 1);
  CHECK(a.pairs_checked == 120);

  ContractionReport b = check_contraction_on_ep(MapParams::from_literal(7, 2, 7, "8"), 120, 2);
  CHECK(b.ok);
  CHECK(b.expected_exponent == 2);
}

TEST_CASE("inverse branches invert f") {
  MapParams m = params_5226();
  PadicNumber x = m.constant(-1);
  for (std::size_t i = 0; i < 2; ++i) {
    PadicNumber g = inverse_branch(m, i, x);
    CHECK(agreement(eval(m, g), x) >= m.precision() / 2);
  }
  CHECK_FALSE(agrees(inverse_branch(m, 0, x), inverse_branch(m, 1, x)));
  CHECK_THROWS_AS(inverse_branch(m, 0, m.one()), BranchError);
  CHECK_THROWS_AS(inverse_branch(m, 5, x), BranchError);
}

TEST_CASE("unique attractor basin when Sol_p is empty") {
  MapParams m = MapParams::from_literal(7, 3, 2, "8");
  std::mt19937_64 rng(17);
  const int n = m.precision();
  for (int i = 0; i < 40; ++i) {
    int v = static_cast<int>(rng() % 7) - 3;
    PadicNumber x = random_unit(7, n, rng) * PadicNumber::from_unit(7, v, mpz_class(1), n);
    OrbitConvergence c = converge_to_one(m, x, n / 2, 4 * n);
    CHECK(c.converged);
    REQUIRE(c.entered_ep_at.has_value());
    CHECK(*c.entered_ep_at <= 2);
  }
}
