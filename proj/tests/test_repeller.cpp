#include <chrono>
#include <random>

#include "doctest.h"
#include "padic/repeller.hpp"

using namespace padic;

namespace {

MapParams make(prime_t p, long q, long k, const char* theta) {
  return MapParams::from_literal(p, q, k, theta);
}

// least eta in 0..p-1 with eta (xi - 1) + xi + q - 1 = 0 mod p, by search
long eta_by_search(long p, long q, long xi) {
  for (long eta = 0; eta < p; ++eta)
    if ((eta * (xi - 1) + xi + q - 1) % p == 0) return eta;
  return -1;
}

bool has_check(const RepellerCertificate& c, const std::string& name, bool passed) {
  for (const auto& r : c.checks)
    if (r.name == name) return r.passed == passed;
  return false;
}

}  // namespace

TEST_CASE("covering for (5,2,2,6)") {
  MapParams m = make(5, 2, 2, "6");
  CoveringX c = build_covering(m);
  REQUIRE(c.size() == 2);
  CHECK(c.radius_exponent == 2);
  CHECK(c.eta == std::vector<long>{2, 3});
  CHECK(agrees(c.balls[0].center, m.constant(9)));
  CHECK(agrees(c.balls[1].center, m.constant(14)));
  CHECK(c.has_all_branches());
  CHECK(c.locate(m.constant(9 + 25 * 7)) == 1);
  CHECK(c.locate(m.constant(14 - 50)) == 2);
  CHECK_FALSE(c.locate(m.constant(4)).has_value());
  CHECK_FALSE(c.locate(m.one()).has_value());
}

TEST_CASE("covering centers follow the congruence") {
  for (auto [p, q, k, theta] : {std::tuple{7L, 2L, 3L, "8"}, std::tuple{13L, 11L, 4L, "14"},
                                std::tuple{13L, 9L, 3L, "1+13^2"}, std::tuple{5L, 2L, 2L, "6"}}) {
    MapParams m = make(static_cast<prime_t>(p), q, k, theta);
    CoveringX c = build_covering(m);
    CHECK(c.radius_exponent == 1 + m.t());
    for (int i = 0; i < c.size(); ++i) {
      const long xi = static_cast<long>(c.sol.residues[i]);
      const long eta = eta_by_search(p, q, xi);
      CHECK(c.eta[i] == eta);
      PadicNumber expected = m.one_minus_q() + m.constant(eta) * (m.theta() - m.one());
      CHECK(agrees(c.balls[i].center, expected));
    }
  }
  // (7,2,3,8): xi in {3,5,6}; xi = 6 gives xi + q - 1 = 7 so the center is 1 - q
  CoveringX c = build_covering(make(7, 2, 3, "8"));
  CHECK(c.sol.residues == std::vector<unsigned long>{3, 5, 6});
  CHECK(c.eta == std::vector<long>{5, 2, 0});
}

TEST_CASE("covering when s > 0") {
  MapParams m = make(5, 26, 2, "126");
  CoveringX c = build_covering(m);
  REQUIRE(c.size() == 2);
  CHECK(c.radius_exponent == 5);
  CHECK(c.eta.empty());
  CHECK(agrees(c.balls[0].center, m.constant(-25 + 5 * 2 * 125)));
  CHECK(agrees(c.balls[1].center, m.constant(-25 + 5 * 3 * 125)));
  CHECK(scaling_exponent(m) == 2);
  ScalingReport r = verify_scaling(m, c, 120, 4);
  CHECK(r.ok);
  CHECK(r.observed_exponent == std::vector<int>{2, 2});
}

TEST_CASE("covering unavailable") {
  CHECK_THROWS_AS(build_covering(make(7, 3, 2, "8")), CoveringUnavailable);
  CHECK_THROWS_AS(build_covering(make(5, 26, 2, "6")), CoveringUnavailable);
}

TEST_CASE("scaling exponent and condition") {
  CHECK(scaling_exponent(make(5, 2, 2, "6")) == 1);
  CHECK(scaling_exponent(make(7, 2, 3, "8")) == 1);
  CHECK(scaling_exponent(make(5, 2, 10, "26")) == 1);
  CHECK(scaling_exponent(make(5, 2, 10, "6")) == 0);
  CHECK_FALSE(scaling_exponent(make(5, 26, 3, "126")).has_value());
  for (auto m : {make(5, 2, 2, "6"), make(5, 2, 10, "6"), make(5, 26, 2, "126"),
                 make(3, 28, 3, "1+3^5"), make(3, 28, 3, "1+3^3")}) {
    auto tau = scaling_exponent(m);
    REQUIRE(tau.has_value());
    CHECK(repeller_condition(m) == (*tau >= 1));
  }

  for (auto [p, q, k, theta, tau] : {std::tuple{5UL, 2L, 2L, "6", 1}, std::tuple{7UL, 2L, 3L, "8", 1},
                                     std::tuple{5UL, 2L, 10L, "26", 1}}) {
    MapParams m = make(p, q, k, theta);
    ScalingReport r = verify_scaling(m, build_covering(m), 100, 7);
    CHECK(r.ok);
    CHECK(r.expected_exponent == tau);
    for (auto n : r.pairs_per_ball) CHECK(n == 100);
  }
}

TEST_CASE("certify") {
  auto t0 = std::chrono::steady_clock::now();
  RepellerCertificate a = certify(make(5, 2, 2, "6"));
  auto elapsed = std::chrono::steady_clock::now() - t0;
  CHECK(elapsed < std::chrono::seconds(1));
  CHECK(a.verdict == Verdict::full_shift_chaos);
  CHECK(a.incidence == IncidenceMatrix::all_ones(2));
  CHECK(a.kappa == 2);
  CHECK(a.tau == 1);
  CHECK(a.transitive);
  CHECK(a.preimage_inside);
  CHECK(a.witnesses.empty());

  RepellerCertificate b = certify(make(7, 2, 3, "8"));
  CHECK(b.verdict == Verdict::full_shift_chaos);
  CHECK(b.incidence == IncidenceMatrix::all_ones(3));

  RepellerCertificate c = certify(make(7, 3, 2, "8"));
  CHECK(c.verdict == Verdict::unique_attractor);
  CHECK(c.kappa == 0);
  CHECK_FALSE(c.covering.has_value());

  RepellerCertificate d = certify(make(5, 2, 10, "6"));
  CHECK(d.verdict == Verdict::inconclusive);
  CHECK_FALSE(d.condition_holds);
  CHECK(has_check(d, "repeller_condition", false));

  RepellerCertificate e = certify(make(5, 2, 10, "26"));
  CHECK(e.verdict == Verdict::full_shift_chaos);
  CHECK(e.tau == 1);

  RepellerCertificate f = certify(make(5, 26, 2, "126"));
  CHECK(f.verdict == Verdict::full_shift_chaos);
  CHECK(f.tau == 2);

  // a single ball: x^3 = -1 (mod 5) has the one solution 4
  RepellerCertificate g = certify(make(5, 2, 3, "6"));
  CHECK(g.kappa == 1);
  CHECK(g.verdict == Verdict::inconclusive);
  CHECK(has_check(g, "kappa_at_least_two", false));

  RepellerCertificate h = certify(make(5, 26, 2, "6"));
  CHECK(h.verdict == Verdict::inconclusive);
  CHECK(has_check(h, "theta_closer_than_q", false));

  // Sol = {2} but -4 is not a cube in Q_3
  RepellerCertificate i = certify(make(3, 5, 3, "1+3^5"));
  CHECK(i.verdict == Verdict::inconclusive);
}

TEST_CASE("metric table") {
  MapParams m = make(5, 2, 2, "6");
  MetricTable t = metric_table(m, build_covering(m));
  CHECK(t.tau(1) == 1);
  CHECK(t.tau(2) == 1);
  CHECK(t.kappa(1, 2) == 1);  // |9 - 14|_5
  MapParams w = make(5, 2, 10, "26");
  CHECK(metric_table(w, build_covering(w)).kappa(1, 2) == 2);
}

TEST_CASE("julia approximation") {
  MapParams m = make(5, 2, 2, "6");
  RepellerCertificate cert = certify(m);
  JuliaApprox j0 = julia_approx(m, cert, 0);
  REQUIRE(j0.cylinders.size() == 2);
  CHECK(agrees(j0.cylinders[1].ball.center, m.constant(14)));
  CHECK(j0.cylinders[1].word == SymbolWord{{2}});

  JuliaApprox j3 = julia_approx(m, cert, 3);
  REQUIRE(j3.cylinders.size() == 16);
  for (std::size_t i = 0; i < j3.cylinders.size(); ++i) {
    const Cylinder& cyl = j3.cylinders[i];
    CHECK(cyl.ball.radius_exponent == 5);
    CHECK(itinerary(m, *cert.covering, cyl.ball.center, 4) == cyl.word);
    for (std::size_t k = 0; k < i; ++k) CHECK(cyl.ball.disjoint_from(j3.cylinders[k].ball));
  }
  CHECK(j3.cylinders.front().word == SymbolWord{{1, 1, 1, 1}});
  CHECK(j3.cylinders[1].word == SymbolWord{{1, 1, 1, 2}});

  // nesting: f(depth 3 cylinder) sits inside the depth 2 cylinder of the shift
  JuliaApprox j2 = julia_approx(m, cert, 2);
  for (const Cylinder& cyl : j3.cylinders) {
    const SymbolWord tail = shift(cyl.word);
    bool found = false;
    for (const Cylinder& up : j2.cylinders)
      if (up.word == tail) found = up.ball.contains(eval(m, cyl.ball.center));
    CHECK(found);
  }

  CHECK_THROWS_AS(julia_approx(m, cert, 70), PrecisionExhausted);
  CHECK_THROWS_AS(julia_approx(m, certify(make(7, 3, 2, "8")), 1), std::invalid_argument);

  MapParams w = make(7, 2, 3, "8");
  CHECK(julia_approx(w, certify(w), 2).cylinders.size() == 27);
}

TEST_CASE("itinerary") {
  MapParams m = make(5, 2, 2, "6");
  CoveringX c = build_covering(m);
  CHECK(itinerary(m, c, c.balls[0].center, 1) == SymbolWord{{1}});
  CHECK_THROWS_AS(itinerary(m, c, m.one(), 3), std::invalid_argument);

  // of the five sub-balls 9 + 25 j of ball 1 only the two depth-1 cylinders
  // stay in X; the other three escape after one step
  int escaped = 0;
  for (int j = 0; j < 5; ++j) {
    try {
      itinerary(m, c, m.constant(9 + 25 * j), 2);
    } catch (const EscapedAtStep& e) {
      CHECK(e.step() == 1);
      ++escaped;
    }
  }
  CHECK(escaped == 3);
}

TEST_CASE("points from itineraries") {
  MapParams m = make(5, 2, 2, "6");
  CoveringX c = build_covering(m);
  const int half = m.precision() / 2;
  for (int i = 1; i <= 2; ++i) {
    PadicNumber x = point_from_itinerary(m, c, SymbolWord{{i}}, true);
    CHECK(c.locate(x) == i);
    FixedPointReport r = classify_fixed_point(m, x);
    CHECK(r.cls == FixedPointClass::repelling);
    CHECK(r.multiplier_valuation == -1);
    PadicNumber g = branch(m, c, i, x);
    CHECK(agreement(g, x) >= half);
  }

  PadicNumber x = point_from_itinerary(m, c, SymbolWord{{1, 2}}, true);
  CHECK(agreement(iterate(m, x, 2), x) >= half);
  CHECK_FALSE(agreement(eval(m, x), x) >= half);
  CHECK(itinerary(m, c, x, 6) == SymbolWord{{1, 2, 1, 2, 1, 2}});

  SymbolWord w{{2, 1, 1, 2, 1}};
  PadicNumber y = point_from_itinerary(m, c, w, false);
  CHECK(itinerary(m, c, y, 5) == w);

  CHECK_THROWS_AS(point_from_itinerary(m, c, SymbolWord{{3}}, true), std::invalid_argument);
  CHECK_THROWS_AS(point_from_itinerary(m, c, SymbolWord{}, false), std::invalid_argument);
}

TEST_CASE("periodic point counts") {
  for (auto [p, q, k, theta] : {std::tuple{5UL, 2L, 2L, "6"}, std::tuple{7UL, 2L, 3L, "8"}}) {
    MapParams m = make(p, q, k, theta);
    CoveringX c = build_covering(m);
    long expected = 1;
    for (int n = 1; n <= 3; ++n) {
      expected *= k;
      auto pts = periodic_points(m, c, n);
      // kappa = k here, and the numerator of f^n(x) - x has degree k^n + 1
      // with the root 1 outside X, so k^n distinct solutions in X are all
      REQUIRE(static_cast<long>(pts.size()) == expected);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].residual_exponent >= m.precision() / 2);
        CHECK(c.locate(pts[i].point).has_value());
        for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(agrees(pts[i].point, pts[j].point));
      }
    }
  }
}

TEST_CASE("conjugacy") {
  MapParams m = make(5, 2, 2, "6");
  RepellerCertificate cert = certify(m);
  ConjugacyReport r = verify_conjugacy(m, cert, 50, 6, 21);
  CHECK(r.ok);
  CHECK(r.failure == "");
  CHECK(r.pairs_checked == 50);
  CHECK(r.orbits_checked == 100);

  MapParams w = make(7, 2, 3, "8");
  CHECK(verify_conjugacy(w, certify(w), 30, 4, 5).ok);
  MapParams s = make(5, 26, 2, "126");
  CHECK(verify_conjugacy(s, certify(s), 30, 4, 5).ok);
  MapParams pk = make(5, 2, 10, "26");
  CHECK(verify_conjugacy(pk, certify(pk), 30, 4, 5).ok);

  // different top-level balls: |x - y|_5 = |9 - 14|_5 = 5^-1
  CoveringX c = *cert.covering;
  SymbolWord a = itinerary(m, c, c.balls[0].center, 1), b = itinerary(m, c, c.balls[1].center, 1);
  CHECK(d_f(a, b, metric_table(m, c)) == 1);
}
