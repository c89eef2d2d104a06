#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "invsq/errors.hpp"
#include "invsq/params.hpp"

using namespace invsq;

TEST_CASE("make_params examples") {
  auto p = make_params(3, 0);
  CHECK(p.sigma == 0.0);
  CHECK(p.nu0 == 0.5);
  CHECK(std::isinf(p.p0));

  p = make_params(4, -1);
  CHECK(p.nu0 == 0.0);
  CHECK(p.sigma == 1.0);
  CHECK(p.p0 == 4.0);

  p = make_params(2, 4);
  CHECK(p.nu0 == 2.0);
  CHECK(p.sigma == -2.0);
  CHECK(p.lambda0 == 0.0);
}

TEST_CASE("make_params rejects bad input") {
  CHECK_THROWS_AS(make_params(3, -2), Error);
  try {
    make_params(3, -0.26);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Subcritical);
    CHECK(exit_code(e.kind()) == 3);
  }
  CHECK_NOTHROW(make_params(3, -0.25));
  CHECK_THROWS_AS(make_params(1, 0), Error);
  CHECK_THROWS_AS(make_params(3, NAN), Error);
}

TEST_CASE("mode_indices examples") {
  auto m = mode_indices(make_params(3, 0), 2);
  CHECK(m.mu == 2.5);
  CHECK(m.nu == 2.5);
  CHECK(m.b == 0.0);

  m = mode_indices(make_params(3, 1), 0);
  CHECK(m.mu == 0.5);
  CHECK(std::abs(m.nu - std::sqrt(1.25)) < 1e-15);
  CHECK(std::abs(m.a - 0.8090169943749474) < 1e-15);
  CHECK(std::abs(m.b - -0.3090169943749474) < 1e-15);
}

TEST_CASE("mode index identities over a sweep") {
  for (int d : {2, 3, 4, 7})
    for (double a : {-0.2, 0.0, 1e-9, 1.0, 4.0, 1e4}) {
      double floor = -0.25 * (d - 2) * (d - 2);
      if (a < floor) continue;
      auto p = make_params(d, a);
      CHECK(std::abs(p.nu0 * p.nu0 - (p.lambda0 * p.lambda0 + a)) <= 4 * 2.3e-16 * std::max(1.0, p.nu0 * p.nu0));
      for (int k : {0, 1, 5, 100, 5000}) {
        auto m = mode_indices(p, k);
        CAPTURE(d);
        CAPTURE(a);
        CAPTURE(k);
        CHECK(m.a + m.b == doctest::Approx(m.mu).epsilon(1e-14));
        CHECK(m.a - m.b == doctest::Approx(m.nu).epsilon(1e-14));
        CHECK(std::abs(4 * m.a * m.b + a) <= 1e-14 * std::max(1.0, std::abs(a)));
      }
    }
}

TEST_CASE("admissible ranges") {
  auto w = admissible_p(make_params(3, 1), OperatorTag::W);
  CHECK(w.lo == 0.0);
  CHECK(w.hi == 1.0);

  w = admissible_p(make_params(4, -1), OperatorTag::W);
  CHECK(w.lo == 0.25);
  CHECK(w.hi == 0.75);
  auto ws = admissible_p(make_params(4, -1), OperatorTag::WStar);
  CHECK(ws.lo == w.lo);
  CHECK(ws.hi == w.hi);

  auto p = make_params(3, 1);
  double s = 0.5 - std::sqrt(5.0) / 2;
  auto r = admissible_p(p, OperatorTag::Riesz, 1.0);
  CHECK(r.lo == doctest::Approx(std::max(0.0, (s + 1) / 3)));
  CHECK(r.hi == doctest::Approx(std::min({1.0, (3 - s) / 3, 4.0 / 3})));

  CHECK_THROWS_AS(admissible_p(p, OperatorTag::Riesz, 10.0), Error);
  CHECK_THROWS_AS(admissible_p(p, OperatorTag::RieszInverse, -10.0), Error);
}

TEST_CASE("order windows") {
  auto p = make_params(3, 1);
  auto wa = order_window(p, OperatorTag::Riesz);
  CHECK(wa.lo == -3.0);
  CHECK(wa.hi == doctest::Approx(2 + std::sqrt(5.0)));
  auto wb = order_window(p, OperatorTag::RieszInverse);
  CHECK(wb.lo == doctest::Approx(-2 - std::sqrt(5.0)));
  CHECK(wb.hi == 3.0);
}

TEST_CASE("a Sobolev range never exceeds the plain one") {
  for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}}) {
    auto p = make_params(d, a);
    auto w = admissible_p(p, OperatorTag::W);
    for (double al : {-1.0, 0.3, 1.5}) {
      if (!order_window(p, OperatorTag::WSobolev).contains(al)) continue;
      auto ws = admissible_p(p, OperatorTag::WSobolev, al);
      CHECK(ws.lo >= w.lo);
      CHECK(ws.hi <= w.hi);
    }
  }
}

TEST_CASE("theta_pd") {
  CHECK(theta_pd(2, 3) == -1.0);
  CHECK(theta_pd(2, 2) == -1.0);  // (d+1)/p - (d+3)/2
  CHECK(theta_pd(4, 3) == -2.0);
  CHECK_THROWS_AS(theta_pd(1.0, 3), Error);
}

TEST_CASE("operator names round trip") {
  for (auto op : {OperatorTag::W, OperatorTag::WStar, OperatorTag::Riesz, OperatorTag::RieszInverse,
                  OperatorTag::WSobolev, OperatorTag::WStarSobolev})
    CHECK(parse_operator(operator_name(op)) == op);
  CHECK_THROWS_AS(parse_operator("nope"), Error);
}
