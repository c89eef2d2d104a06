#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "invsq/errors.hpp"
#include "invsq/riesz_kernels.hpp"

using namespace invsq;

static double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// references: 2 G^{2,2}_{4,4}(rho^2) from mpmath.meijerg, and direct Gamma products, 30 digits

TEST_CASE("kernel against Meijer-G references") {
  auto p = make_params(3, 1);
  struct R {
    int k;
    double al, rho, v;
  };
  for (R r : {R{0, 0.7, 2.0, -0.026904359297516445004}, R{0, 0.7, 0.4, -0.41160627572389958994},
              R{1, 1.3, 2.5, -0.0048391310326421617126}, R{2, 0.5, 0.4, -0.018932834425782354053},
              R{0, 1.0, 1.0 / 3, -0.72972037298560355883}}) {
    CAPTURE(r.k);
    CAPTURE(r.al);
    CAPTURE(r.rho);
    CHECK(rel(kernel_riesz(p, r.k, r.al, r.rho, 1.0).value, r.v) < 1e-12);
    CHECK(rel(inverse_mellin_oracle(p, r.k, r.al, r.rho, NAN).value, r.v) < 1e-10);
  }
}

TEST_CASE("coefficients against direct Gamma products") {
  auto p = make_params(3, 1);
  RieszCoeffs c = riesz_coeffs(p, 1, 0.5, 4);
  CHECK(rel(c.C, -0.67607840315146526347) < 1e-14);
  CHECK(rel(c.A1[0], 1.0517332125707898452) < 1e-14);
  CHECK(rel(c.A2[0], 1.0427398055734998427) < 1e-14);
}

TEST_CASE("symbol values") {
  auto p = make_params(3, 1);
  auto h = mellin_symbol(p, 0, 1.0, {1.5, 0});
  CHECK(rel(h.real(), 0.44721359549995793928) < 1e-13);
  auto h2 = mellin_symbol(p, 0, 0.7, {1.5, 2});
  CHECK(std::abs(h2 - std::complex<double>(0.92133736567636408407, 0.025162476414051736833)) < 1e-13);
  CHECK(std::abs(mellin_symbol(p, 0, 1.0, {1.0, 0})) == 0.0);  // denominator pole
  for (double a : {0.0, 1.0})
    for (auto z : {std::complex<double>(0.7, 0.0), std::complex<double>(1.2, -3.0)})
      CHECK(std::abs(mellin_symbol(make_params(3, a), 2, 0.0, z) - 1.0) < 1e-14);
}

TEST_CASE("Fox-H invariants") {
  for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}})
    for (int k : {0, 1, 6})
      for (double al : {-0.8, 0.5, 1.3}) {
        auto p = make_params(d, a);
        if (!order_window(p, OperatorTag::Riesz).contains(al)) continue;
        FoxHInstance h = make_foxh(p, k, al);
        CHECK(std::abs(h.Lambda) < 1e-14);
        CHECK(std::abs(h.delta - 1) < 1e-14);
        CHECK(std::abs(h.a_star) < 1e-14);
        CHECK(std::abs(h.varrho) < 1e-14);
        CHECK(h.pole_separated());
        CHECK(h.strip_lo < h.strip_hi);
      }
}

TEST_CASE("a = 0 and alpha = 0 give no off-diagonal kernel") {
  auto p0 = make_params(3, 0);
  CHECK(riesz_C(p0, 1, 0.7) == 0.0);
  CHECK(kernel_riesz(p0, 1, 0.7, 1.0, 0.5).value == 0.0);
  CHECK(kernel_even(p0, 1, 1, 1.0, 0.5) == 0.0);
  CHECK(inverse_mellin_oracle(p0, 0, 0.7, 2.0, NAN).value == 0.0);
  CHECK(riesz_diagonal_limit(p0, 0, 0.7, Side::Below).combined == 0.0);
  auto p = make_params(3, 1);
  double prev = std::abs(kernel_riesz(p, 0, 1e-2, 1.0, 0.5).value);
  for (double al : {1e-3, 1e-4, 1e-5}) {
    double v = std::abs(kernel_riesz(p, 0, al, 1.0, 0.5).value);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("series and contour oracle agree") {
  auto p = make_params(3, 1);
  for (int k = 0; k <= 3; ++k)
    for (double al : {0.5, 0.7, 1.3})
      for (double rho : {0.4, 2.5}) {
        CAPTURE(k);
        CAPTURE(al);
        CAPTURE(rho);
        double o = inverse_mellin_oracle(p, k, al, rho, NAN).value;
        CHECK(rel(kernel_riesz(p, k, al, rho, 1.0).value, o) < 1e-9);
      }
  // the oracle does not care where the contour sits inside the strip
  FoxHInstance h = make_foxh(p, 1, 0.7);
  double c1 = h.strip_lo + 0.2 * (h.strip_hi - h.strip_lo), c2 = h.strip_lo + 0.8 * (h.strip_hi - h.strip_lo);
  CHECK(rel(inverse_mellin_oracle(p, 1, 0.7, 0.4, c1).value, inverse_mellin_oracle(p, 1, 0.7, 0.4, c2).value) < 1e-10);
  CHECK_THROWS_AS(inverse_mellin_oracle(p, 1, 0.7, 0.4, h.strip_hi + 0.1), Error);
}

TEST_CASE("inverse direction") {
  auto p = make_params(3, 1);
  for (double be : {0.5, 1.3})
    for (double rho : {0.4, 2.5}) {
      double o = inverse_mellin_oracle(p, 1, be, rho, NAN, {}, RieszDirection::Inverse).value;
      CHECK(rel(kernel_riesz(p, 1, be, rho, 1.0, RieszDirection::Inverse).value, o) < 1e-9);
    }
}

TEST_CASE("coefficient symmetry") {
  for (auto [d, a] : {std::pair{3, 1.0}, {4, -1.0}})
    for (int k : {0, 2})
      for (int n : {0, 3, 50}) {
        auto p = make_params(d, a);
        CHECK(rel(riesz_h1(p, k, 0.7, n), riesz_h2(p, k, -0.7, n, RieszDirection::Inverse)) < 1e-12);
      }
}

TEST_CASE("A coefficients tend to one at rate 1/n^2") {
  auto p = make_params(3, 1);
  for (int k : {0, 5, 64}) {
    RieszCoeffs c = riesz_coeffs(p, k, 0.5, 10000);
    for (const auto* A : {&c.A1, &c.A2}) {
      double r3 = std::abs((*A)[1000] - 1) * 1001.0 * 1001.0, r4 = std::abs((*A)[10000] - 1) * 10001.0 * 10001.0;
      CAPTURE(k);
      CHECK(std::abs((*A)[10000] - 1) < 1e-6);
      CHECK(r4 <= 4 * r3);
    }
  }
}

TEST_CASE("even orders") {
  auto p = make_params(3, 1);
  for (int k = 0; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(std::abs(kernel_riesz(p, k, 2 - 1e-4, 1.0, 0.5).value - kernel_even(p, k, 1, 1.0, 0.5)) < 1e-3);
    CHECK(kernel_riesz(p, k, 2.0, 1.0, 0.5).value == kernel_even(p, k, 1, 1.0, 0.5));
  }
  CHECK_THROWS_AS(riesz_coeffs(p, 0, 2.0, 3), Error);
}

TEST_CASE("diagonal limits") {
  auto p = make_params(3, 1);
  for (int k : {0, 2})
    for (double al : {0.7, 1.0})
      for (Side s : {Side::Below, Side::Above}) {
        RieszDiagonal dl = riesz_diagonal_limit(p, k, al, s);
        CAPTURE(k);
        CAPTURE(al);
        CHECK(dl.gap < 1e-4);
        CHECK(std::abs(dl.family1 - dl.C) < 1e-4);
        CHECK(std::abs(dl.combined) < 1e-4);
      }
}

TEST_CASE("guarded cases") {
  auto p = make_params(3, 1);
  double res = std::sqrt(1.25) - 0.5;  // (mu - nu + alpha)/2 = 0 at k = 0
  CHECK_THROWS_AS(kernel_riesz(p, 0, res, 1.0, 0.5), Error);
  try {
    kernel_riesz(p, 0, res, 1.0, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resonance);
  }
  CHECK_THROWS_AS(kernel_riesz(p, 0, 9.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(kernel_riesz(p, 0, 0.7, 1.0, 1.0), Error);
}
