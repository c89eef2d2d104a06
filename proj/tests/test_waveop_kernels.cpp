#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"
#include "invsq/waveop_kernels.hpp"

using namespace invsq;

static double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST_CASE("a = 0 collapses everything") {
  auto p = make_params(3, 0);
  for (int k : {0, 1, 7})
    for (int n : {0, 5, 500}) {
      CHECK(coeff_A(Branch::Plus, k, n, p) == 1.0);
      CHECK(coeff_A(Branch::Minus, k, n, p) == 1.0);
    }
  for (double s : {0.3, 0.7, 1.5, 3.0}) {
    KernelQuery q{p, 2, 2.0, 1.0, s};
    CHECK(kernel_ktilde(q).value == 0.0);
    CHECK(std::abs(kernel_quadrature_oracle(q).value) < 1e-6);
  }
  CHECK(diagonal_limit(p, 0, Side::Below).closed == 0.0);
  CHECK(diagonal_limit(p, 0, Side::Above).closed == 0.0);
}

TEST_CASE("first coefficients against extended precision") {
  auto p = make_params(3, 1);
  // Gamma(a0+1) Gamma(b0+1) / Gamma(mu0+1) and Gamma(a0+1) Gamma(1-b0) / Gamma(nu0+1), mpmath
  CHECK(rel(coeff_A(Branch::Plus, 0, 0, p), 1.3830375808581516388) < 1e-14);
  CHECK(rel(coeff_A(Branch::Minus, 0, 0, p), 0.79260739932807742144) < 1e-14);
}

TEST_CASE("large-n law of the coefficients") {
  for (auto [d, a] : {std::pair{3, 1.0}, {4, -1.0}, {2, 4.0}}) {
    auto p = make_params(d, a);
    for (int k : {0, 3, 40}) {
      double v3 = 1001.0 * (coeff_A(Branch::Plus, k, 1000, p) - 1);
      double v4 = 10001.0 * (coeff_A(Branch::Plus, k, 10000, p) - 1);
      CAPTURE(d);
      CAPTURE(k);
      CHECK(std::abs(v4 - a / 4) < std::abs(v3 - a / 4));
      CHECK(std::abs(v4 - a / 4) < 1e-2 * std::max(1.0, std::abs(a)));
      // E carries the remainder, O(1/n^2)
      double e3 = coeff_E(Branch::Plus, k, 1000, p) * 1001.0 * 1001.0;
      double e4 = coeff_E(Branch::Plus, k, 10000, p) * 10001.0 * 10001.0;
      CHECK(std::abs(e4) <= 4 * std::abs(e3) + 1e-12);
    }
  }
}

TEST_CASE("coefficient table equals the pointwise coefficients") {
  auto p = make_params(3, -0.2);
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    CoeffTable t = coeff_table(p, 4, b, 300);
    REQUIRE(t.A.size() == 301);
    for (int n : {0, 1, 17, 300}) {
      CHECK(rel(t.A[n], coeff_A(b, 4, n, p)) < 1e-13);
      CHECK(std::abs(t.E[n] - coeff_E(b, 4, n, p)) < 1e-15);
    }
  }
}

TEST_CASE("series against the damped quadrature") {
  auto p = make_params(3, 1);
  for (auto [k, s] : {std::pair{0, 0.3}, {0, 0.7}, {1, 1.5}, {3, 2.5}}) {
    KernelQuery q{p, k, 2.0, 1.0, s};
    OracleValue o = kernel_quadrature_oracle(q);
    CAPTURE(k);
    CAPTURE(s);
    REQUIRE(o.converged);
    CHECK(rel(kernel_ktilde(q).value, o.value) < 1e-5);
  }
}

TEST_CASE("small s/r behaviour") {
  auto p = make_params(3, 1);
  const double pe = 2.0, x = 1e-4;
  for (int k : {0, 2}) {
    ModeIndices m = mode_indices(p, k);
    double lead = 2 * gamma_fn(m.a + 1) / (gamma_fn(m.mu + 1) * gamma_fn(-m.b)) *
                  std::pow(x, 1.5 - 3 / pe + 1 + m.mu);
    KernelQuery q{p, k, pe, 1.0, x};
    CAPTURE(k);
    CHECK(rel(kernel_ktilde(q).value, lead) < 1e-6);
  }
}

TEST_CASE("unmodified kernel carries the (s/r)^{d/p} factor") {
  auto p = make_params(4, -1);
  for (double s : {0.4, 2.0}) {
    KernelQuery q{p, 1, 1.5, 1.0, s};
    CHECK(rel(kernel_k(q), std::pow(s, 4 / 1.5) * kernel_ktilde(q).value) < 1e-14);
  }
}

TEST_CASE("near-diagonal evaluation is continuous across the switch") {
  auto p = make_params(3, 1);
  for (double s : {0.999, 1.0005}) {
    KernelQuery q{p, 0, 2.0, 1.0, s};
    KernelOptions plain, split;
    plain.delta_diag = 1e-9;
    plain.n_max = 4000000;
    split.delta_diag = 0.1;
    CHECK(rel(kernel_ktilde(q, plain).value, kernel_ktilde(q, split).value) < 1e-7);
  }
}

TEST_CASE("diagonal limits") {
  auto p = make_params(3, 1);
  ModeIndices m = mode_indices(p, 0);
  double closed = 2 / std::numbers::pi * std::sin(std::numbers::pi * (m.nu - m.mu) / 2);
  DiagonalLimit below = diagonal_limit(p, 0, Side::Below);
  CHECK(rel(below.closed, closed) < 1e-14);
  CHECK(below.gap < 1e-4);
  for (int k : {1, 3, 10}) {
    CAPTURE(k);
    CHECK(diagonal_limit(p, k, Side::Below).gap < 1e-4);
    CHECK(diagonal_limit(p, k, Side::Above).gap < 1e-4);
  }
}

TEST_CASE("exponent predicate matches the interval") {
  for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}, {5, -2.0}}) {
    auto p = make_params(d, a);
    IndexInterval w = admissible_p(p, OperatorTag::W);
    for (int i = 0; i < 100; ++i) {
      double ip = (i + 0.5) / 100;
      CHECK(exponent_predicate(p, 1 / ip) == w.contains(ip));
    }
  }
}

TEST_CASE("canary scale moves the kernel") {
  auto p = make_params(3, 1);
  KernelQuery q{p, 0, 2.0, 1.0, 0.3};
  KernelOptions o;
  o.aplus_scale = 1.01;
  CHECK(rel(kernel_ktilde(q, o).value, kernel_ktilde(q).value) > 1e-3);
}

TEST_CASE("bad queries") {
  auto p = make_params(3, 1);
  CHECK_THROWS_AS(kernel_ktilde({p, -1, 2.0, 1.0, 0.5}), Error);
  CHECK_THROWS_AS(kernel_ktilde({p, 0, 2.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(kernel_ktilde({p, 0, 0.5, 1.0, 0.5}), Error);
}
