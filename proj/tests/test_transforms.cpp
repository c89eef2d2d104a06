#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "invsq/errors.hpp"
#include "invsq/transforms.hpp"

using namespace invsq;

namespace {

RadialFunction gauss(GridPtr g, int k) {
  return sample<double>(g, [k](double r) { return std::pow(r, k) * std::exp(-0.5 * r * r); });
}

}  // namespace

TEST_CASE("log grid quadrature moments") {
  auto g3 = make_log_grid(1e-3, 1e3, 4096, 3);
  CHECK(std::abs(integrate(sample<double>(g3, [](double r) { return std::exp(-r * r); })) -
                 std::sqrt(std::numbers::pi) / 4) < 1e-8);
  // d = 2 misses int_0^{r_min} r dr = r_min^2/2 outright, so the lower end is pushed down
  auto g2 = make_log_grid(1e-5, 1e3, 4096, 2);
  CHECK(std::abs(integrate(sample<double>(g2, [](double r) { return std::exp(-r * r); })) - 0.5) < 1e-8);
  CHECK_THROWS_AS(make_log_grid(1e-3, 1e3, 8, 3), Error);
  CHECK_THROWS_AS(make_log_grid(1.0, 0.5, 64, 3), Error);
}

TEST_CASE("reciprocal grid") {
  auto g = make_log_grid(1e-4, 1e2, 512, 3);
  auto l = reciprocal_grid(*g);
  CHECK(l->size() == g->size());
  CHECK(std::abs(l->r_min - 1e-2) < 1e-15);
  CHECK(std::abs(l->r_max - 1e4) < 1e-9);
  CHECK(grids_reciprocal(*g, *l));
  CHECK_FALSE(grids_reciprocal(*g, *g));
}

TEST_CASE("sine transform of a Gaussian") {
  auto g = make_log_grid(1e-6, 1e6, 16384, 3);
  auto l = reciprocal_grid(*g);
  auto b = bessel_transform(0.5, gauss(g, 0), l);
  double worst = 0;
  for (size_t i = 0; i < l->size(); ++i) {
    double x = l->r[i], ex = std::exp(-0.5 * x * x);
    if (x > 1e-2 && x < 5) worst = std::max(worst, std::abs(b.values[i] - ex) / ex);
  }
  CHECK(worst < 1e-6);
  auto z = bessel_transform(0.5, RadialFunction(g), l);
  for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("Plancherel and involution across d and k") {
  for (int d : {2, 3, 4}) {
    auto g = make_log_grid(1e-6, 1e6, 8192, d);
    auto l = reciprocal_grid(*g);
    for (int k : {0, 1, 4, 8}) {
      auto f = gauss(g, k);
      double mu = 0.5 * (d - 2) + k, nu = std::sqrt(mu * mu + 1.0);
      CAPTURE(d);
      CAPTURE(k);
      CHECK(std::abs(norm(bessel_transform(mu, f, l)) / norm(f) - 1) < 1e-6);
      CHECK(std::abs(norm(hankel_transform(nu, f, l)) / norm(f) - 1) < 1e-6);
      CHECK(distance(hankel_transform(nu, hankel_transform(nu, f, l), g), f) / norm(f) < 1e-5);
    }
  }
}

TEST_CASE("equal orders give identical transforms") {
  auto g = make_log_grid(1e-5, 1e5, 2048, 3);
  auto l = reciprocal_grid(*g);
  auto f = gauss(g, 2);
  auto a = bessel_transform(2.5, f, l), b = hankel_transform(2.5, f, l);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("fast and direct evaluation agree") {
  auto g = make_log_grid(1e-4, 1e4, 1024, 3);
  auto l = reciprocal_grid(*g);
  auto f = gauss(g, 1);
  auto fast = bessel_transform(1.5, f, l);
  auto slow = direct_transform(1.5, f, l);
  double worst = 0;
  for (size_t i = 0; i < l->size(); ++i)
    if (l->r[i] > 1e-2 && l->r[i] < 6) worst = std::max(worst, std::abs(fast.values[i] - slow.values[i]));
  CHECK(worst < 1e-6);
}

TEST_CASE("mode wave operator") {
  auto g = make_log_grid(1e-6, 1e6, 8192, 3);
  for (int k : {0, 1, 3}) {
    auto f = gauss(g, k);
    CAPTURE(k);
    CHECK(distance(apply_mode_waveop(make_params(3, 0), k, f, false), f) / norm(f) < 1e-5);
    auto p = make_params(3, 1);
    auto w = apply_mode_waveop(p, k, f, false);
    CHECK(std::abs(norm(w) / norm(f) - 1) < 1e-5);
    CHECK(distance(apply_mode_waveop(p, k, w, true), f) / norm(f) < 1e-5);
    CHECK(distance(w, f) / norm(f) > 1e-3);  // a = 1 actually moves the data
  }
  auto g2 = make_log_grid(1e-6, 1e6, 256, 2);
  CHECK_THROWS_AS(apply_mode_waveop(make_params(3, 1), 0, gauss(g2, 0), false), Error);
}

TEST_CASE("spectral multipliers") {
  auto g = make_log_grid(1e-6, 1e6, 16384, 3);
  auto f = gauss(g, 0);
  auto p0 = make_params(3, 0);
  auto one = spectral_multiplier(p0, 0, [](double) { return 1.0; }, f, Calculus::La);
  CHECK(distance(one, f) / norm(f) < 1e-5);

  // lam^2 e^{-lam^2} on e^{-r^2/2} is -Delta of 3^{-3/2} e^{-r^2/6}
  MultiplierReport rep;
  auto lap = spectral_multiplier(p0, 0, [](double l) { return l * l * std::exp(-l * l); }, f, Calculus::La, &rep);
  auto ex = sample<double>(g, [](double r) { return std::pow(3.0, -1.5) * (1 - r * r / 9) * std::exp(-r * r / 6); });
  CHECK(distance(lap, ex) / norm(ex) < 1e-8);
  CHECK_FALSE(rep.unresolved);

  // L_a on mode 0 for r^m e^{-r^2/2}, m = nu - lambda0, through a bounded symbol:
  // lam^2 e^{-lam^2} maps it to 3^{-nu-2} (2m+3 - r^2/3) r^m e^{-r^2/6}
  auto p1 = make_params(3, 1);
  const double m = std::sqrt(1.25) - 0.5;
  auto fm = sample<double>(g, [m](double r) { return std::pow(r, m) * std::exp(-0.5 * r * r); });
  auto la = spectral_multiplier(p1, 0, [](double l) { return l * l * std::exp(-l * l); }, fm, Calculus::La);
  auto exm = sample<double>(g, [m](double r) {
    return std::pow(3.0, -m - 2.5) * (2 * m + 3 - r * r / 3) * std::pow(r, m) * std::exp(-r * r / 6);
  });
  CHECK(distance(la, exm) / norm(exm) < 1e-8);

  // the bare lam^2 symbol is not resolved on data that stays finite at r = 0; the report says so
  spectral_multiplier(p0, 0, [](double l) { return l * l; }, f, Calculus::La, &rep);
  CHECK(rep.unresolved);

  // intertwining on one mode
  for (int k : {0, 1, 4}) {
    auto fk = gauss(g, k);
    auto m = [](double l) { return std::exp(-l * l); };
    auto lhs = spectral_multiplier(p1, k, m, apply_mode_waveop(p1, k, fk, false), Calculus::La);
    auto rhs = apply_mode_waveop(p1, k, spectral_multiplier(p1, k, m, fk, Calculus::Laplacian), false);
    CHECK(distance(lhs, rhs) / norm(fk) < 1e-5);
  }
}

TEST_CASE("multiplier edge report flags unresolved data") {
  auto g = make_log_grid(1e-6, 1e6, 4096, 3);
  auto f = gauss(g, 0);
  MultiplierReport rep;
  spectral_multiplier(make_params(3, 1), 0, [](double l) { return std::exp(-l * l); }, f, Calculus::La, &rep);
  CHECK_FALSE(rep.unresolved);
  spectral_multiplier(make_params(3, 1), 0, [](double l) { return l * l * l * l; }, f, Calculus::La, &rep);
  CHECK(rep.unresolved);
}

TEST_CASE("serialization") {
  auto g = make_log_grid(1e-2, 1e2, 16, 3);
  auto f = gauss(g, 0);
  std::ostringstream a, b;
  write_csv(a, f);
  write_csv(b, f);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("r,value\n", 0) == 0);
  CHECK(a.str().find("\n0.01,") != std::string::npos);
  std::string j = grid_json(*g);
  CHECK(j.find("\"n\"") != std::string::npos);
  CHECK(j.find("\"d\"") != std::string::npos);
}
