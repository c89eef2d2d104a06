#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invsq/errors.hpp"
#include "invsq/harmonics.hpp"

using namespace invsq;

namespace {

constexpr double kPi = std::numbers::pi;

Field bump(AngularPtr ang, GridPtr g) {
  if (ang->d == 2)
    return make_field(ang, g, [](double r, double th, double) {
      return cplx(std::exp(-0.5 * r * r) * (1.0 + r * std::cos(th) + r * r * std::sin(2 * th)));
    });
  return make_field(ang, g, [](double r, double th, double ph) {
    return cplx(std::exp(-0.5 * r * r) * (1.0 + r * std::cos(th) + r * r * std::pow(std::sin(th), 2) * std::cos(2 * ph)));
  });
}

}  // namespace

TEST_CASE("harmonics are orthonormal on the quadrature grid") {
  for (int d : {2, 3}) {
    const int K = 6;
    auto ang = angular_grid_for(d, K);
    double total = 0;
    for (double w : ang->w) total += w;
    CHECK(total == doctest::Approx(d == 2 ? 2 * kPi : 4 * kPi).epsilon(1e-14));
    std::vector<std::pair<int, int>> keys;
    for (int k = 0; k <= K; ++k)
      for (int l = 1; l <= harmonic_count(d, k); ++l) keys.push_back({k, l});
    double worst = 0;
    for (auto [k1, l1] : keys)
      for (auto [k2, l2] : keys) {
        double s = 0;
        for (size_t a = 0; a < ang->size(); ++a)
          s += ang->w[a] * real_harmonic(d, k1, l1, ang->theta[a], ang->phi[a]) *
               real_harmonic(d, k2, l2, ang->theta[a], ang->phi[a]);
        worst = std::max(worst, std::abs(s - ((k1 == k2 && l1 == l2) ? 1.0 : 0.0)));
      }
    CAPTURE(d);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("explicit harmonics") {
  CHECK(harmonic_count(2, 0) == 1);
  CHECK(harmonic_count(2, 5) == 2);
  CHECK(harmonic_count(3, 4) == 9);
  CHECK_THROWS_AS(harmonic_count(4, 1), Error);
  CHECK(real_harmonic(2, 2, 1, 0.3) == doctest::Approx(std::cos(0.6) / std::sqrt(kPi)));
  CHECK(real_harmonic(2, 2, 2, 0.3) == doctest::Approx(std::sin(0.6) / std::sqrt(kPi)));
  double th = 0.7, ph = 1.1;
  CHECK(real_harmonic(3, 0, 1, th, ph) == doctest::Approx(0.5 / std::sqrt(kPi)));
  CHECK(real_harmonic(3, 1, 2, th, ph) == doctest::Approx(std::sqrt(3 / (4 * kPi)) * std::cos(th)));
  CHECK(real_harmonic(3, 1, 3, th, ph) == doctest::Approx(std::sqrt(3 / (4 * kPi)) * std::sin(th) * std::cos(ph)));
  CHECK(real_harmonic(3, 2, 1, th, ph) ==
        doctest::Approx(std::sqrt(15 / (16 * kPi)) * std::pow(std::sin(th), 2) * std::sin(2 * ph)));
  CHECK(real_harmonic(3, 2, 3, th, ph) ==
        doctest::Approx(std::sqrt(5 / (16 * kPi)) * (3 * std::pow(std::cos(th), 2) - 1)));
  CHECK_THROWS_AS(real_harmonic(3, 1, 4, th, ph), Error);
}

TEST_CASE("analysis and synthesis") {
  for (int d : {2, 3}) {
    const int K = 4;
    auto ang = angular_grid_for(d, K);
    auto g = make_log_grid(1e-5, 1e5, 4096, d);
    Field F = bump(ang, g);
    const double nf = field_norm(F);
    ModeExpansion e = analyze(F, K);
    CAPTURE(d);
    CHECK(std::abs(e.norm() - nf) / nf < 1e-12);
    CHECK(field_distance(synthesize(e, ang), F) / nf < 1e-12);
    // modes the bump does not contain
    CHECK(norm(e.get(3, 1)) / nf < 1e-13);
    if (d == 2) {
      // r^2 sin 2 theta sits entirely in (k, l) = (2, 2)
      auto m = e.get(2, 2);
      for (size_t i = 0; i < g->size(); i += 512)
        CHECK(std::abs(m.values[i] - std::sqrt(kPi) * g->r[i] * g->r[i] * std::exp(-0.5 * g->r[i] * g->r[i])) < 1e-13);
      CHECK(norm(e.get(2, 1)) / nf < 1e-13);
    } else {
      // constant part: sqrt(4 pi) e^{-r^2/2}
      auto m = e.get(0, 1);
      for (size_t i = 0; i < g->size(); i += 512)
        CHECK(std::abs(m.values[i] - std::sqrt(4 * kPi) * std::exp(-0.5 * g->r[i] * g->r[i])) < 1e-13);
    }
  }
  auto coarse = make_angular_grid(3, 2, 3);
  auto g = make_log_grid(1e-3, 1e3, 256, 3);
  CHECK_THROWS_AS(analyze(Field(coarse, g), 4), Error);
}

TEST_CASE("wave operator on fields") {
  struct C {
    int d;
    double a;
  };
  for (C c : {C{2, 1.0}, C{2, 4.0}, C{3, 1.0}, C{3, -0.2}}) {
    CAPTURE(c.d);
    CAPTURE(c.a);
    const int K = 3;
    auto p = make_params(c.d, c.a);
    auto ang = angular_grid_for(c.d, K);
    auto g = make_log_grid(1e-6, 1e6, 8192, c.d);
    Field F = bump(ang, g);
    const double nf = field_norm(F);
    Field WF = apply_W(p, F, false, K);
    CHECK(std::abs(field_norm(WF) / nf - 1.0) < 1e-5);
    CHECK(field_distance(apply_W(p, WF, true, K), F) / nf < 1e-5);
  }
  auto ang = angular_grid_for(3, 2);
  auto g = make_log_grid(1e-6, 1e6, 4096, 3);
  Field F = bump(ang, g);
  CHECK(field_distance(apply_W(make_params(3, 0.0), F, false, 2), F) / field_norm(F) < 1e-12);
  CHECK_THROWS_AS(apply_W(make_params(2, 1.0), F, false, 2), Error);
}

TEST_CASE("functional calculus on fields") {
  auto p = make_params(3, 1.0);
  const int K = 2;
  auto ang = angular_grid_for(3, K);
  auto g = make_log_grid(1e-6, 1e6, 8192, 3);
  Field F = bump(ang, g);
  const double nf = field_norm(F);
  std::function<cplx(double)> one = [](double) { return cplx(1.0); };
  CHECK(field_distance(apply_function_of_La(p, one, F, CalculusPath::Direct, K), F) / nf < 1e-12);
  for (auto m : {std::function<cplx(double)>([](double l) { return std::exp(cplx(-l * l)); }),
                 std::function<cplx(double)>([](double l) { return l * l * std::exp(cplx(-l * l)); }),
                 std::function<cplx(double)>([](double l) { return std::exp(cplx(-0.25 * l * l, -l * l)); })}) {
    Field a = apply_function_of_La(p, m, F, CalculusPath::Direct, K);
    Field b = apply_function_of_La(p, m, F, CalculusPath::Conjugated, K);
    CHECK(field_distance(a, b) / nf < 1e-5);
  }
}

TEST_CASE("dispersive decay") {
  DispersiveConfig cfg;
  cfg.n = 1 << 15;
  auto rows0 = dispersive_gaussian(make_params(3, 0.0), {0.0, 1.0, 4.0}, cfg);
  CHECK(rows0[0].sup == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : rows0) {
    CHECK(std::abs(r.sup / r.envelope - 1.0) < 0.01);
    CHECK_FALSE(r.aliased);
  }
  auto rows1 = dispersive_gaussian(make_params(3, 1.0), {1.0, 4.0, 16.0}, cfg);
  for (size_t i = 1; i < rows1.size(); ++i) CHECK(rows1[i].sup < rows1[i - 1].sup);
  // t^{3/2} sup levels off
  CHECK(rows1[2].scaled / rows1[1].scaled == doctest::Approx(1.0).epsilon(0.1));
  CHECK_THROWS_AS(dispersive_gaussian(make_params(3, 1.0), {-1.0}, cfg), Error);
}

TEST_CASE("Sobolev ratios stay in a band") {
  auto v = sobolev_ratio_check(make_params(3, 1.0), 1.0, 12);
  REQUIRE(v.size() == 12);
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  CHECK(*lo > 0.5);
  CHECK(*hi < 2.0);
  // a = 0: the two transforms coincide
  for (double r : sobolev_ratio_check(make_params(3, 0.0), 1.0, 6)) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}
