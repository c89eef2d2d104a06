#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;

template <class F>
double adaptive(F f, double a, double b) {
  double err = 0.0;
  double v = gauss_kronrod<double, 31>::integrate(f, a, b, 25, 1e-14, &err);
  if (!(err <= 1e-10 * std::max(1.0, std::abs(v))))
    throw NonConvergenceError("identity quadrature did not reach tolerance", v, err);
  return v;
}

// int_a^b over panels of length pi with a fixed 24-point rule; oscillatory integrands
template <class F>
double paneled(F f, double a, double b) {
  static const auto rule = [] {
    std::pair<std::vector<double>, std::vector<double>> r;
    gauss_legendre(24, r.first, r.second);
    return r;
  }();
  const auto& [gx, gw] = rule;
  double acc = 0.0;
  for (double lo = a; lo < b; lo += kPi) {
    double hi = std::min(b, lo + kPi), half = 0.5 * (hi - lo), mid = lo + half, part = 0.0;
    for (size_t i = 0; i < gx.size(); ++i) part += gw[i] * f(mid + half * gx[i]);
    acc += half * part;
  }
  return acc;
}

double phase(double n) { return 0.5 * n * kPi + 0.25 * kPi; }

// int_T^inf J_m(t) Y_n(t) dt / t from the first two Hankel terms
double tail_jy(double m, double n, double T) {
  double pm = phase(m), pn = phase(n);
  return std::sin(pm - pn) / (kPi * T) + (n * n - m * m) * std::cos(pm - pn) / (4.0 * kPi * T * T) +
         std::cos(2.0 * T - pm - pn) / (2.0 * kPi * T * T);
}

// int_z^inf J_m Y_n / t by quadrature up to T and the asymptotic tail beyond
double jy_to_infinity(double m, double n, double z) {
  const double T = z + 800.0 * kPi;
  double body = paneled([&](double t) { return bessel_j(m, t) * bessel_y(n, t) / t; }, z, T);
  return body + tail_jy(m, n, T);
}

// antiderivative of C_mu D_nu / z  (C, D chosen by the callers)
template <class CF, class DF>
double product_antiderivative(CF C, DF D, double mu, double nu, double z) {
  return -z * (C(mu + 1.0, z) * D(nu, z) - C(mu, z) * D(nu + 1.0, z)) / (mu * mu - nu * nu) +
         C(mu, z) * D(nu, z) / (mu + nu);
}

}  // namespace

BesselIdentityReport verify_bessel_identities(double nu, double mu, const std::vector<double>& z_samples) {
  if (mu == nu) fail(ErrorKind::InvalidArgument, "verify_bessel_identities: requires mu != nu");
  if (mu + nu <= 0.0) fail(ErrorKind::InvalidArgument, "verify_bessel_identities: requires mu + nu > 0");
  auto J = [](double o, double t) { return bessel_j(o, t); };
  auto Y = [](double o, double t) { return bessel_y(o, t); };
  BesselIdentityReport rep;
  for (double z : z_samples) {
    if (!(z > 0.0)) fail(ErrorKind::Domain, "verify_bessel_identities: samples must be positive");
    for (double o : {nu, mu}) {
      double w = J(o + 1.0, z) * Y(o, z) - J(o, z) * Y(o + 1.0, z) - 2.0 / (kPi * z);
      rep.wronskian = std::max(rep.wronskian, std::abs(w));
    }

    double jj = adaptive([&](double t) { return J(mu, t) * J(nu, t) / t; }, 0.0, z);
    double jj_closed = product_antiderivative(J, J, mu, nu, z);
    rep.indefinite_integral = std::max(rep.indefinite_integral, std::abs(jj - jj_closed));

    double z1 = 0.5 * z;
    double yj = adaptive([&](double t) { return Y(mu, t) * J(nu, t) / t; }, z1, z);
    double yj_closed = product_antiderivative(Y, J, mu, nu, z) - product_antiderivative(Y, J, mu, nu, z1);
    rep.indefinite_integral_jy = std::max(rep.indefinite_integral_jy, std::abs(yj - yj_closed));

    double tail_q = jy_to_infinity(mu, nu, z);
    double tail_closed = 2.0 * cos_pi(0.5 * (mu - nu)) / (kPi * (mu * mu - nu * nu)) -
                         product_antiderivative(J, Y, mu, nu, z);
    rep.tail_integral = std::max(rep.tail_integral, std::abs(tail_q - tail_closed));

    double lhs = Y(mu, z) * jj + J(mu, z) * jy_to_infinity(nu, mu, z);
    double rhs = 2.0 / ((nu * nu - mu * mu) * kPi) * (J(nu, z) - cos_pi(0.5 * (nu - mu)) * J(mu, z));
    rep.resolvent = std::max(rep.resolvent, std::abs(lhs - rhs));

    if (z != 1.0) {
      DampedLimit dl = damped_bessel_product_limit(mu, nu, z, 1.0);
      double closed = wss_integral(mu, nu, z, 1.0);
      double rel = std::abs(dl.value - closed) / std::max(std::abs(closed), 1e-300);
      if (closed == 0.0) rel = std::abs(dl.value);
      rep.wss = std::max(rep.wss, rel);
    }
  }
  return rep;
}

}  // namespace invsq
