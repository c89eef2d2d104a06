#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

#include "specfun_tables.inc"

constexpr double kPi = std::numbers::pi;
constexpr int kNumRG = sizeof(kRGammaTaylor) / sizeof(kRGammaTaylor[0]);

double rgamma_1p(double x) {  // 1/Gamma(1+x), |x| <= 1/2
  double s = 0.0;
  for (int k = kNumRG - 1; k >= 0; --k) s = s * x + kRGammaTaylor[k];
  return s;
}

// gam1 = (1/G(1-x) - 1/G(1+x)) / (2x),  gam2 = (1/G(1-x) + 1/G(1+x)) / 2
void temme_gammas(double x, double& gam1, double& gam2, double& gampl, double& gammi) {
  double x2 = x * x, odd = 0.0, even = 0.0;
  for (int k = kNumRG - 1; k >= 0; --k) {
    if (k % 2) odd = odd * x2 + kRGammaTaylor[k];
    else even = even * x2 + kRGammaTaylor[k];
  }
  // odd holds sum g_{2j+1} x^{2j}, even holds sum g_{2j} x^{2j}
  gam1 = -odd;
  gam2 = even;
  gampl = rgamma_1p(x);
  gammi = rgamma_1p(-x);
}

// Temme series for x < 2 and Steed's continued fractions otherwise; nu >= 0, x > 0.
BesselJY jy_steed(double xnu, double x) {
  const int maxit = 1000000;
  const double eps = 1e-16, fpmin = 1e-300, xmin = 2.0;
  int nl = (x < xmin) ? int(xnu + 0.5) : std::max(0, int(xnu - x + 1.5));
  double xmu = xnu - nl, xmu2 = xmu * xmu;
  double xi = 1.0 / x, xi2 = 2.0 * xi, w = xi2 / kPi;
  int isign = 1;
  double h = xnu * xi;
  if (h < fpmin) h = fpmin;
  double b = xi2 * xnu, d = 0.0, c = h;
  int i = 0;
  for (; i < maxit; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b - 1.0 / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < eps) break;
  }
  if (i >= maxit) throw NonConvergenceError("bessel: CF1 did not converge", 0.0, 0.0);
  double rjl = isign * fpmin, rjpl = h * rjl, rjl1 = rjl, rjp1 = rjpl, fact = xnu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = eps;
  double f = rjpl / rjl;
  double rjmu, rymu, rymup, ry1;
  if (x < xmin) {
    double x2 = 0.5 * x, pimu = kPi * xmu;
    double fct = (std::abs(pimu) < eps) ? 1.0 : pimu / std::sin(pimu);
    d = -std::log(x2);
    double e = xmu * d;
    double fct2 = (std::abs(e) < eps) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(xmu, gam1, gam2, gampl, gammi);
    double ff = 2.0 / kPi * fct * (gam1 * std::cosh(e) + gam2 * fct2 * d);
    e = std::exp(e);
    double p = e / (gampl * kPi);
    double q = 1.0 / (e * kPi * gammi);
    double pimu2 = 0.5 * pimu;
    double fct3 = (std::abs(pimu2) < eps) ? 1.0 : std::sin(pimu2) / pimu2;
    double r = kPi * pimu2 * fct3 * fct3;
    c = 1.0;
    d = -x2 * x2;
    double sum = ff + r * q, sum1 = p;
    for (i = 1; i < maxit; ++i) {
      ff = (i * ff + p + q) / (i * double(i) - xmu2);
      c *= d / i;
      p /= i - xmu;
      q /= i + xmu;
      double del = c * (ff + r * q);
      sum += del;
      double del1 = c * p - i * del;
      sum1 += del1;
      if (std::abs(del) < (1.0 + std::abs(sum)) * eps) break;
    }
    rymu = -sum;
    ry1 = -sum1 * xi2;
    rymup = xmu * xi * rymu - ry1;
    rjmu = w / (rymup - f * rymu);
  } else {
    double a = 0.25 - xmu2, p = -0.5 * xi, q = 1.0;
    double br = 2.0 * x, bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct, ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den, di = -bi / den;
    double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < maxit; ++i) {
      a += 2 * i;
      bi += 2.0;
      dr = a * dr + br;
      di = a * di + bi;
      if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
      fct = a / (cr * cr + ci * ci);
      cr = br + cr * fct;
      ci = bi - ci * fct;
      if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
      den = dr * dr + di * di;
      dr /= den;
      di /= -den;
      dlr = cr * dr - ci * di;
      dli = cr * di + ci * dr;
      temp = p * dlr - q * dli;
      q = p * dli + q * dlr;
      p = temp;
      if (std::abs(dlr - 1.0) + std::abs(dli) < eps) break;
    }
    if (i >= maxit) throw NonConvergenceError("bessel: CF2 did not converge", 0.0, 0.0);
    double gam = (p - f) / q;
    rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    rymu = rjmu * gam;
    rymup = rymu * (p + q / gam);
    ry1 = xmu * xi * rymu - rymup;
  }
  double scale = rjmu / rjl;
  BesselJY out;
  out.j = rjl1 * scale;
  out.jp = rjp1 * scale;
  for (i = 1; i <= nl; ++i) {
    double rytemp = (xmu + i) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
  }
  out.y = rymu;
  out.yp = xnu * xi * rymu - ry1;
  return out;
}

// Hankel large-argument expansion; returns J and Y together.
void hankel_asym(double nu, double x, double& j, double& y) {
  double mu4 = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0, term = 1.0, prev = 2.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= (mu4 - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    double at = std::abs(term);
    if (k > 2 && at > prev) break;  // asymptotic series started to grow
    switch (k % 4) {
      case 0: P += term; break;
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
    }
    if (at < 1e-17) break;
    prev = at;
  }
  // chi = x - (nu/2 + 1/4) pi, reduced through sin_pi/cos_pi on the phase part
  double ph = 0.5 * nu + 0.25;
  double cx = std::cos(x), sx = std::sin(x), cp = cos_pi(ph), sp = sin_pi(ph);
  double cchi = cx * cp + sx * sp, schi = sx * cp - cx * sp;
  double amp = std::sqrt(2.0 / (kPi * x));
  j = amp * (P * cchi - Q * schi);
  y = amp * (P * schi + Q * cchi);
}

}  // namespace

double bessel_series_radius(double nu) { return std::max(4.0, std::sqrt(8.0 * (nu + 1.0))); }
double bessel_hankel_radius(double nu) { return std::max(25.0, nu * nu); }

double bessel_j_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  double q = -0.25 * x * x, term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum * std::exp(nu * std::log(0.5 * x)) * rgamma(nu + 1.0);
}

double bessel_j_steed(double nu, double x) { return jy_steed(nu, x).j; }

double bessel_j_hankel(double nu, double x) {
  double j, y;
  hankel_asym(nu, x, j, y);
  return j;
}

BesselJY bessel_jy(double nu, double x) {
  if (!(x > 0.0)) fail(ErrorKind::Domain, "bessel_jy: x must be positive");
  if (nu < -0.5) fail(ErrorKind::Domain, "bessel_jy: order below -1/2");
  if (nu < 0.0) {
    double m = -nu;
    BesselJY p = bessel_jy(m, x);
    double c = cos_pi(m), s = sin_pi(m);
    // J_{-m} = cos J_m - sin Y_m,  Y_{-m} = sin J_m + cos Y_m
    BesselJY o;
    o.j = c * p.j - s * p.y;
    o.y = s * p.j + c * p.y;
    o.jp = c * p.jp - s * p.yp;
    o.yp = s * p.jp + c * p.yp;
    return o;
  }
  if (x >= bessel_hankel_radius(nu + 1.0)) {
    BesselJY o;
    double j1, y1;
    hankel_asym(nu, x, o.j, o.y);
    hankel_asym(nu + 1.0, x, j1, y1);
    o.jp = nu / x * o.j - j1;
    o.yp = nu / x * o.y - y1;
    return o;
  }
  return jy_steed(nu, x);
}

double bessel_j(double nu, double x) {
  if (x < 0.0 || std::isnan(x)) fail(ErrorKind::Domain, "bessel_j: x must be >= 0");
  if (nu < -0.5) fail(ErrorKind::Domain, "bessel_j: order below -1/2");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (nu < 0.0) return bessel_jy(nu, x).j;
  if (x <= bessel_series_radius(nu)) return bessel_j_series(nu, x);
  if (x >= bessel_hankel_radius(nu)) return bessel_j_hankel(nu, x);
  return jy_steed(nu, x).j;
}

double bessel_y(double nu, double x) {
  if (!(x > 0.0)) fail(ErrorKind::Domain, "bessel_y: x must be positive");
  if (nu >= 0.0 && x >= bessel_hankel_radius(nu)) {
    double j, y;
    hankel_asym(nu, x, j, y);
    return y;
  }
  return bessel_jy(nu, x).y;
}

std::complex<double> hankel1(double nu, double x) { return {bessel_j(nu, x), bessel_y(nu, x)}; }

}  // namespace invsq
