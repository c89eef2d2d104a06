#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

#include "specfun_tables.inc"

constexpr double kEuler = 0.57721566490153286061;
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr int kNumZeta = sizeof(kZetaM1) / sizeof(kZetaM1[0]);

// lnGamma(2+z) = (1-gamma) z + sum_k (-1)^k (zeta(k)-1) z^k / k,   |z| <= 1/2
double lngamma_about_two(double z) {
  double sum = 0.0;
  double zk = -z;
  for (int k = 2; k < kNumZeta + 2; ++k) {
    zk *= -z;
    double term = kZetaM1[k - 2] * zk / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return (1.0 - kEuler) * z + sum;
}

double stirling(double x) {
  double s = (x - 0.5) * std::log(x) - x + kHalfLog2Pi;
  double xi = 1.0 / x, xi2 = xi * xi, p = xi;
  for (int k = 1; k <= 10; ++k) {
    double term = kBernoulli[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * p;
    s += term;
    if (std::abs(term) < 1e-17 * std::abs(s)) break;
    p *= xi2;
  }
  return s;
}

}  // namespace

double bernoulli_number(int n) {
  if (n < 0 || n >= int(sizeof(kBernoulli) / sizeof(kBernoulli[0])))
    fail(ErrorKind::InvalidArgument, "bernoulli_number: index out of table");
  return kBernoulli[n];
}

double bernoulli_poly(int n, double x) {
  // B_n(x) = sum_j C(n,j) B_j x^{n-j}, Horner in x
  double binom = 1.0, acc = 0.0;
  std::vector<double> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    c[j] = binom * bernoulli_number(j);
    binom = binom * (n - j) / (j + 1);
  }
  for (int j = 0; j <= n; ++j) acc = acc * x + c[j];
  return acc;
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::Domain, "ln_gamma: argument must be positive and finite");
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  if (x <= 1.5) {
    double z = x - 1.0;
    return lngamma_about_two(z) - std::log1p(z);
  }
  if (x <= 2.5) return lngamma_about_two(x - 2.0);
  if (x >= 10.0) return stirling(x);
  double prod = 1.0, y = x;
  while (y > 2.5) {
    y -= 1.0;
    prod *= y;
  }
  return lngamma_about_two(y - 2.0) + std::log(prod);
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r == 0.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double log_abs_gamma(double x, int* sign) {
  if (x > 0.0) {
    if (sign) *sign = 1;
    return ln_gamma(x);
  }
  if (x == std::floor(x)) fail(ErrorKind::Pole, "Gamma pole at non-positive integer " + std::to_string(x));
  double s = sin_pi(x);
  if (sign) *sign = s > 0 ? 1 : -1;
  return std::log(std::numbers::pi) - std::log(std::abs(s)) - ln_gamma(1.0 - x);
}

double gamma_fn(double x) {
  int sg = 1;
  double l = log_abs_gamma(x, &sg);
  return sg * std::exp(l);
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  int sg = 1;
  double l = log_abs_gamma(x, &sg);
  return sg * std::exp(-l);
}

std::complex<double> ln_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    fail(ErrorKind::Pole, "complex ln_gamma at a pole");
  C shift = 0.0;
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  C s = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  C zi = 1.0 / z, zi2 = zi * zi, p = zi;
  for (int k = 1; k <= 12; ++k) {
    C term = kBernoulli[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * p;
    s += term;
    if (std::abs(term) < 1e-17 * std::abs(s)) break;
    p *= zi2;
  }
  return s - shift;
}

double log_gamma_shift(double y, double dl) {
  if (dl == 0.0) return 0.0;
  const double x = y + dl;
  if (y >= 10.0 && x >= 10.0) {
    // (y-1/2) log(x/y) + dl log x - dl plus the Stirling tails; no large terms cancel
    double s = (y - 0.5) * std::log1p(dl / y) + dl * std::log(x) - dl;
    double xi = 1.0 / x, yi = 1.0 / y, xp = xi, yp = yi;
    for (int k = 1; k <= 12; ++k) {
      double term = kBernoulli[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * (xp - yp);
      s += term;
      if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
      xp *= xi * xi;
      yp *= yi * yi;
    }
    return s;
  }
  return log_abs_gamma(x) - log_abs_gamma(y);
}

double log_gamma_ratio(double z, double p, double q) {
  if (p == q) return 0.0;
  double big = std::max({std::abs(p), std::abs(q), 2.0});
  if (z >= 10.0 * big && z >= 20.0) {
    double s = (p - q) * std::log(z);
    double zk = 1.0;
    for (int k = 1; k <= 28; ++k) {
      zk /= z;
      double term = ((k % 2) ? 1.0 : -1.0) * (bernoulli_poly(k + 1, p) - bernoulli_poly(k + 1, q)) / (k * (k + 1.0)) * zk;
      s += term;
      if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
    }
    return s;
  }
  return log_gamma_shift(z + q, p - q);
}

double gamma_ratio(double z, double b, double c) {
  double zb = z + b, zc = z + c;
  if (zb <= 0 && zb == std::floor(zb)) fail(ErrorKind::Pole, "gamma_ratio: numerator argument on a pole");
  if (zc <= 0 && zc == std::floor(zc)) fail(ErrorKind::Pole, "gamma_ratio: denominator argument on a pole");
  int sb = 1, sc = 1;
  if (zb < 0) sb = sin_pi(zb) > 0 ? 1 : -1;
  if (zc < 0) sc = sin_pi(zc) > 0 ? 1 : -1;
  return sb * sc * std::exp(log_gamma_ratio(z, b, c));
}

double polygamma(int m, double x) {
  if (m < 0) fail(ErrorKind::InvalidArgument, "polygamma: order must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::Domain, "polygamma: argument must be positive");
  double mfact = std::tgamma(m + 1.0);
  double acc = 0.0;
  const double x0 = 20.0 + m;
  // psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! / x^{m+1}
  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  while (x < x0) {
    acc -= sgn * mfact / std::pow(x, m + 1);
    x += 1.0;
  }
  double xi = 1.0 / x;
  double s;
  if (m == 0) {
    s = std::log(x) - 0.5 * xi;
    double p = xi * xi;
    for (int k = 1; k <= 12; ++k) {
      double term = -kBernoulli[2 * k] / (2.0 * k) * p;
      s += term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
      p *= xi * xi;
    }
  } else {
    // (-1)^{m+1} [ (m-1)!/x^m + m!/(2 x^{m+1}) + sum_k B_2k (2k+m-1)!/((2k)! x^{2k+m}) ]
    double xm = std::pow(xi, m);
    s = std::tgamma(double(m)) * xm + 0.5 * mfact * xm * xi;
    double p = xm * xi * xi;
    for (int k = 1; k <= 12; ++k) {
      double coef = std::exp(std::lgamma(2.0 * k + m) - std::lgamma(2.0 * k + 1.0));
      double term = kBernoulli[2 * k] * coef * p;
      s += term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
      p *= xi * xi;
    }
    if (m % 2 == 0) s = -s;
  }
  return s + acc;
}

double pochhammer(double z, int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "pochhammer: n must be >= 0");
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= z + i;
  return p;
}

}  // namespace invsq
