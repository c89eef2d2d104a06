#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace invsq {

struct SeriesBudget {
  int max_terms = 1000000;
  double abs_tol = 1e-300;
  double rel_tol = 1e-16;
};

// ---- Gamma family -------------------------------------------------------

double ln_gamma(double x);                       // x > 0
double log_abs_gamma(double x, int* sign = nullptr);  // any real off the poles
double gamma_fn(double x);
double rgamma(double x);                         // 1/Gamma, zero on the poles
std::complex<double> ln_gamma(std::complex<double> z);  // principal branch, Re z > 0 preferred

double sin_pi(double x);
double cos_pi(double x);

double bernoulli_number(int n);
double bernoulli_poly(int n, double x);

// ln|Gamma(z+p)/Gamma(z+q)|; asymptotic expansion once z is large against p, q.
double log_gamma_ratio(double z, double p, double q);
// ln|Gamma(y+dl)| - ln|Gamma(y)|, accurate when dl is small against a large y
double log_gamma_shift(double y, double dl);
double gamma_ratio(double z, double b, double c);

double polygamma(int m, double x);
double pochhammer(double z, int n);

// ---- Bessel ---------------------------------------------------------------

struct BesselJY {
  double j, y, jp, yp;
};

BesselJY bessel_jy(double nu, double x);  // nu >= -1/2, x > 0
double bessel_j(double nu, double x);     // nu >= -1/2, x >= 0
double bessel_y(double nu, double x);
std::complex<double> hankel1(double nu, double x);

// switch points used by bessel_j; exposed so the branch agreement can be tested
double bessel_series_radius(double nu);
double bessel_hankel_radius(double nu);
double bessel_j_series(double nu, double x);
double bessel_j_steed(double nu, double x);
double bessel_j_hankel(double nu, double x);

// ---- Hypergeometric -------------------------------------------------------

struct SeriesResult {
  double value;
  int terms;
  double tail;
};

SeriesResult hyp2f1_series(double a, double b, double c, double x, const SeriesBudget& budget = {});
double hyp2f1(double a, double b, double c, double x, const SeriesBudget& budget = {});

struct NearOneReport {
  double extrapolated;  // fitted limit of (1-x)^{a+b-c} F at x -> 1
  double predicted;     // Gamma(c)Gamma(a+b-c)/(Gamma(a)Gamma(b))
  double residual;
  double raw_at_099;    // unextrapolated value at x = 0.99, for the record
};

NearOneReport hyp2f1_near_one(double a, double b, double c);

// ---- Quadrature helpers -----------------------------------------------------

// Gauss-Legendre nodes/weights on [-1,1] by Golub-Welsch.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Polynomial extrapolation to h -> 0 (Neville) of samples f(h_i).
double neville_zero(const std::vector<double>& h, const std::vector<double>& f, double* err = nullptr);

// Gaussian-damped product integral  I(eps) = int_0^inf lam e^{-eps lam^2} J_mu(s lam) J_nu(r lam) dlam
double damped_bessel_product(double mu, double nu, double s, double r, double eps);

struct DampedLimit {
  double value;
  double error;  // difference of the last two extrapolants
  bool converged;
};

// eps -> 0 limit of the damped integral; r != s.
DampedLimit damped_bessel_product_limit(double mu, double nu, double s, double r, int levels = 7);

// Closed form of int_0^inf t J_mu(s t) J_nu(r t) dt, s != r.
double wss_integral(double mu, double nu, double s, double r);

// ---- Identity checks ----------------------------------------------------------

struct BesselIdentityReport {
  double wronskian = 0;
  double indefinite_integral = 0;   // J J version, from 0 to z
  double indefinite_integral_jy = 0;  // Y J version between two points
  double tail_integral = 0;          // int_z^inf J_mu Y_nu / t
  double resolvent = 0;
  double wss = 0;
};

BesselIdentityReport verify_bessel_identities(double nu, double mu, const std::vector<double>& z_samples);

}  // namespace invsq
