#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

SeriesResult hyp2f1_series(double a, double b, double c, double x, const SeriesBudget& budget) {
  if (c <= 0.0 && c == std::floor(c)) fail(ErrorKind::Pole, "hyp2f1: c is a non-positive integer");
  if (!(x >= 0.0 && x < 1.0)) fail(ErrorKind::Domain, "hyp2f1: x must lie in [0,1)");
  double term = 1.0, sum = 1.0, tail = 0.0;
  if (x == 0.0) return {1.0, 1, 0.0};
  int n = 0;
  for (; n < budget.max_terms; ++n) {
    double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) return {sum, n + 2, 0.0};
    double rho = std::max(std::abs(ratio), x);
    if (rho < 1.0 && double(n) > std::abs(a) + std::abs(b) + std::abs(c)) {
      tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= budget.abs_tol + budget.rel_tol * std::abs(sum)) return {sum, n + 2, tail};
    }
  }
  throw NonConvergenceError("hyp2f1: series budget of " + std::to_string(budget.max_terms) + " terms exhausted", sum,
                            tail);
}

double hyp2f1(double a, double b, double c, double x, const SeriesBudget& budget) {
  return hyp2f1_series(a, b, c, x, budget).value;
}

NearOneReport hyp2f1_near_one(double a, double b, double c) {
  const double g = a + b - c;
  if (!(g > 0.0)) fail(ErrorKind::InvalidArgument, "hyp2f1_near_one: needs c - a - b < 0");
  if (std::abs(g - std::round(g)) < 1e-6) fail(ErrorKind::InvalidArgument, "hyp2f1_near_one: a+b-c is an integer");
  const int J = 4;
  std::vector<double> ts;
  for (int j = 4; j <= 12; ++j) ts.push_back(std::ldexp(1.0, -j));
  Eigen::MatrixXd A(ts.size(), 2 * J);
  Eigen::VectorXd y(ts.size());
  SeriesBudget budget;
  budget.max_terms = 4000000;
  for (size_t i = 0; i < ts.size(); ++i) {
    double t = ts[i];
    y(i) = std::pow(t, g) * hyp2f1(a, b, c, 1.0 - t, budget);
    for (int j = 0; j < J; ++j) {
      A(i, j) = std::pow(t, j);
      A(i, J + j) = std::pow(t, g + j);
    }
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
  NearOneReport rep;
  rep.extrapolated = sol(0);
  rep.predicted = gamma_fn(c) * gamma_fn(g) * rgamma(a) * rgamma(b);
  rep.residual = std::abs(rep.extrapolated - rep.predicted);
  rep.raw_at_099 = std::pow(0.01, g) * hyp2f1(a, b, c, 0.99, budget);
  return rep;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "gauss_legendre: n must be >= 1");
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double beta = k / std::sqrt(4.0 * k * k - 1.0);
    T(k, k - 1) = T(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
  // symmetrize away the eigen-solver's last-digit noise
  for (int i = 0; i < n / 2; ++i) {
    double xm = 0.5 * (x[n - 1 - i] - x[i]), wm = 0.5 * (w[i] + w[n - 1 - i]);
    x[i] = -xm;
    x[n - 1 - i] = xm;
    w[i] = w[n - 1 - i] = wm;
  }
  if (n % 2) x[n / 2] = 0.0;
}

double neville_zero(const std::vector<double>& h, const std::vector<double>& f, double* err) {
  const size_t n = h.size();
  if (n == 0 || f.size() != n) fail(ErrorKind::InvalidArgument, "neville_zero: bad sample vectors");
  std::vector<double> p(f);
  double finest = p[n - 1];
  // p[i] after level m holds the interpolant through points i..i+m evaluated at 0
  for (size_t m = 1; m < n; ++m) {
    if (m == n - 1) finest = p[1];
    for (size_t i = 0; i + m < n; ++i) p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  }
  if (err) *err = n > 1 ? std::abs(p[0] - finest) : 0.0;
  return p[0];
}

namespace {

struct GL20 {
  std::vector<double> x, w;
  GL20() { gauss_legendre(20, x, w); }
};

const GL20& gl20() {
  static const GL20 nodes;
  return nodes;
}

struct ProductSamples {
  std::vector<double> lam, wf;  // abscissae and weight * lam * J J
};

ProductSamples sample_product(double mu, double nu, double s, double r, double lam_max) {
  const auto& gx = gl20().x;
  const auto& gw = gl20().w;
  const double width = 2.0 * std::numbers::pi / (r + s);
  const int panels = int(std::ceil(lam_max / width));
  ProductSamples out;
  out.lam.reserve(size_t(panels) * gx.size());
  out.wf.reserve(out.lam.capacity());
  for (int p = 0; p < panels; ++p) {
    double lo = p * width, half = 0.5 * width, mid = lo + half;
    for (size_t i = 0; i < gx.size(); ++i) {
      double lam = mid + half * gx[i];
      out.lam.push_back(lam);
      out.wf.push_back(half * gw[i] * lam * bessel_j(mu, s * lam) * bessel_j(nu, r * lam));
    }
  }
  return out;
}

double damped_sum(const ProductSamples& ps, double eps) {
  double acc = 0.0, comp = 0.0;
  for (size_t i = 0; i < ps.lam.size(); ++i) {
    double e = ps.lam[i] * ps.lam[i] * eps;
    if (e > 45.0) break;
    double y = ps.wf[i] * std::exp(-e) - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc;
}

}  // namespace

double damped_bessel_product(double mu, double nu, double s, double r, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::InvalidArgument, "damped_bessel_product: eps must be positive");
  ProductSamples ps = sample_product(mu, nu, s, r, std::sqrt(45.0 / eps));
  return damped_sum(ps, eps);
}

DampedLimit damped_bessel_product_limit(double mu, double nu, double s, double r, int levels) {
  if (s == r) fail(ErrorKind::Domain, "damped oracle is defined off the diagonal only");
  if (levels < 3) fail(ErrorKind::InvalidArgument, "damped oracle needs at least 3 levels");
  const double eps0 = (r - s) * (r - s) / 120.0;
  std::vector<double> eps(levels), val(levels);
  for (int j = 0; j < levels; ++j) eps[j] = std::ldexp(eps0, -j);
  ProductSamples ps = sample_product(mu, nu, s, r, std::sqrt(45.0 / eps.back()));
  for (int j = 0; j < levels; ++j) val[j] = damped_sum(ps, eps[j]);
  DampedLimit out;
  out.value = neville_zero(eps, val, &out.error);
  double scale = std::max(std::abs(out.value), 1e-300);
  out.converged = std::isfinite(out.value) && out.error <= 1e-7 * std::max(scale, std::abs(val[0]));
  return out;
}

double wss_integral(double mu, double nu, double s, double r) {
  if (s == r) fail(ErrorKind::Domain, "wss_integral: s == r");
  if (s < r) {
    double x = (s / r) * (s / r);
    double pref = 2.0 * std::exp(mu * std::log(s) - (mu + 2.0) * std::log(r)) *
                  gamma_ratio(0.0, 0.5 * (mu + nu) + 1.0, mu + 1.0) * rgamma(0.5 * (nu - mu));
    if (pref == 0.0) return 0.0;
    return pref * hyp2f1(0.5 * (mu + nu) + 1.0, 0.5 * (mu - nu) + 1.0, mu + 1.0, x);
  }
  double x = (r / s) * (r / s);
  double pref = 2.0 * std::exp(nu * std::log(r) - (nu + 2.0) * std::log(s)) *
                gamma_ratio(0.0, 0.5 * (mu + nu) + 1.0, nu + 1.0) * rgamma(0.5 * (mu - nu));
  if (pref == 0.0) return 0.0;
  return pref * hyp2f1(0.5 * (mu + nu) + 1.0, 0.5 * (nu - mu) + 1.0, nu + 1.0, x);
}

}  // namespace invsq
