#include "invsq/waveop_kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

struct BranchData {
  double a;     // a_k
  double beta;  // b_k (Plus) or -b_k (Minus)
  double c;     // a + beta, i.e. mu_k or nu_k
  double expo;
  double sgn_a;  // +a for Plus, -a for Minus in the 1/(n+1) law
};

BranchData branch_data(const SpectralParams& p, int k, Branch br, double pexp) {
  ModeIndices m = mode_indices(p, k);
  BranchData b;
  b.a = m.a;
  if (br == Branch::Plus) {
    b.beta = m.b;
    b.c = m.mu;
    b.expo = exponent_plus(p, k, pexp);
    b.sgn_a = p.a;
  } else {
    b.beta = -m.b;
    b.c = m.nu;
    b.expo = exponent_minus(p, k, pexp);
    b.sgn_a = -p.a;
  }
  return b;
}

// ln|A_n| and its sign
double log_A(const BranchData& b, int n, int* sign) {
  const double z = n + 1.0;
  int s1 = 1;
  // a - c = -beta exactly on both branches
  double v = log_gamma_shift(z + b.c, -b.beta);
  if (z + b.beta > 0.0)
    v += log_gamma_ratio(z, b.beta, 0.0);
  else
    v += log_abs_gamma(z + b.beta, &s1) - log_abs_gamma(z);
  *sign = s1;
  return v;
}

// sum_{n>N} y^n/(n+1)^2 by the integral of the summand from N + 1/2
double inverse_square_tail(double y, int N) {
  const double kappa = -std::log(y), X = N + 1.5;
  const double e1 = -std::expint(-kappa * X);
  return (std::exp(-kappa * X) / X - kappa * e1) / y;
}

}  // namespace

double exponent_plus(const SpectralParams& p, int k, double pexp) {
  return 0.5 * p.d - p.d / pexp + 1.0 + mode_indices(p, k).mu;
}

double exponent_minus(const SpectralParams& p, int k, double pexp) {
  return p.d / pexp - 0.5 * p.d + 1.0 + mode_indices(p, k).nu;
}

bool exponent_predicate(const SpectralParams& p, double pexp) {
  if (!(pexp > 1.0)) return false;
  // k = 0 is the binding mode since mu_k, nu_k increase with k
  ModeIndices m = mode_indices(p, 0);
  const double d = p.d, ip = 1.0 / pexp;
  double w_plus = d / 2 - d * ip + 1.0 + m.mu, w_minus = d * ip - d / 2 + 1.0 + m.nu;
  double ws_plus = d / 2 - d * ip + 1.0 + m.nu, ws_minus = d * ip - d / 2 + 1.0 + m.mu;
  return w_plus > 0.0 && w_minus > 0.0 && ws_plus > 0.0 && ws_minus > 0.0;
}

double coeff_A(Branch br, int k, int n, const SpectralParams& p) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "coeff_A: n must be >= 0");
  BranchData b = branch_data(p, k, br, 2.0);
  double z = n + 1.0 + b.beta;
  if (z <= 0.0 && z == std::floor(z)) fail(ErrorKind::Pole, "coeff_A: Gamma argument on a pole");
  int s = 1;
  double l = log_A(b, n, &s);
  return s * std::exp(l);
}

double coeff_E(Branch br, int k, int n, const SpectralParams& p) {
  BranchData b = branch_data(p, k, br, 2.0);
  double z = n + 1.0 + b.beta;
  if (z <= 0.0 && z == std::floor(z)) fail(ErrorKind::Pole, "coeff_E: Gamma argument on a pole");
  int s = 1;
  double l = log_A(b, n, &s);
  double am1 = s > 0 ? std::expm1(l) : -std::exp(l) - 1.0;
  return am1 - b.sgn_a / (4.0 * (n + 1.0));
}

CoeffTable coeff_table(const SpectralParams& p, int k, Branch br, int n_max) {
  if (n_max < 0) fail(ErrorKind::InvalidArgument, "coeff_table: n_max must be >= 0");
  CoeffTable t;
  t.k = k;
  t.branch = br;
  t.n_max = n_max;
  t.A.resize(n_max + 1);
  t.E.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    t.A[n] = coeff_A(br, k, n, p);
    t.E[n] = coeff_E(br, k, n, p);
  }
  return t;
}

KernelValue kernel_ktilde(const KernelQuery& q, const KernelOptions& opt) {
  if (!(q.r > 0.0) || !(q.s > 0.0)) fail(ErrorKind::Domain, "kernel_ktilde: r and s must be positive");
  if (q.r == q.s) fail(ErrorKind::Domain, "kernel_ktilde: undefined on the diagonal");
  if (!(q.p > 1.0)) fail(ErrorKind::Domain, "kernel_ktilde: p must exceed 1");
  const Branch br = q.s < q.r ? Branch::Plus : Branch::Minus;
  BranchData b = branch_data(q.params, q.k, br, q.p);
  const double lx = br == Branch::Plus ? std::log(q.s) - std::log(q.r) : std::log(q.r) - std::log(q.s);
  const double x = std::exp(lx), y = x * x;
  const double pref = 2.0 * std::exp(b.expo * lx);
  const double scale = br == Branch::Plus ? opt.aplus_scale : 1.0;

  KernelValue out;
  if (q.params.a == 0.0) return out;  // sin(pi b_k) = 0 for every k

  // c_n = sin(-pi beta)/pi * A_n, started without the sine so integer beta terminates cleanly
  const bool terminating = b.beta == std::round(b.beta);  // finite sum, or zero when beta >= 0
  double c = rgamma(-b.beta) * gamma_ratio(0.0, b.a + 1.0, b.c + 1.0);
  auto step = [&](double cn, int n) { return cn * (b.a + n + 1.0) * (b.beta + n + 1.0) / ((b.c + n + 1.0) * (n + 1.0)); };

  if (terminating || 1.0 - x > opt.delta_diag) {
    double sum = 0.0, comp = 0.0, term = c, tail = 0.0;
    int n = 0;
    for (; n < opt.n_max; ++n) {
      double t = term * std::pow(y, n);
      double yy = t - comp, s2 = sum + yy;
      comp = (s2 - sum) - yy;
      sum = s2;
      double next = step(term, n);
      if (next == 0.0) {
        tail = 0.0;
        ++n;
        break;
      }
      double rho = std::max(y, std::abs(next / term) * y);
      if (n > 8 && rho < 1.0) {
        tail = std::abs(t) * rho / (1.0 - rho);
        if (tail <= opt.rel_tol * std::abs(sum) || tail < 1e-300) {
          ++n;
          break;
        }
      }
      term = next;
    }
    if (n >= opt.n_max && tail > 1e-10 * std::abs(sum))
      throw NonConvergenceError("kernel_ktilde: series budget exhausted", pref * scale * sum, pref * scale * tail);
    out.value = pref * scale * sum;
    out.terms = n;
    out.tail = pref * std::abs(scale) * tail;
    return out;
  }

  // near the diagonal: sum A_n y^n = 1/(1-y) + (a'/4)(-ln(1-y))/y + sum E_n y^n
  const double S = sin_pi(-b.beta) / std::numbers::pi;
  double A = c / S;
  double esum = 0.0, comp = 0.0, yn = 1.0, last_e = 0.0;
  int n = 0;
  for (; n < opt.n_max; ++n) {
    double e = A - 1.0 - b.sgn_a / (4.0 * (n + 1.0));
    double t = e * yn - comp, s2 = esum + t;
    comp = (s2 - esum) - t;
    esum = s2;
    last_e = e;
    A = step(A, n);
    yn *= y;
  }
  // E_n behaves like e2/(n+1)^2; the tail beyond n_max uses that law
  double e2 = last_e * double(n) * double(n);
  double tail = e2 * inverse_square_tail(y, n - 1);
  esum += tail;
  const double one_m_y = -std::expm1(2.0 * lx);
  double bracket = 1.0 / one_m_y + 0.25 * b.sgn_a * (-std::log1p(-y)) / y + esum;
  out.value = pref * scale * S * bracket;
  out.terms = n;
  out.tail = std::abs(pref * S * tail);
  out.decomposed = true;
  return out;
}

double kernel_k(const KernelQuery& q, const KernelOptions& opt) {
  double lt = (q.params.d / q.p) * (std::log(q.s) - std::log(q.r));
  return std::exp(lt) * kernel_ktilde(q, opt).value;
}

OracleValue kernel_quadrature_oracle(const KernelQuery& q, const std::vector<double>& eps_list) {
  if (q.r == q.s) fail(ErrorKind::Domain, "kernel oracle: r == s");
  if (eps_list.size() < 3) fail(ErrorKind::InvalidArgument, "kernel oracle: need at least 3 eps values");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) fail(ErrorKind::InvalidArgument, "kernel oracle: eps must be positive");
    if (i && !(eps_list[i] < eps_list[i - 1])) fail(ErrorKind::InvalidArgument, "kernel oracle: eps must decrease");
  }
  ModeIndices m = mode_indices(q.params, q.k);
  std::vector<double> vals;
  for (double e : eps_list) vals.push_back(damped_bessel_product(m.mu, m.nu, q.s, q.r, e));
  OracleValue o;
  double I = neville_zero(eps_list, vals, &o.error);
  const double d = q.params.d;
  double lpref = (0.5 * d + 1.0 - d / q.p) * std::log(q.s) - (0.5 * d - 1.0 - d / q.p) * std::log(q.r);
  double pref = std::exp(lpref);
  o.value = pref * I;
  o.error *= pref;
  double scale = std::max(std::abs(o.value), pref * std::abs(vals.front()));
  o.converged = std::isfinite(o.value) && o.error <= 1e-7 * scale;
  return o;
}

OracleValue kernel_quadrature_oracle(const KernelQuery& q) {
  if (q.r == q.s) fail(ErrorKind::Domain, "kernel oracle: r == s");
  ModeIndices m = mode_indices(q.params, q.k);
  DampedLimit dl = damped_bessel_product_limit(m.mu, m.nu, q.s, q.r);
  const double d = q.params.d;
  double lpref = (0.5 * d + 1.0 - d / q.p) * std::log(q.s) - (0.5 * d - 1.0 - d / q.p) * std::log(q.r);
  double pref = std::exp(lpref);
  return {pref * dl.value, pref * dl.error, dl.converged};
}

DiagonalLimit diagonal_limit(const SpectralParams& p, int k, Side side, const KernelOptions& opt) {
  ModeIndices m = mode_indices(p, k);
  DiagonalLimit out;
  const double sgn = side == Side::Below ? 1.0 : -1.0;
  out.closed = sgn * 2.0 / std::numbers::pi * sin_pi(0.5 * (m.nu - m.mu));
  if (p.a == 0.0) return out;

  const int J0 = 4, J1 = 12, cols = 5;
  Eigen::MatrixXd A(J1 - J0 + 1, cols);
  Eigen::VectorXd rhs(J1 - J0 + 1);
  const double pexp = 2.0;
  for (int j = J0; j <= J1; ++j) {
    double x = 1.0 - std::ldexp(1.0, -j);
    KernelQuery q{p, k, pexp, 1.0, side == Side::Below ? x : 1.0 / x};
    double e = side == Side::Below ? exponent_plus(p, k, pexp) : exponent_minus(p, k, pexp);
    double t = 1.0 - x * x;
    double g = t * kernel_ktilde(q, opt).value / std::pow(x, e);
    int i = j - J0;
    double lt = std::log(t);
    A(i, 0) = 1.0;
    A(i, 1) = t * lt;
    A(i, 2) = t;
    A(i, 3) = t * t * lt;
    A(i, 4) = t * t;
    rhs(i) = g;
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
  out.numeric = sol(0);
  out.gap = std::abs(out.numeric - out.closed);
  return out;
}

}  // namespace invsq
