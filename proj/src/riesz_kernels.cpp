#include "invsq/riesz_kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"
#include "invsq/waveop_kernels.hpp"

namespace invsq {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Prod_i Gamma(z+p_i)/Gamma(z+q_i) with sum p = sum q, as a function of z = n+1.
struct GammaRatio4 {
  std::array<double, 4> p{}, q{};
  std::array<double, 4> dl{};  // p_i - q_i, set exactly
  std::array<double, 31> g{};  // ln R(z) ~ sum_k g_k z^{-k}
  double z_asym = 0;

  void init() {
    double big = 2.0;
    for (int i = 0; i < 4; ++i) big = std::max({big, std::abs(p[i]), std::abs(q[i])});
    z_asym = std::max(20.0, 12.0 * big);
    for (int k = 1; k <= 30; ++k) {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += bernoulli_poly(k + 1, p[i]) - bernoulli_poly(k + 1, q[i]);
      g[k] = ((k % 2) ? 1.0 : -1.0) * s / (k * (k + 1.0));
    }
  }

  // ln|R| and sign; a Gamma pole in the numerator gives sign 0
  double log_abs(double z, int* sign) const {
    if (z >= z_asym) {
      *sign = 1;
      double s = 0, zi = 1.0 / z, zk = 1.0;
      for (int k = 1; k <= 30; ++k) {
        zk *= zi;
        double t = g[k] * zk;
        s += t;
        if (std::abs(t) < 1e-18 * std::max(std::abs(s), 1e-300)) break;
      }
      return s;
    }
    int sg = 1;
    double l = 0;
    for (int i = 0; i < 4; ++i) {
      double zp = z + p[i], zq = z + q[i];
      if (zp <= 0 && zp == std::floor(zp)) {
        *sign = 0;
        return -std::numeric_limits<double>::infinity();
      }
      if (zq <= 0 && zq == std::floor(zq)) fail(ErrorKind::Resonance, "Riesz coefficient: denominator Gamma pole");
      if (zp > 0.0 && zq > 0.0) {
        l += log_gamma_shift(zq, dl[i]);
        continue;
      }
      int s1 = 1, s2 = 1;
      l += log_abs_gamma(zp, &s1) - log_abs_gamma(zq, &s2);
      sg *= s1 * s2;
    }
    *sign = sg;
    return l;
  }

  double value(double z) const {
    int s = 0;
    double l = log_abs(z, &s);
    return s == 0 ? 0.0 : s * std::exp(l);
  }

  // R - 1 without cancellation
  double minus_one(double z) const {
    int s = 0;
    double l = log_abs(z, &s);
    if (s == 0) return -1.0;
    return s > 0 ? std::expm1(l) : -std::exp(l) - 1.0;
  }

  // R(z+1)/R(z)
  double step(double z) const {
    double num = 1, den = 1;
    for (int i = 0; i < 4; ++i) {
      num *= z + p[i];
      den *= z + q[i];
    }
    return num / den;
  }
};

struct RieszSetup {
  double l0, mu, nu, al;
  double dmn;  // mu - nu without cancellation
  double C;
  GammaRatio4 A1, A2;
};

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12 * std::max(1.0, std::abs(x)); }

bool is_even_order(double order) { return order != 0.0 && near_integer(0.5 * order) && order == std::round(order); }

void check_window(const SpectralParams& p, double order, RieszDirection dir) {
  IndexInterval w = order_window(p, dir == RieszDirection::Forward ? OperatorTag::Riesz : OperatorTag::RieszInverse);
  if (!w.contains(order))
    fail(ErrorKind::Domain, "Riesz order " + std::to_string(order) + " outside (" + std::to_string(w.lo) + ", " +
                                std::to_string(w.hi) + ")");
}

RieszSetup setup(const SpectralParams& p, int k, double order, RieszDirection dir) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "Riesz kernel: k must be >= 0");
  check_window(p, order, dir);
  ModeIndices m = mode_indices(p, k);
  RieszSetup s;
  s.l0 = p.lambda0;
  s.mu = m.mu;
  s.nu = m.nu;
  s.dmn = 2.0 * m.b;
  if (dir == RieszDirection::Inverse) {
    std::swap(s.mu, s.nu);
    s.dmn = -s.dmn;
  }
  s.al = order;
  const double mu = s.mu, nu = s.nu, al = s.al, dmn = s.dmn;
  // paired so that each p_i - q_i is +-alpha/2
  s.A1.p = {0.5 * (mu + nu), nu - 0.5 * al, -0.5 * dmn, -0.5 * al};
  s.A1.q = {0.5 * (nu + mu - al), nu, -0.5 * (dmn + al), 0.0};
  s.A2.p = {mu + 0.5 * al, 0.5 * (nu + mu), 0.5 * al, 0.5 * dmn};
  s.A2.q = {mu, 0.5 * (nu + mu + al), 0.0, 0.5 * (dmn + al)};
  s.A1.dl = {0.5 * al, -0.5 * al, 0.5 * al, -0.5 * al};
  s.A2.dl = s.A1.dl;
  s.A1.init();
  s.A2.init();
  double den = sin_pi(0.5 * (dmn + al));
  s.C = (p.a == 0.0 || den == 0.0) ? 0.0 : 2.0 * sin_pi(0.5 * al) * sin_pi(0.5 * dmn) / (kPi * den);
  return s;
}

void check_resonance(const RieszSetup& s) {
  if (s.dmn != 0.0 && near_integer(0.5 * (s.dmn + s.al)))
    fail(ErrorKind::Resonance, "Riesz kernel: (mu_k - nu_k + alpha)/2 is an integer");
}

// sign-tracked product of Gamma and reciprocal Gamma factors
struct SignedLog {
  double l = 0;
  int s = 1;
  void gamma(double x) {
    if (x <= 0 && x == std::floor(x)) fail(ErrorKind::Resonance, "Riesz residue: Gamma pole");
    int sg = 1;
    l += log_abs_gamma(x, &sg);
    s *= sg;
  }
  void rgamma(double x) {
    if (x <= 0 && x == std::floor(x)) {
      s = 0;
      return;
    }
    int sg = 1;
    l -= log_abs_gamma(x, &sg);
    s *= sg;
  }
  double value() const { return s == 0 ? 0.0 : s * std::exp(l); }
};

double h1_direct(const RieszSetup& r, int n) {
  const double mu = r.mu, nu = r.nu, al = r.al, dmn = r.dmn;
  SignedLog f;
  f.rgamma(0.5 * al - n);
  f.rgamma(0.5 * dmn - n);
  if (f.s == 0) return 0.0;
  f.gamma(1 + 0.5 * (mu + nu) + n);
  f.gamma(1 + nu - 0.5 * al + n);
  f.gamma(0.5 * (dmn + al) - n);
  f.rgamma(1 + 0.5 * (mu + nu - al) + n);
  f.rgamma(1 + nu + n);
  f.l -= ln_gamma(n + 1.0);
  return ((n % 2) ? -2.0 : 2.0) * f.value();
}

double h2_direct(const RieszSetup& r, int n) {
  const double mu = r.mu, nu = r.nu, al = r.al, dmn = r.dmn;
  SignedLog f;
  f.rgamma(-0.5 * al - n);
  f.rgamma(-0.5 * dmn - n);
  if (f.s == 0) return 0.0;
  f.gamma(1 + mu + 0.5 * al + n);
  f.gamma(1 + 0.5 * (mu + nu) + n);
  f.gamma(-0.5 * (dmn + al) - n);
  f.rgamma(1 + mu + n);
  f.rgamma(1 + 0.5 * (mu + nu + al) + n);
  f.l -= ln_gamma(n + 1.0);
  return ((n % 2) ? -2.0 : 2.0) * f.value();
}

struct Branches {
  double lx;      // log of the small ratio
  double f1, f2;  // exponents carried by the h1 and h2 families
};

Branches branches(const RieszSetup& r, double rr, double ss) {
  Branches b;
  if (rr > ss) {
    b.lx = std::log(ss) - std::log(rr);
    b.f1 = r.nu + r.l0 + 2.0;
    b.f2 = r.mu + r.l0 + r.al + 2.0;
  } else {
    b.lx = std::log(rr) - std::log(ss);
    b.f1 = r.nu - r.l0 - r.al;
    b.f2 = r.mu - r.l0;
  }
  return b;
}

// sum_n h_n y^n from h_0 and the A ratio recurrence
struct PlainSum {
  double sum = 0, tail = 0;
  int terms = 0;
  bool converged = false;
};

PlainSum plain_sum(double h0, const GammaRatio4& A, double y, int n_max, double rel_tol) {
  PlainSum out;
  if (h0 == 0.0) {
    out.converged = true;
    return out;
  }
  double h = h0, comp = 0, yn = 1.0;
  int n = 0;
  for (; n < n_max; ++n) {
    double t = h * yn;
    double v = t - comp, s2 = out.sum + v;
    comp = (s2 - out.sum) - v;
    out.sum = s2;
    double next = h * A.step(n + 1.0);
    if (next == 0.0) {
      out.tail = 0;
      out.converged = true;
      ++n;
      break;
    }
    double rho = std::max(y, std::abs(next / h) * y);
    if (n > 8 && rho < 1.0) {
      out.tail = std::abs(t) * rho / (1.0 - rho);
      if (out.tail <= rel_tol * std::abs(out.sum) || out.tail < 1e-300) {
        out.converged = true;
        ++n;
        break;
      }
    }
    h = next;
    yn *= y;
  }
  out.terms = n;
  return out;
}

double inverse_square_tail(double y, int N) {
  const double kappa = -std::log(y), X = N + 1.5;
  const double e1 = -std::expint(-kappa * X);
  return (std::exp(-kappa * X) / X - kappa * e1) / y;
}

// sum_n E_n y^n with the e2/(n+1)^2 law beyond the budget
double e_sum(const GammaRatio4& A, double y, int n_max, double* tail_out) {
  double s = 0, comp = 0, yn = 1.0, last = 0;
  int n = 0;
  for (; n < n_max; ++n) {
    double e = A.minus_one(n + 1.0);
    double v = e * yn - comp, s2 = s + v;
    comp = (s2 - s) - v;
    s = s2;
    last = e;
    yn *= y;
    if (yn < 1e-300) break;
  }
  double tail = yn < 1e-300 ? 0.0 : last * double(n) * double(n) * inverse_square_tail(y, n - 1);
  if (tail_out) *tail_out = tail;
  return s + tail;
}

std::array<double, 8> symbol_args(const RieszSetup& r) {
  // Gamma(w + u1) Gamma(w + u2) Gamma(1 - w + s1) Gamma(1 - w + s2) over
  // Gamma(w + v1) Gamma(w + v2) Gamma(1 - w + t1) Gamma(1 - w + t2)
  const double l0 = r.l0, mu = r.mu, nu = r.nu, al = r.al;
  return {0.5 * (mu - l0), 0.5 * (nu - l0 - al), 0.5 * (nu + l0), 0.5 * (mu + l0 + al),
          0.5 * (nu - l0), 0.5 * (mu - l0 - al), 0.5 * (mu + l0), 0.5 * (nu + l0 + al)};
}

double pole_distance(cplx x) {
  if (x.real() > 0.5) return std::numeric_limits<double>::infinity();
  double nearest = std::min(0.0, std::round(x.real()));
  return std::abs(x - nearest);
}

cplx symbol_eval(const RieszSetup& r, cplx z) {
  auto g = symbol_args(r);
  const cplx w = 0.5 * z;
  const cplx num[4] = {w + g[0], w + g[1], 1.0 - w + g[2], 1.0 - w + g[3]};
  const cplx den[4] = {w + g[4], w + g[5], 1.0 - w + g[6], 1.0 - w + g[7]};
  cplx l = 0;
  for (auto x : num) {
    if (pole_distance(x) < 1e-8) fail(ErrorKind::Pole, "mellin_symbol: z within 1e-8 of a Gamma pole");
    l += ln_gamma(x);
  }
  for (auto x : den) {
    if (pole_distance(x) == 0.0) return 0.0;
    l -= ln_gamma(x);
  }
  return std::exp(l);
}

std::pair<double, double> strip(const RieszSetup& r) {
  return {std::max(r.l0 - r.mu, r.l0 + r.al - r.nu), std::min(2.0 + r.nu + r.l0, 2.0 + r.mu + r.l0 + r.al)};
}

}  // namespace

FoxHInstance make_foxh(const SpectralParams& p, int k, double order, RieszDirection dir) {
  RieszSetup r = setup(p, k, order, dir);
  const double l0 = r.l0, mu = r.mu, nu = r.nu, al = r.al;
  FoxHInstance h;
  h.a = {-0.5 * (nu + l0), -0.5 * (mu + l0 + al), 0.5 * (nu - l0), 0.5 * (mu - l0 - al)};
  h.b = {0.5 * (mu - l0), 0.5 * (nu - l0 - al), -0.5 * (mu + l0), -0.5 * (nu + l0 + al)};
  h.alpha.fill(0.5);
  h.beta.fill(0.5);
  const int m = 2, n = 2;
  double sa = 0, sb = 0, la = 0, lb = 0;
  for (int i = 0; i < 4; ++i) {
    h.a_star += (i < n ? 1 : -1) * h.alpha[i] + (i < m ? 1 : -1) * h.beta[i];
    h.Lambda += h.beta[i] - h.alpha[i];
    sa += h.a[i];
    sb += h.b[i];
    la -= h.alpha[i] * std::log(h.alpha[i]);
    lb += h.beta[i] * std::log(h.beta[i]);
  }
  h.varrho = sb - sa;  // p = q
  h.delta = std::exp(la + lb);
  // poles of Gamma(b_j + z/2), j <= m, sit left of those of Gamma(1 - a_i - z/2), i <= n
  h.strip_lo = std::max(-h.b[0] / h.beta[0], -h.b[1] / h.beta[1]);
  h.strip_hi = std::min((1.0 - h.a[0]) / h.alpha[0], (1.0 - h.a[1]) / h.alpha[1]);
  return h;
}

cplx mellin_symbol(const SpectralParams& p, int k, double order, cplx z, RieszDirection dir) {
  return symbol_eval(setup(p, k, order, dir), z);
}

RieszCoeffs riesz_coeffs(const SpectralParams& p, int k, double order, int n_max, RieszDirection dir) {
  if (n_max < 0) fail(ErrorKind::InvalidArgument, "riesz_coeffs: n_max must be >= 0");
  RieszSetup r = setup(p, k, order, dir);
  if (is_even_order(order)) fail(ErrorKind::Domain, "riesz_coeffs: even order, use kernel_even");
  check_resonance(r);
  RieszCoeffs c;
  c.k = k;
  c.alpha = order;
  c.C = r.C;
  for (int n = 0; n <= n_max; ++n) {
    c.A1.push_back(r.A1.value(n + 1.0));
    c.A2.push_back(r.A2.value(n + 1.0));
    c.E1.push_back(r.A1.minus_one(n + 1.0));
    c.E2.push_back(r.A2.minus_one(n + 1.0));
  }
  return c;
}

double riesz_C(const SpectralParams& p, int k, double order, RieszDirection dir) {
  RieszSetup r = setup(p, k, order, dir);
  if (!is_even_order(order)) check_resonance(r);
  return r.C;
}

double riesz_h1(const SpectralParams& p, int k, double order, int n, RieszDirection dir) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "riesz_h1: n must be >= 0");
  RieszSetup r = setup(p, k, order, dir);
  check_resonance(r);
  return p.a == 0.0 ? 0.0 : h1_direct(r, n);
}

double riesz_h2(const SpectralParams& p, int k, double order, int n, RieszDirection dir) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "riesz_h2: n must be >= 0");
  RieszSetup r = setup(p, k, order, dir);
  check_resonance(r);
  return p.a == 0.0 ? 0.0 : h2_direct(r, n);
}

RieszValue kernel_riesz(const SpectralParams& p, int k, double order, double r, double s, RieszDirection dir,
                        const RieszOptions& opt) {
  if (!(r > 0.0) || !(s > 0.0)) fail(ErrorKind::Domain, "kernel_riesz: r and s must be positive");
  if (r == s) fail(ErrorKind::Domain, "kernel_riesz: undefined on the diagonal");
  RieszSetup R = setup(p, k, order, dir);
  RieszValue out;
  if (p.a == 0.0 || order == 0.0) return out;
  if (is_even_order(order)) {
    out.value = kernel_even(p, k, int(std::lround(order / 2)), r, s, dir);
    return out;
  }
  check_resonance(R);
  Branches b = branches(R, r, s);
  const double x = std::exp(b.lx), y = x * x;

  if (1.0 - x > opt.delta_diag) {
    PlainSum s1 = plain_sum(h1_direct(R, 0), R.A1, y, opt.n_max, opt.rel_tol);
    PlainSum s2 = plain_sum(h2_direct(R, 0), R.A2, y, opt.n_max, opt.rel_tol);
    double p1 = std::exp(b.f1 * b.lx), p2 = std::exp(b.f2 * b.lx);
    double v = p1 * s1.sum + p2 * s2.sum;
    double tail = p1 * s1.tail + p2 * s2.tail;
    out.terms = std::max(s1.terms, s2.terms);
    out.tail = tail;
    if (!(s1.converged && s2.converged) && tail > 1e-10 * std::abs(v))
      throw NonConvergenceError("kernel_riesz: series budget exhausted", v, tail);
    out.value = v;
    return out;
  }

  // C [ (x^f1 - x^f2)/(1-y) + x^f1 sum E1 y^n - x^f2 sum E2 y^n ]
  double t1 = 0, t2 = 0;
  double se1 = e_sum(R.A1, y, opt.n_max, &t1), se2 = e_sum(R.A2, y, opt.n_max, &t2);
  double p1 = std::exp(b.f1 * b.lx), p2 = std::exp(b.f2 * b.lx);
  double diff = p2 * std::expm1((b.f1 - b.f2) * b.lx);
  double main = diff / (-std::expm1(2.0 * b.lx));
  out.value = R.C * (main + p1 * se1 - p2 * se2);
  out.tail = std::abs(R.C) * (p1 * std::abs(t1) + p2 * std::abs(t2));
  out.terms = opt.n_max;
  out.decomposed = true;
  return out;
}

double kernel_even(const SpectralParams& p, int k, int m, double r, double s, RieszDirection dir) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "kernel_even: m must be nonzero");
  if (!(r > 0.0) || !(s > 0.0)) fail(ErrorKind::Domain, "kernel_even: r and s must be positive");
  if (r == s) fail(ErrorKind::Domain, "kernel_even: undefined on the diagonal");
  RieszSetup R = setup(p, k, 2.0 * m, dir);
  if (p.a == 0.0) return 0.0;
  check_resonance(R);
  Branches b = branches(R, r, s);
  // h1 survives only for m > 0 (n < m), h2 only for m < 0 (n < -m)
  double v = 0;
  for (int n = 0; n < std::abs(m); ++n) {
    double e = 2.0 * n * b.lx;
    if (m > 0)
      v += h1_direct(R, n) * std::exp(b.f1 * b.lx + e);
    else
      v += h2_direct(R, n) * std::exp(b.f2 * b.lx + e);
  }
  return v;
}

MellinOracleValue inverse_mellin_oracle(const SpectralParams& p, int k, double order, double ratio, double contour_re,
                                        const MellinQuadBudget& budget, RieszDirection dir) {
  if (!(ratio > 0.0) || ratio == 1.0) fail(ErrorKind::Domain, "inverse_mellin_oracle: ratio must be positive and != 1");
  if (budget.nodes_per_panel < 4 || budget.asymptotic_terms < 1 || !(budget.t_max > 0) || !(budget.shift > 0))
    fail(ErrorKind::InvalidArgument, "inverse_mellin_oracle: bad quadrature budget");
  RieszSetup R = setup(p, k, order, dir);
  auto [lo, hi] = strip(R);
  double c = std::isnan(contour_re) ? 0.5 * (lo + hi) : contour_re;
  if (!(lo < c && c < hi)) fail(ErrorKind::Domain, "inverse_mellin_oracle: contour outside the pole-free strip");
  MellinOracleValue out;
  out.contour = c;
  if (p.a == 0.0 || order == 0.0) return out;

  // ln H(w) ~ sum_k g_k w^{-k}, w = z/2; the log terms cancel between the pairs
  auto args = symbol_args(R);
  const int J = budget.asymptotic_terms;
  auto log_coeffs = [&](int K) {
    std::vector<double> g(K + 1, 0.0);
    for (int kk = 1; kk <= K; ++kk) {
      double D = 0, E = 0;
      for (int i = 0; i < 2; ++i) {
        D += bernoulli_poly(kk + 1, args[i]) - bernoulli_poly(kk + 1, args[4 + i]);
        E += bernoulli_poly(kk + 1, 1.0 + args[2 + i]) - bernoulli_poly(kk + 1, 1.0 + args[6 + i]);
      }
      double sg = (kk % 2) ? 1.0 : -1.0;
      g[kk] = sg / (kk * (kk + 1.0)) * (D + ((kk % 2) ? -1.0 : 1.0) * E);
    }
    return g;
  };
  const std::vector<double> g = log_coeffs(J);
  // far up the contour the eight log-gammas lose ~eps*t*ln t absolutely; ln H itself is O(1/t) there
  const std::vector<double> g_far = log_coeffs(20);
  const double far = 80.0;
  auto H = [&](cplx z) {
    if (std::abs(z) < far) return symbol_eval(R, z);
    cplx wi = 2.0 / z, acc = 0, wn = wi;
    for (int kk = 1; kk <= 20; ++kk, wn *= wi) acc += g_far[kk] * wn;
    return std::exp(acc);
  };
  // exp of the series: G = sum_j cw_j w^{-j}
  std::vector<double> cw(J + 1, 0.0);
  cw[0] = 1.0;
  for (int j = 1; j <= J; ++j) {
    double s = 0;
    for (int i = 1; i <= j; ++i) s += i * g[i] * cw[j - i];
    cw[j] = s / j;
  }
  // re-expand sum_j cw_j 2^j z^{-j} about z0, left of the contour: powers of u = z - z0
  const double z0 = c - budget.shift;
  std::vector<double> d(J + 1, 0.0);
  for (int j = 0; j <= J; ++j) {
    double cj = cw[j] * std::ldexp(1.0, j);
    double binom = 1.0;  // (-1)^m C(j+m-1, m)
    for (int m = 0; j + m <= J; ++m) {
      if (j == 0 && m > 0) break;
      d[j + m] += cj * binom * std::pow(z0, m);
      binom *= -double(j + m) / (m + 1);
    }
  }
  auto G = [&](cplx z) {
    cplx ui = 1.0 / (z - z0), acc = 0, un = 1.0;
    for (int n = 0; n <= J; ++n) {
      acc += d[n] * un;
      un *= ui;
    }
    return acc;
  };

  // closed inverse of the subtracted part: u^{-n} -> x^{-z0} (-ln x)^{n-1}/(n-1)! for x < 1
  const double lx = std::log(ratio);
  double closed = 0;
  if (ratio < 1.0) {
    double fact = 1.0, pw = 1.0;
    for (int n = 1; n <= J; ++n) {
      if (n > 1) {
        fact *= n - 1;
        pw *= -lx;
      }
      closed += d[n] * pw / fact;
    }
    closed *= std::exp(-z0 * lx);
  }

  // residual: (1/pi) Re int_0^inf x^{-c-it} (H - G) dt
  std::vector<double> gx, gw;
  gauss_legendre(budget.nodes_per_panel, gx, gw);
  const double width = std::min(1.0, kPi / std::max(std::abs(lx), 1e-3));
  const double xc = std::exp(-c * lx);
  auto integrand = [&](double t) {
    cplx z(c, t);
    cplx v = H(z) - G(z);
    return (xc * std::exp(cplx(0, -t * lx)) * v).real();
  };
  const int max_panels = int(std::ceil(10.0 * budget.t_max / width));
  double resid = 0, comp = 0, t0 = 0, last = 0;
  int panel = 0;
  for (; panel < max_panels; ++panel) {
    double a0 = t0, a1 = t0 + width, ps = 0;
#pragma omp parallel for reduction(+ : ps) if (budget.nodes_per_panel >= 64)
    for (int i = 0; i < int(gx.size()); ++i) ps += gw[i] * integrand(0.5 * (a0 + a1) + 0.5 * (a1 - a0) * gx[i]);
    ps *= 0.5 * width;
    double v = ps - comp, s2 = resid + v;
    comp = (s2 - resid) - v;
    resid = s2;
    t0 = a1;
    last = std::abs(xc) * std::abs(H(cplx(c, t0)) - G(cplx(c, t0)));
    if (t0 >= budget.t_max && last < 1e-14) break;
  }
  if (panel >= max_panels)
    throw NonConvergenceError("inverse_mellin_oracle: integrand not below 1e-14 within budget", closed + resid / kPi,
                              last);
  out.value = closed + resid / kPi;
  out.residual_tail = last;
  return out;
}

RieszDiagonal riesz_diagonal_limit(const SpectralParams& p, int k, double order, Side side, RieszDirection dir) {
  RieszSetup R = setup(p, k, order, dir);
  RieszDiagonal out;
  if (p.a == 0.0 || order == 0.0) return out;
  if (is_even_order(order)) fail(ErrorKind::Domain, "riesz_diagonal_limit: even order has no diagonal term");
  check_resonance(R);
  out.C = R.C;
  Branches b = side == Side::Below ? branches(R, 2.0, 1.0) : branches(R, 1.0, 2.0);

  // plain sums of the two families at x = 1 - 2^{-j}; fit in t = 1 - x^2
  const int J0 = 4, J1 = 10, cols = 5, rows = J1 - J0 + 1;
  Eigen::MatrixXd M(rows, cols);
  Eigen::VectorXd f1(rows), f2(rows), fc(rows);
  const double h10 = h1_direct(R, 0), h20 = h2_direct(R, 0);
  for (int j = J0; j <= J1; ++j) {
    double x = 1.0 - std::ldexp(1.0, -j), y = x * x, t = 1.0 - y, lt = std::log(t);
    PlainSum s1 = plain_sum(h10, R.A1, y, 400000, 1e-15);
    PlainSum s2 = plain_sum(h20, R.A2, y, 400000, 1e-15);
    double q1 = t * std::pow(x, b.f1) * s1.sum, q2 = t * std::pow(x, b.f2) * s2.sum;
    int i = j - J0;
    M(i, 0) = 1.0;
    M(i, 1) = t;
    M(i, 2) = t * t * lt;
    M(i, 3) = t * t;
    M(i, 4) = t * t * t;
    f1(i) = q1;
    f2(i) = q2;
    fc(i) = q1 + q2;
  }
  auto qr = M.colPivHouseholderQr();
  out.family1 = qr.solve(f1)(0);
  out.family2 = qr.solve(f2)(0);
  out.combined = qr.solve(fc)(0);
  out.gap = std::max({std::abs(out.family1 - R.C), std::abs(out.family2 + R.C), std::abs(out.combined)});
  return out;
}

}  // namespace invsq
