#include "invsq/multiplier_check.hpp"

#include <cmath>
#include <numbers>

#include "invsq/errors.hpp"
#include "invsq/riesz_kernels.hpp"
#include "invsq/specfun.hpp"
#include "invsq/waveop_kernels.hpp"

namespace invsq {

namespace {

double binom(int n, int m) {
  double b = 1;
  for (int i = 1; i <= m; ++i) b = b * (n - m + i) / i;
  return b;
}

// Delta^N of an array starting at index k
double delta_at(const std::vector<double>& v, size_t k, int N) {
  double s = 0;
  for (int m = 0; m <= N; ++m) s += (((N - m) % 2) ? -1.0 : 1.0) * binom(N, m) * v[k + m];
  return s;
}

}  // namespace

SequenceSample finite_diff(const SequenceSample& seq, int N) {
  if (N < 1) fail(ErrorKind::InvalidArgument, "finite_diff: N must be >= 1");
  if (N > seq.K()) fail(ErrorKind::InvalidArgument, "finite_diff: window too short for order " + std::to_string(N));
  SequenceSample out = seq;
  for (int i = 0; i < N; ++i) {
    for (size_t k = 0; k + 1 < out.values.size(); ++k) out.values[k] = out.values[k + 1] - out.values[k];
    out.values.pop_back();
  }
  return out;
}

bool BCReport::no_growth(int j_lo, int j_hi, double factor) const {
  if (j_hi >= int(dyadic.size()) || j_lo < 0) fail(ErrorKind::InvalidArgument, "no_growth: j outside the report");
  return dyadic[j_hi] <= factor * dyadic[j_lo];
}

int bc_order(int d) { return (d - 1) / 2 + 1; }

BCReport bc_report(const SequenceSample& seq, int N, int j_max) {
  if (j_max < 0) fail(ErrorKind::InvalidArgument, "bc_report: j_max must be >= 0");
  long need = (2L << j_max) + N;
  if (seq.K() < need) fail(ErrorKind::InvalidArgument, "bc_report: need K >= " + std::to_string(need));
  BCReport r;
  r.N = N;
  for (double v : seq.values) {
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "bc_report: non-finite sequence entry");
    r.sup = std::max(r.sup, std::abs(v));
  }
  SequenceSample D = finite_diff(seq, N);
  for (int j = 0; j <= j_max; ++j) {
    double s = 0;
    for (long k = 1L << j; k <= (2L << j); ++k) s += std::abs(D.values[k]);
    r.dyadic.push_back(std::ldexp(s, j * (N - 1)));
  }
  return r;
}

std::vector<BCReport> bc_report_orders(const SequenceSample& seq, int N, int j_max) {
  std::vector<BCReport> out;
  for (int m = 1; m <= N; ++m) out.push_back(bc_report(seq, m, j_max));
  return out;
}

SmoothReport smooth_sufficiency_check(const std::function<double(double)>& fn, int N, int K, int weight) {
  if (N < 1 || K < 1) fail(ErrorKind::InvalidArgument, "smooth_sufficiency_check: N and K must be >= 1");
  if (weight < 0) weight = N;
  std::vector<double> v(K + N + 1);
  for (int k = 1; k <= K + N; ++k) v[k] = fn(double(k));
  SmoothReport r;
  const double h = 1e-2;
  for (int k = 1; k <= K; ++k) {
    double w = std::pow(double(k), weight);
    double dd = w * std::abs(delta_at(v, k, N));
    // centred difference quotient at the same midpoint k + N/2
    double c = 0;
    for (int m = 0; m <= N; ++m) c += (((N - m) % 2) ? -1.0 : 1.0) * binom(N, m) * fn(k + 0.5 * N + (m - 0.5 * N) * h);
    double dv = w * std::abs(c / std::pow(h, N));
    if (dd > r.sup_difference) {
      r.sup_difference = dd;
      r.argmax = k;
    }
    r.sup_derivative = std::max(r.sup_derivative, dv);
  }
  return r;
}

ProductReport product_rule_check(const SequenceSample& F, const SequenceSample& G, int N, int j_max) {
  if (F.values.size() != G.values.size()) fail(ErrorKind::InvalidArgument, "product_rule_check: lengths differ");
  SequenceSample FG;
  for (size_t k = 0; k < F.values.size(); ++k) FG.values.push_back(F.values[k] * G.values[k]);
  SequenceSample direct = finite_diff(FG, N);
  std::vector<SequenceSample> dF{F}, dG{G};
  for (int m = 1; m <= N; ++m) {
    dF.push_back(finite_diff(F, m));
    dG.push_back(finite_diff(G, m));
  }
  ProductReport r;
  for (int k = 0; k <= FG.K() - N; ++k) {
    double s = 0;
    for (int m = 0; m <= N; ++m) s += binom(N, m) * dF[N - m].values[k] * dG[m].values[k + N - m];
    r.leibniz_residual = std::max(r.leibniz_residual, std::abs(s - direct.values[k]));
  }
  r.product = bc_report(FG, N, j_max);
  return r;
}

AppendixReport appendix_bound_check(const SpectralParams& p, std::optional<double> alpha, int N, int k_max,
                                    int n_max) {
  if (N < 1 || N > 3) fail(ErrorKind::InvalidArgument, "appendix_bound_check: N must be in 1..3");
  if (k_max < 1 || k_max > 1024 || n_max < 0 || n_max > 1000)
    fail(ErrorKind::InvalidArgument, "appendix_bound_check: lattice limited to k <= 1024, n <= 1000");
  AppendixReport best;
  best.N = N;
  const int kk = k_max + N + 1;
  auto scan = [&](const std::vector<std::vector<double>>& E, const char* name) {
    std::vector<double> col(kk);
    for (int n = 0; n <= n_max; ++n) {
      for (int k = 0; k < kk; ++k) col[k] = E[k][n];
      for (int k = 1; k <= k_max; ++k) {
        double v = std::pow(double(k), N) * (n + 1.0) * std::abs(delta_at(col, k, N));
        if (v > best.sup) {
          best.sup = v;
          best.k_at = k;
          best.n_at = n;
          best.family = name;
        }
      }
    }
  };
  std::vector<std::vector<double>> E1(kk), E2(kk);
  if (p.a == 0.0) {
    best.family = alpha ? "E1" : "E+";
    return best;
  }
  if (!alpha) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < kk; ++k) {
      E1[k] = coeff_table(p, k, Branch::Plus, n_max).E;
      E2[k] = coeff_table(p, k, Branch::Minus, n_max).E;
    }
    scan(E1, "E+");
    scan(E2, "E-");
  } else {
    for (int k = 0; k < kk; ++k) {
      RieszCoeffs c = riesz_coeffs(p, k, *alpha, n_max);
      E1[k] = std::move(c.E1);
      E2[k] = std::move(c.E2);
    }
    scan(E1, "E1");
    scan(E2, "E2");
  }
  return best;
}

SequenceSample seq_sin_pi_b(const SpectralParams& p, int K) {
  SequenceSample s;
  for (int k = 0; k <= K; ++k) s.values.push_back(sin_pi(mode_indices(p, k).b));
  return s;
}

SequenceSample seq_riesz_C(const SpectralParams& p, double alpha, int K) {
  SequenceSample s;
  for (int k = 0; k <= K; ++k) s.values.push_back(riesz_C(p, k, alpha));
  return s;
}

SequenceSample seq_T_plus(const SpectralParams& p, double x, int K) {
  SequenceSample s;
  for (int k = 0; k <= K; ++k) s.values.push_back(std::pow(x, mode_indices(p, k).mu));
  return s;
}

SequenceSample seq_T_minus(const SpectralParams& p, double x, int K) {
  SequenceSample s;
  for (int k = 0; k <= K; ++k) s.values.push_back(std::pow(x, mode_indices(p, k).nu));
  return s;
}

SequenceSample seq_T_tilde_plus(const SpectralParams& p, double x, int K) {
  SequenceSample s;
  const double lx = std::log(x), den = -std::expm1(2 * lx);
  for (int k = 0; k <= K; ++k)
    s.values.push_back(sin_pi(-mode_indices(p, k).b) / std::numbers::pi * std::expm1(k * lx) / den);
  return s;
}

SequenceSample seq_T_tilde_minus(const SpectralParams& p, double x, int K) {
  SequenceSample s;
  const double lx = std::log(x), den = -std::expm1(2 * lx), nu0 = mode_indices(p, 0).nu;
  for (int k = 0; k <= K; ++k) {
    ModeIndices m = mode_indices(p, k);
    s.values.push_back(sin_pi(m.b) / std::numbers::pi * std::expm1((m.nu - nu0) * lx) / den);
  }
  return s;
}

namespace {

SequenceSample seq_E(const SpectralParams& p, double x, int K, Branch br) {
  SequenceSample s(std::vector<double>(K + 1));
  const double y = x * x;
  const int n_stop = int(std::ceil(std::log(1e-18) / std::log(y)));
#pragma omp parallel for schedule(dynamic, 64)
  for (int k = 0; k <= K; ++k) {
    ModeIndices m = mode_indices(p, k);
    double e = br == Branch::Plus ? exponent_plus(p, k, 2.0) : exponent_minus(p, k, 2.0);
    double sg = br == Branch::Plus ? sin_pi(-m.b) : sin_pi(m.b);
    double acc = 0, yn = 1;
    if (sg != 0.0)
      for (int n = 0; n <= n_stop; ++n, yn *= y) acc += coeff_E(br, k, n, p) * yn;
    s.values[k] = 2.0 * sg / std::numbers::pi * std::pow(x, e) * acc;
  }
  return s;
}

}  // namespace

SequenceSample seq_E_plus(const SpectralParams& p, double x, int K) { return seq_E(p, x, K, Branch::Plus); }
SequenceSample seq_E_minus(const SpectralParams& p, double x, int K) { return seq_E(p, x, K, Branch::Minus); }

}  // namespace invsq
