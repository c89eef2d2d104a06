#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "invsq/params.hpp"

namespace invsq {

struct SequenceSample {
  std::vector<double> values;  // C_0 .. C_K
  int K() const { return int(values.size()) - 1; }
};

// Delta^N C_k for k = 0..K-N
SequenceSample finite_diff(const SequenceSample& seq, int N);

struct BCReport {
  int N = 1;
  double sup = 0;               // sup_k |C_k|
  std::vector<double> dyadic;   // 2^{j(N-1)} sum_{k=2^j}^{2^{j+1}} |Delta^N C_k|, j = 0..j_max
  // dyadic[j_hi] <= factor * dyadic[j_lo]
  bool no_growth(int j_lo = 6, int j_hi = 12, double factor = 4.0) const;
};

BCReport bc_report(const SequenceSample& seq, int N, int j_max);

// all orders 1..N at once
std::vector<BCReport> bc_report_orders(const SequenceSample& seq, int N, int j_max);

// floor((d-1)/2) + 1
int bc_order(int d);

struct SmoothReport {
  double sup_difference = 0;  // sup_k k^w |Delta^N f(k)|
  double sup_derivative = 0;  // sup_k k^w |f^(N)(k)|, by a fine-step difference quotient
  int argmax = 0;
};

SmoothReport smooth_sufficiency_check(const std::function<double(double)>& fn, int N, int K, int weight = -1);

struct ProductReport {
  double leibniz_residual = 0;  // max_k |Delta^N(FG) - sum_m C(N,m) Delta^{N-m}F_k Delta^m G_{k+N-m}|
  BCReport product;
};

ProductReport product_rule_check(const SequenceSample& F, const SequenceSample& G, int N, int j_max);

struct AppendixReport {
  int N = 1;
  double sup = 0;  // sup k^N (n+1) |Delta^N_k E_{k,n}|
  int k_at = 0, n_at = 0;
  std::string family;
};

// wave-operator coefficients E+ and E-, or the Riesz E_1, E_2 when alpha is given
AppendixReport appendix_bound_check(const SpectralParams& p, std::optional<double> alpha, int N, int k_max, int n_max);

// sequences in k = 0..K fed to the multiplier conditions; x is s/r (+ families) or r/s (- families)
SequenceSample seq_sin_pi_b(const SpectralParams& p, int K);
SequenceSample seq_riesz_C(const SpectralParams& p, double alpha, int K);
SequenceSample seq_T_plus(const SpectralParams& p, double x, int K);
SequenceSample seq_T_minus(const SpectralParams& p, double x, int K);
SequenceSample seq_T_tilde_plus(const SpectralParams& p, double x, int K);
SequenceSample seq_T_tilde_minus(const SpectralParams& p, double x, int K);
// 2 sin(-+pi b_k)/pi x^{e+-} sum_n E+-_{k,n} x^{2n}, at exponent p = 2
SequenceSample seq_E_plus(const SpectralParams& p, double x, int K);
SequenceSample seq_E_minus(const SpectralParams& p, double x, int K);

}  // namespace invsq
