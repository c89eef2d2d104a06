#pragma once

#include <array>
#include <complex>
#include <vector>

#include "invsq/params.hpp"
#include "invsq/waveop_kernels.hpp"

namespace invsq {

enum class RieszDirection { Forward, Inverse };  // R^alpha, or R^{-beta} with order = beta

struct FoxHInstance {
  std::array<double, 4> a{}, alpha{};  // upper pairs (a_i, alpha_i)
  std::array<double, 4> b{}, beta{};   // lower pairs (b_j, beta_j)
  double a_star = 0, Lambda = 0, varrho = 0, delta = 0;
  double strip_lo = 0, strip_hi = 0;  // pole-free band for Re z
  bool pole_separated() const { return strip_lo < strip_hi; }
};

FoxHInstance make_foxh(const SpectralParams& p, int k, double order, RieszDirection dir = RieszDirection::Forward);

std::complex<double> mellin_symbol(const SpectralParams& p, int k, double order, std::complex<double> z,
                                   RieszDirection dir = RieszDirection::Forward);

struct RieszCoeffs {
  int k = 0;
  double alpha = 0;
  double C = 0;
  std::vector<double> A1, A2, E1, E2;
};

// C_k^alpha = 2 sin(pi alpha/2) sin(pi (mu-nu)/2) / (pi sin(pi (mu-nu+alpha)/2))
double riesz_C(const SpectralParams& p, int k, double order, RieszDirection dir = RieszDirection::Forward);

RieszCoeffs riesz_coeffs(const SpectralParams& p, int k, double order, int n_max,
                         RieszDirection dir = RieszDirection::Forward);

// residue coefficients h_{1n}, h_{2n} evaluated from the Gamma ratio directly; finite for even orders
double riesz_h1(const SpectralParams& p, int k, double order, int n, RieszDirection dir = RieszDirection::Forward);
double riesz_h2(const SpectralParams& p, int k, double order, int n, RieszDirection dir = RieszDirection::Forward);

struct RieszOptions {
  int n_max = 20000;
  double delta_diag = 1e-3;
  double rel_tol = 1e-14;
};

struct RieszValue {
  double value = 0;
  int terms = 0;
  double tail = 0;
  bool decomposed = false;
};

RieszValue kernel_riesz(const SpectralParams& p, int k, double order, double r, double s,
                        RieszDirection dir = RieszDirection::Forward, const RieszOptions& opt = {});

// order = 2m, m a nonzero integer; a finite sum on each side of the diagonal
double kernel_even(const SpectralParams& p, int k, int m, double r, double s,
                   RieszDirection dir = RieszDirection::Forward);

struct MellinQuadBudget {
  double t_max = 200.0;
  int nodes_per_panel = 20;
  int asymptotic_terms = 10;
  double shift = 4.0;  // expansion centre sits this far left of the contour
};

struct MellinOracleValue {
  double value = 0;
  double residual_tail = 0;  // size of the subtracted integrand at t_max
  double contour = 0;
};

// (1/2 pi i) int ratio^{-z} H(z) dz on Re z = contour_re; pass NaN for the strip midpoint
MellinOracleValue inverse_mellin_oracle(const SpectralParams& p, int k, double order, double ratio,
                                        double contour_re, const MellinQuadBudget& budget = {},
                                        RieszDirection dir = RieszDirection::Forward);

struct RieszDiagonal {
  double C = 0;
  double family1 = 0, family2 = 0;  // extrapolated limits of (1-x^2) sum h_i x^{2n}; closed values C and -C
  double combined = 0;              // extrapolated (1-x^2) K; closed value 0
  double gap = 0;
};

RieszDiagonal riesz_diagonal_limit(const SpectralParams& p, int k, double order, Side side,
                                   RieszDirection dir = RieszDirection::Forward);

}  // namespace invsq
