#pragma once

#include <vector>

#include "invsq/params.hpp"

namespace invsq {

enum class Branch { Plus, Minus };  // Plus: s < r, series in (s/r)^2.  Minus: s > r.
enum class Side { Below, Above };

struct KernelQuery {
  SpectralParams params;
  int k = 0;
  double p = 2.0;
  double r = 1.0;
  double s = 0.5;
};

struct KernelOptions {
  int n_max = 20000;
  double delta_diag = 1e-3;
  double rel_tol = 1e-14;
  double aplus_scale = 1.0;  // test hook: multiplies every A+ coefficient
};

struct KernelValue {
  double value = 0.0;
  int terms = 0;
  double tail = 0.0;
  bool decomposed = false;
};

struct CoeffTable {
  int k = 0;
  Branch branch = Branch::Plus;
  int n_max = 0;
  std::vector<double> A;
  std::vector<double> E;  // A - 1 -+ a/(4(n+1))
};

double coeff_A(Branch b, int k, int n, const SpectralParams& p);
double coeff_E(Branch b, int k, int n, const SpectralParams& p);
CoeffTable coeff_table(const SpectralParams& p, int k, Branch b, int n_max);

// exponents of the (s/r) and (r/s) prefactors of the modified kernel
double exponent_plus(const SpectralParams& p, int k, double pexp);
double exponent_minus(const SpectralParams& p, int k, double pexp);

// every prefactor exponent of the W and W* kernels is positive for all k
bool exponent_predicate(const SpectralParams& p, double pexp);

KernelValue kernel_ktilde(const KernelQuery& q, const KernelOptions& opt = {});

// unmodified kernel K_k(r,s) = (s/r)^{d/p} Ktilde
double kernel_k(const KernelQuery& q, const KernelOptions& opt = {});

struct OracleValue {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Gaussian-damped quadrature extrapolated to eps -> 0; independent of the series
OracleValue kernel_quadrature_oracle(const KernelQuery& q, const std::vector<double>& eps_list);
OracleValue kernel_quadrature_oracle(const KernelQuery& q);

struct DiagonalLimit {
  double closed = 0.0;
  double numeric = 0.0;
  double gap = 0.0;
};

DiagonalLimit diagonal_limit(const SpectralParams& p, int k, Side side, const KernelOptions& opt = {});

}  // namespace invsq
