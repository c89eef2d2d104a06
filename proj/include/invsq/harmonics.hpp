#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "invsq/params.hpp"
#include "invsq/transforms.hpp"

namespace invsq {

// d = 2: n_theta equispaced angles (n_phi = 1).  d = 3: Gauss-Legendre colatitudes x equispaced azimuths.
struct AngularGrid {
  int d = 3;
  int n_theta = 0, n_phi = 0;
  std::vector<double> theta, phi, w;  // one entry per point; w sums to |S^{d-1}|
  size_t size() const { return w.size(); }
};

using AngularPtr = std::shared_ptr<const AngularGrid>;

AngularPtr make_angular_grid(int d, int n_theta, int n_phi = 1);
// smallest grid that resolves degree k_max
AngularPtr angular_grid_for(int d, int k_max);

// 2 - delta_{k0} for d = 2, 2k+1 for d = 3
int harmonic_count(int d, int k);

// real orthonormal harmonic Y_{k,l}, l = 1..harmonic_count(d,k)
// d = 2: l = 1 cos(k theta), l = 2 sin(k theta).  d = 3: m = l - k - 1, cos for m > 0, sin for m < 0.
double real_harmonic(int d, int k, int l, double theta, double phi = 0.0);

struct Field {
  AngularPtr ang;
  GridPtr radial;
  std::vector<cplx> values;  // values[a * n_r + i]

  Field() = default;
  Field(AngularPtr a, GridPtr r) : ang(std::move(a)), radial(std::move(r)), values(ang->size() * radial->size()) {}
  cplx& at(size_t a, size_t i) { return values[a * radial->size() + i]; }
  const cplx& at(size_t a, size_t i) const { return values[a * radial->size() + i]; }
};

Field make_field(AngularPtr ang, GridPtr radial, const std::function<cplx(double r, double theta, double phi)>& f);
double field_norm(const Field& f);  // L^2(r^{d-1} dr dw)
double field_distance(const Field& f, const Field& g);

struct ModeKey {
  int k = 0, l = 1;
};

struct ModeExpansion {
  int d = 3, k_max = 0;
  std::vector<ModeKey> keys;
  std::vector<ComplexRadialFunction> modes;
  const ComplexRadialFunction& get(int k, int l) const;
  double norm() const;  // sqrt(sum ||f_kl||^2)
};

ModeExpansion analyze(const Field& f, int k_max);
Field synthesize(const ModeExpansion& e, AngularPtr ang);

Field apply_W(const SpectralParams& p, const Field& f, bool adjoint, int k_max);

enum class CalculusPath { Direct, Conjugated };

// direct: H_nu m H_nu per mode.  conjugated: W (B_mu m B_mu) W*.
Field apply_function_of_La(const SpectralParams& p, const std::function<cplx(double)>& m, const Field& f,
                           CalculusPath path, int k_max);

struct DispersiveRow {
  double t = 0;
  double sup = 0;
  double scaled = 0;    // t^{d/2} sup
  double envelope = 0;  // (1+t^2)^{-d/4} sup|f|, the free Gaussian value
  double lambda_res = 0;
  double alias_fraction = 0;  // spectral energy share above lambda_res
  bool aliased = false;
};

struct DispersiveConfig {
  double r_min = 1e-6, r_max = 1e6;
  int n = 1 << 18;
  double sup_r_max = 1e4;
};

// e^{-itLa} f for radial f; sup taken over r in [2 pi/lambda_res(t), sup_r_max]
std::vector<DispersiveRow> dispersive_experiment(const SpectralParams& p, const RadialFunction& f,
                                                 const std::vector<double>& t_list, double sup_r_max = 1e4);
// f = exp(-r^2/4) on the config grid
std::vector<DispersiveRow> dispersive_gaussian(const SpectralParams& p, const std::vector<double>& t_list,
                                               const DispersiveConfig& cfg = {});

// ||(-Delta)^{alpha/2} f|| / ||La^{alpha/2} f|| over a family of Gaussian bumps on modes k = 0..2
std::vector<double> sobolev_ratio_check(const SpectralParams& p, double alpha, int count);

}  // namespace invsq
