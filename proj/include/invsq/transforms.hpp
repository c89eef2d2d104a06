#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

#include "invsq/params.hpp"

namespace invsq {

using cplx = std::complex<double>;

struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;  // quadrature weights for r^{d-1} dr
  int d = 3;
  double r_min = 0.0, r_max = 0.0;
  double h = 0.0;  // log step
  size_t size() const { return r.size(); }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_log_grid(double r_min, double r_max, int n, int d);
// [1/r_max, 1/r_min] with the same node count; the transforms are exact on this pairing
GridPtr reciprocal_grid(const RadialGrid& g);
bool grids_reciprocal(const RadialGrid& a, const RadialGrid& b);

template <class T>
struct RadialFunctionT {
  GridPtr grid;
  std::vector<T> values;

  RadialFunctionT() = default;
  RadialFunctionT(GridPtr g) : grid(std::move(g)), values(grid->size(), T(0)) {}
  RadialFunctionT(GridPtr g, std::vector<T> v);
  size_t size() const { return values.size(); }
};

using RadialFunction = RadialFunctionT<double>;
using ComplexRadialFunction = RadialFunctionT<cplx>;

template <class T>
RadialFunctionT<T> sample(GridPtr g, const std::function<T(double)>& f) {
  RadialFunctionT<T> out(g);
  for (size_t i = 0; i < g->size(); ++i) out.values[i] = f(g->r[i]);
  return out;
}

template <class T>
double norm(const RadialFunctionT<T>& f);
template <class T>
double distance(const RadialFunctionT<T>& f, const RadialFunctionT<T>& g);
template <class T>
double integrate(const RadialFunctionT<T>& f);  // sum w_i f_i, real part for complex

ComplexRadialFunction to_complex(const RadialFunction& f);
RadialFunction real_part(const ComplexRadialFunction& f);

// (T f)(lam) = int f(r) (lam r)^{-(d-2)/2} J_order(lam r) r^{d-1} dr.
// Log-FFT evaluation when out_grid is the reciprocal of f's grid, direct quadrature otherwise.
template <class T>
RadialFunctionT<T> bessel_transform(double order, const RadialFunctionT<T>& f, GridPtr out_grid);
template <class T>
RadialFunctionT<T> hankel_transform(double order, const RadialFunctionT<T>& f, GridPtr out_grid);

// the same sum evaluated node by node; O(n m) Bessel calls
template <class T>
RadialFunctionT<T> direct_transform(double order, const RadialFunctionT<T>& f, GridPtr out_grid);

template <class T>
RadialFunctionT<T> apply_mode_waveop(const SpectralParams& p, int k, const RadialFunctionT<T>& f, bool adjoint);

enum class Calculus { La, Laplacian };

struct MultiplierReport {
  double edge_fraction = 0.0;  // energy share of m*Tf in the outer 1% of the lambda band
  bool unresolved = false;
};

// H_nu [m H_nu f] (La) or B_mu [m B_mu f] (Laplacian) on mode k
RadialFunction spectral_multiplier(const SpectralParams& p, int k, const std::function<double(double)>& m,
                                   const RadialFunction& f, Calculus c, MultiplierReport* rep = nullptr);
ComplexRadialFunction spectral_multiplier(const SpectralParams& p, int k, const std::function<cplx(double)>& m,
                                          const ComplexRadialFunction& f, Calculus c,
                                          MultiplierReport* rep = nullptr);

void write_csv(std::ostream& os, const RadialFunction& f);
void write_csv(std::ostream& os, const ComplexRadialFunction& f);
std::string grid_json(const RadialGrid& g);

}  // namespace invsq
