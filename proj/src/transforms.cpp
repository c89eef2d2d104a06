#include "invsq/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// fftw planning is not thread safe; execution on fresh arrays is
fftw_plan forward_plan(int n) {
  static std::map<int, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(fftw_mutex());
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  fftw_complex* a = fftw_alloc_complex(n);
  fftw_complex* b = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_free(a);
  fftw_free(b);
  plans.emplace(n, p);
  return p;
}

struct FftBuffer {
  explicit FftBuffer(int n) : n(n), in(fftw_alloc_complex(n)), out(fftw_alloc_complex(n)) {}
  ~FftBuffer() {
    fftw_free(in);
    fftw_free(out);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  int n;
  fftw_complex* in;
  fftw_complex* out;
};

using PhaseKey = std::tuple<double, int, double, double>;

// u_m = exp(i [w ln 2 + 2 Im lnG((nu+1+iw)/2) - w ln(lam0 r0)]),  w = 2 pi m/(n h)
std::shared_ptr<const std::vector<cplx>> phase_table(double order, int n, double h, double l0r0) {
  static std::map<PhaseKey, std::shared_ptr<const std::vector<cplx>>> cache;
  static std::mutex mtx;
  PhaseKey key{order, n, h, l0r0};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto u = std::make_shared<std::vector<cplx>>(n);
  const double ll = std::log(l0r0), ln2 = std::numbers::ln2;
  for (int i = 0; i < n; ++i) {
    int m = (i < (n + 1) / 2) ? i : i - n;
    double w = 2.0 * kPi * m / (n * h);
    double ph = w * ln2 + 2.0 * ln_gamma(cplx(0.5 * (order + 1.0), 0.5 * w)).imag() - w * ll;
    (*u)[i] = std::polar(1.0, ph);
  }
  if (n % 2 == 0) {
    double re = (*u)[n / 2].real();
    (*u)[n / 2] = re < 0.0 ? -1.0 : 1.0;
  }
  std::lock_guard<std::mutex> lock(mtx);
  if (cache.size() > 256) cache.clear();
  cache.emplace(key, u);
  return u;
}

void fftlog(double order, const RadialGrid& in, const RadialGrid& out, const cplx* f, cplx* g) {
  const int n = int(in.size());
  const double half_d = 0.5 * in.d;
  fftw_plan plan = forward_plan(n);
  auto u = phase_table(order, n, in.h, in.r.front() * out.r.front());
  FftBuffer buf(n);
  for (int i = 0; i < n; ++i) {
    cplx v = std::pow(in.r[i], half_d) * f[i];
    buf.in[i][0] = v.real();
    buf.in[i][1] = v.imag();
  }
  fftw_execute_dft(plan, buf.in, buf.out);
  for (int i = 0; i < n; ++i) {
    cplx v = cplx(buf.out[i][0], buf.out[i][1]) * (*u)[i] / double(n);
    buf.in[i][0] = v.real();
    buf.in[i][1] = v.imag();
  }
  fftw_execute_dft(plan, buf.in, buf.out);
  for (int i = 0; i < n; ++i) g[i] = cplx(buf.out[i][0], buf.out[i][1]) / std::pow(out.r[i], half_d);
}

template <class T>
void check_pair(const RadialFunctionT<T>& f, const GridPtr& out) {
  if (!f.grid || !out) fail(ErrorKind::InvalidArgument, "transform: missing grid");
  if (f.grid->d != out->d) fail(ErrorKind::GridMismatch, "transform: input and output grids differ in d");
  for (const T& v : f.values)
    if (!std::isfinite(std::abs(v))) fail(ErrorKind::Domain, "transform: non-finite input");
}

template <class T>
RadialFunctionT<T> transform(double order, const RadialFunctionT<T>& f, GridPtr out) {
  check_pair(f, out);
  if (!grids_reciprocal(*f.grid, *out)) return direct_transform(order, f, out);
  std::vector<cplx> in(f.values.begin(), f.values.end()), res(out->size());
  fftlog(order, *f.grid, *out, in.data(), res.data());
  RadialFunctionT<T> g(out);
  for (size_t i = 0; i < res.size(); ++i) {
    if constexpr (std::is_same_v<T, double>) g.values[i] = res[i].real();
    else g.values[i] = res[i];
  }
  return g;
}

}  // namespace

GridPtr make_log_grid(double r_min, double r_max, int n, int d) {
  if (n < 16) fail(ErrorKind::InvalidArgument, "make_log_grid: n must be >= 16");
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    fail(ErrorKind::InvalidArgument, "make_log_grid: need 0 < r_min < r_max");
  if (d < 1) fail(ErrorKind::InvalidArgument, "make_log_grid: d must be positive");
  auto g = std::make_shared<RadialGrid>();
  g->d = d;
  g->r_min = r_min;
  g->r_max = r_max;
  g->h = std::log(r_max / r_min) / (n - 1);
  g->r.resize(n);
  g->w.resize(n);
  for (int i = 0; i < n; ++i) {
    g->r[i] = r_min * std::exp(g->h * i);
    g->w[i] = g->h * std::pow(g->r[i], d);
  }
  g->r.back() = r_max;
  g->w.front() *= 0.5;
  g->w.back() *= 0.5;
  return g;
}

GridPtr reciprocal_grid(const RadialGrid& g) {
  return make_log_grid(1.0 / g.r_max, 1.0 / g.r_min, int(g.size()), g.d);
}

bool grids_reciprocal(const RadialGrid& a, const RadialGrid& b) {
  if (a.size() != b.size() || a.d != b.d) return false;
  if (std::abs(a.h - b.h) > 1e-12 * a.h) return false;
  return std::abs(a.r_min * b.r_max - 1.0) < 1e-12 && std::abs(a.r_max * b.r_min - 1.0) < 1e-12;
}

template <class T>
RadialFunctionT<T>::RadialFunctionT(GridPtr g, std::vector<T> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid || values.size() != grid->size()) fail(ErrorKind::GridMismatch, "radial function: length != grid size");
}

template <class T>
double norm(const RadialFunctionT<T>& f) {
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += f.grid->w[i] * std::norm(f.values[i]);
  return std::sqrt(s);
}

template <class T>
double distance(const RadialFunctionT<T>& f, const RadialFunctionT<T>& g) {
  if (f.size() != g.size()) fail(ErrorKind::GridMismatch, "distance: sizes differ");
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += f.grid->w[i] * std::norm(f.values[i] - g.values[i]);
  return std::sqrt(s);
}

template <class T>
double integrate(const RadialFunctionT<T>& f) {
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += f.grid->w[i] * std::real(f.values[i]);
  return s;
}

ComplexRadialFunction to_complex(const RadialFunction& f) {
  return ComplexRadialFunction(f.grid, std::vector<cplx>(f.values.begin(), f.values.end()));
}

RadialFunction real_part(const ComplexRadialFunction& f) {
  RadialFunction out(f.grid);
  for (size_t i = 0; i < f.size(); ++i) out.values[i] = f.values[i].real();
  return out;
}

template <class T>
RadialFunctionT<T> direct_transform(double order, const RadialFunctionT<T>& f, GridPtr out) {
  check_pair(f, out);
  const RadialGrid& in = *f.grid;
  const double lam0 = 0.5 * (in.d - 2);
  RadialFunctionT<T> g(out);
  const long m = long(out->size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < m; ++j) {
    double lam = out->r[j];
    T acc = T(0);
    for (size_t i = 0; i < in.size(); ++i) {
      double x = lam * in.r[i];
      acc += in.w[i] * f.values[i] * (std::pow(x, -lam0) * bessel_j(order, x));
    }
    g.values[j] = acc;
  }
  return g;
}

template <class T>
RadialFunctionT<T> bessel_transform(double order, const RadialFunctionT<T>& f, GridPtr out) {
  if (!(order >= -0.5)) fail(ErrorKind::Domain, "bessel_transform: order below -1/2");
  return transform(order, f, std::move(out));
}

template <class T>
RadialFunctionT<T> hankel_transform(double order, const RadialFunctionT<T>& f, GridPtr out) {
  if (!(order >= 0.0)) fail(ErrorKind::Domain, "hankel_transform: order must be >= 0");
  return transform(order, f, std::move(out));
}

template <class T>
RadialFunctionT<T> apply_mode_waveop(const SpectralParams& p, int k, const RadialFunctionT<T>& f, bool adjoint) {
  if (!f.grid) fail(ErrorKind::InvalidArgument, "apply_mode_waveop: missing grid");
  if (f.grid->d != p.d) fail(ErrorKind::GridMismatch, "apply_mode_waveop: grid d differs from params d");
  ModeIndices m = mode_indices(p, k);
  GridPtr lam = reciprocal_grid(*f.grid);
  if (adjoint) return bessel_transform(m.mu, hankel_transform(m.nu, f, lam), f.grid);
  return hankel_transform(m.nu, bessel_transform(m.mu, f, lam), f.grid);
}

namespace {

template <class T, class M>
RadialFunctionT<T> multiplier_impl(const SpectralParams& p, int k, const M& m, const RadialFunctionT<T>& f,
                                   Calculus c, MultiplierReport* rep) {
  if (!f.grid) fail(ErrorKind::InvalidArgument, "spectral_multiplier: missing grid");
  if (f.grid->d != p.d) fail(ErrorKind::GridMismatch, "spectral_multiplier: grid d differs from params d");
  ModeIndices mi = mode_indices(p, k);
  const double order = c == Calculus::La ? mi.nu : mi.mu;
  GridPtr lam = reciprocal_grid(*f.grid);
  RadialFunctionT<T> spec = transform(order, f, lam);
  double total = 0.0, edge = 0.0;
  const size_t n = spec.size(), band = std::max<size_t>(1, n / 100);
  for (size_t i = 0; i < n; ++i) {
    spec.values[i] *= m(lam->r[i]);
    double e = lam->w[i] * std::norm(spec.values[i]);
    total += e;
    if (i < band || i >= n - band) edge += e;
  }
  if (rep) {
    rep->edge_fraction = total > 0.0 ? edge / total : 0.0;
    rep->unresolved = rep->edge_fraction > 1e-10;
  }
  return transform(order, spec, f.grid);
}

}  // namespace

RadialFunction spectral_multiplier(const SpectralParams& p, int k, const std::function<double(double)>& m,
                                   const RadialFunction& f, Calculus c, MultiplierReport* rep) {
  return multiplier_impl(p, k, m, f, c, rep);
}

ComplexRadialFunction spectral_multiplier(const SpectralParams& p, int k, const std::function<cplx(double)>& m,
                                          const ComplexRadialFunction& f, Calculus c, MultiplierReport* rep) {
  return multiplier_impl(p, k, m, f, c, rep);
}

void write_csv(std::ostream& os, const RadialFunction& f) {
  char buf[96];
  os << "r,value\n";
  for (size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid->r[i], f.values[i]);
    os << buf;
  }
}

void write_csv(std::ostream& os, const ComplexRadialFunction& f) {
  char buf[128];
  os << "r,re,im\n";
  for (size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid->r[i], f.values[i].real(), f.values[i].imag());
    os << buf;
  }
}

std::string grid_json(const RadialGrid& g) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "{\"d\":%d,\"n\":%zu,\"r_max\":%.17g,\"r_min\":%.17g}", g.d, g.size(), g.r_max,
                g.r_min);
  return buf;
}

template struct RadialFunctionT<double>;
template struct RadialFunctionT<cplx>;
template double norm(const RadialFunction&);
template double norm(const ComplexRadialFunction&);
template double distance(const RadialFunction&, const RadialFunction&);
template double distance(const ComplexRadialFunction&, const ComplexRadialFunction&);
template double integrate(const RadialFunction&);
template double integrate(const ComplexRadialFunction&);
template RadialFunction bessel_transform(double, const RadialFunction&, GridPtr);
template ComplexRadialFunction bessel_transform(double, const ComplexRadialFunction&, GridPtr);
template RadialFunction hankel_transform(double, const RadialFunction&, GridPtr);
template ComplexRadialFunction hankel_transform(double, const ComplexRadialFunction&, GridPtr);
template RadialFunction direct_transform(double, const RadialFunction&, GridPtr);
template ComplexRadialFunction direct_transform(double, const ComplexRadialFunction&, GridPtr);
template RadialFunction apply_mode_waveop(const SpectralParams&, int, const RadialFunction&, bool);
template ComplexRadialFunction apply_mode_waveop(const SpectralParams&, int, const ComplexRadialFunction&, bool);

}  // namespace invsq
