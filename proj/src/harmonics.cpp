#include "invsq/harmonics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invsq/errors.hpp"
#include "invsq/specfun.hpp"

namespace invsq {

namespace {

constexpr double kPi = std::numbers::pi;

void check_d(int d) {
  if (d != 2 && d != 3) fail(ErrorKind::InvalidArgument, "angular synthesis is implemented for d = 2, 3 only");
}

// normalized associated Legendre Pbar_k^m(cos theta), 0 <= m <= k
double legendre_bar(int k, int m, double theta) {
  const double x = std::cos(theta), sx = std::sin(theta);
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int i = 1; i <= m; ++i) pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * sx;
  if (k == m) return pmm;
  double p1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  if (k == m + 1) return p1;
  double p0 = pmm;
  for (int j = m + 2; j <= k; ++j) {
    double a = std::sqrt((4.0 * j * j - 1.0) / (double(j) * j - double(m) * m));
    double b = std::sqrt((double(j - 1) * (j - 1) - double(m) * m) / (4.0 * (j - 1) * (j - 1) - 1.0));
    double p2 = a * (x * p1 - b * p0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<ModeKey> mode_keys(int d, int k_max) {
  std::vector<ModeKey> keys;
  for (int k = 0; k <= k_max; ++k)
    for (int l = 1; l <= harmonic_count(d, k); ++l) keys.push_back({k, l});
  return keys;
}

void check_resolved(const AngularGrid& g, int k_max) {
  bool ok = g.d == 2 ? g.n_theta >= 2 * k_max + 2 : (g.n_theta >= k_max + 1 && g.n_phi >= 2 * k_max + 1);
  if (!ok) fail(ErrorKind::Domain, "angular grid under-resolved for k_max = " + std::to_string(k_max));
}

// Y[a * n_modes + j]
std::vector<double> harmonic_table(const AngularGrid& g, const std::vector<ModeKey>& keys) {
  std::vector<double> Y(g.size() * keys.size());
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t j = 0; j < keys.size(); ++j) Y[a * keys.size() + j] = real_harmonic(g.d, keys[j].k, keys[j].l, g.theta[a], g.phi[a]);
  return Y;
}

}  // namespace

AngularPtr make_angular_grid(int d, int n_theta, int n_phi) {
  check_d(d);
  if (n_theta < 1 || n_phi < 1) fail(ErrorKind::InvalidArgument, "make_angular_grid: counts must be positive");
  auto g = std::make_shared<AngularGrid>();
  g->d = d;
  g->n_theta = n_theta;
  if (d == 2) {
    g->n_phi = 1;
    for (int j = 0; j < n_theta; ++j) {
      g->theta.push_back(2.0 * kPi * j / n_theta);
      g->phi.push_back(0.0);
      g->w.push_back(2.0 * kPi / n_theta);
    }
    return g;
  }
  g->n_phi = n_phi;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      g->theta.push_back(std::acos(x[i]));
      g->phi.push_back(2.0 * kPi * j / n_phi);
      g->w.push_back(w[i] * 2.0 * kPi / n_phi);
    }
  return g;
}

AngularPtr angular_grid_for(int d, int k_max) {
  return d == 2 ? make_angular_grid(2, 2 * k_max + 2) : make_angular_grid(3, k_max + 1, 2 * k_max + 2);
}

int harmonic_count(int d, int k) {
  check_d(d);
  if (k < 0) fail(ErrorKind::InvalidArgument, "harmonic_count: k must be >= 0");
  if (d == 2) return k == 0 ? 1 : 2;
  return 2 * k + 1;
}

double real_harmonic(int d, int k, int l, double theta, double phi) {
  if (l < 1 || l > harmonic_count(d, k)) fail(ErrorKind::InvalidArgument, "real_harmonic: l out of range");
  if (d == 2) {
    if (k == 0) return 1.0 / std::sqrt(2.0 * kPi);
    return (l == 1 ? std::cos(k * theta) : std::sin(k * theta)) / std::sqrt(kPi);
  }
  int m = l - k - 1;
  if (m == 0) return legendre_bar(k, 0, theta);
  double p = std::sqrt(2.0) * legendre_bar(k, std::abs(m), theta);
  return m > 0 ? p * std::cos(m * phi) : p * std::sin(-m * phi);
}

Field make_field(AngularPtr ang, GridPtr radial, const std::function<cplx(double, double, double)>& f) {
  Field out(ang, radial);
  for (size_t a = 0; a < ang->size(); ++a)
    for (size_t i = 0; i < radial->size(); ++i) out.at(a, i) = f(radial->r[i], ang->theta[a], ang->phi[a]);
  return out;
}

double field_norm(const Field& f) {
  double s = 0;
  for (size_t a = 0; a < f.ang->size(); ++a)
    for (size_t i = 0; i < f.radial->size(); ++i) s += f.ang->w[a] * f.radial->w[i] * std::norm(f.at(a, i));
  return std::sqrt(s);
}

double field_distance(const Field& f, const Field& g) {
  if (f.values.size() != g.values.size()) fail(ErrorKind::GridMismatch, "field_distance: shapes differ");
  Field d = f;
  for (size_t j = 0; j < d.values.size(); ++j) d.values[j] -= g.values[j];
  return field_norm(d);
}

const ComplexRadialFunction& ModeExpansion::get(int k, int l) const {
  for (size_t j = 0; j < keys.size(); ++j)
    if (keys[j].k == k && keys[j].l == l) return modes[j];
  fail(ErrorKind::InvalidArgument, "ModeExpansion: no mode (" + std::to_string(k) + "," + std::to_string(l) + ")");
}

double ModeExpansion::norm() const {
  double s = 0;
  for (const auto& m : modes) {
    double n = invsq::norm(m);
    s += n * n;
  }
  return std::sqrt(s);
}

ModeExpansion analyze(const Field& f, int k_max) {
  check_resolved(*f.ang, k_max);
  ModeExpansion e;
  e.d = f.ang->d;
  e.k_max = k_max;
  e.keys = mode_keys(e.d, k_max);
  const size_t nm = e.keys.size(), nr = f.radial->size(), na = f.ang->size();
  std::vector<double> Y = harmonic_table(*f.ang, e.keys);
  e.modes.assign(nm, ComplexRadialFunction(f.radial));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(nr); ++i)
    for (size_t a = 0; a < na; ++a) {
      const cplx v = f.at(a, i) * f.ang->w[a];
      for (size_t j = 0; j < nm; ++j) e.modes[j].values[i] += Y[a * nm + j] * v;
    }
  return e;
}

Field synthesize(const ModeExpansion& e, AngularPtr ang) {
  check_resolved(*ang, e.k_max);
  if (ang->d != e.d) fail(ErrorKind::GridMismatch, "synthesize: dimension mismatch");
  if (e.modes.empty()) fail(ErrorKind::InvalidArgument, "synthesize: empty expansion");
  GridPtr radial = e.modes.front().grid;
  Field out(ang, radial);
  const size_t nm = e.keys.size(), nr = radial->size(), na = ang->size();
  std::vector<double> Y = harmonic_table(*ang, e.keys);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(nr); ++i)
    for (size_t a = 0; a < na; ++a) {
      cplx s = 0;
      for (size_t j = 0; j < nm; ++j) s += Y[a * nm + j] * e.modes[j].values[i];
      out.at(a, i) = s;
    }
  return out;
}

Field apply_W(const SpectralParams& p, const Field& f, bool adjoint, int k_max) {
  if (f.radial->d != p.d || f.ang->d != p.d) fail(ErrorKind::GridMismatch, "apply_W: field dimension differs from d");
  ModeExpansion e = analyze(f, k_max);
  for (size_t j = 0; j < e.keys.size(); ++j) e.modes[j] = apply_mode_waveop(p, e.keys[j].k, e.modes[j], adjoint);
  return synthesize(e, f.ang);
}

Field apply_function_of_La(const SpectralParams& p, const std::function<cplx(double)>& m, const Field& f,
                           CalculusPath path, int k_max) {
  if (f.radial->d != p.d || f.ang->d != p.d)
    fail(ErrorKind::GridMismatch, "apply_function_of_La: field dimension differs from d");
  ModeExpansion e = analyze(f, k_max);
  for (size_t j = 0; j < e.keys.size(); ++j) {
    const int k = e.keys[j].k;
    if (path == CalculusPath::Direct) {
      e.modes[j] = spectral_multiplier(p, k, m, e.modes[j], Calculus::La);
    } else {
      auto g = apply_mode_waveop(p, k, e.modes[j], true);
      g = spectral_multiplier(p, k, m, g, Calculus::Laplacian);
      e.modes[j] = apply_mode_waveop(p, k, g, false);
    }
  }
  return synthesize(e, f.ang);
}

std::vector<DispersiveRow> dispersive_experiment(const SpectralParams& p, const RadialFunction& f,
                                                 const std::vector<double>& t_list, double sup_r_max) {
  if (f.grid->d != p.d) fail(ErrorKind::GridMismatch, "dispersive_experiment: grid d differs from params d");
  const RadialGrid& g = *f.grid;
  double f_sup = 0;
  for (double v : f.values) f_sup = std::max(f_sup, std::abs(v));
  ComplexRadialFunction fc = to_complex(f);
  GridPtr lam = reciprocal_grid(g);
  std::vector<DispersiveRow> rows;
  for (double t : t_list) {
    if (!(t >= 0.0)) fail(ErrorKind::InvalidArgument, "dispersive_experiment: t must be >= 0");
    DispersiveRow row;
    row.t = t;
    row.envelope = std::pow(1.0 + t * t, -0.25 * p.d) * f_sup;
    // the phase t lam^2 advances by 2 t lam^2 h between neighbouring lambda nodes; keep that below pi
    row.lambda_res = t > 0 ? std::sqrt(kPi / (2.0 * t * g.h)) : std::numeric_limits<double>::infinity();
    if (t == 0.0) {
      row.sup = f_sup;
    } else {
      ComplexRadialFunction u = spectral_multiplier(
          p, 0, std::function<cplx(double)>([t](double l) { return std::exp(cplx(0.0, -t * l * l)); }), fc,
          Calculus::La);
      const double r_lo = 2.0 * kPi / row.lambda_res;
      for (size_t i = 0; i < g.size(); ++i)
        if (g.r[i] >= r_lo && g.r[i] <= sup_r_max) row.sup = std::max(row.sup, std::abs(u.values[i]));
      // spectral energy beyond lambda_res would be aliased
      ComplexRadialFunction spec = hankel_transform(mode_indices(p, 0).nu, fc, lam);
      double tot = 0, high = 0;
      for (size_t i = 0; i < lam->size(); ++i) {
        double e = lam->w[i] * std::norm(spec.values[i]);
        tot += e;
        if (lam->r[i] > row.lambda_res) high += e;
      }
      row.alias_fraction = tot > 0 ? high / tot : 0.0;
      row.aliased = row.alias_fraction > 1e-6;
    }
    row.scaled = std::pow(t, 0.5 * p.d) * row.sup;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DispersiveRow> dispersive_gaussian(const SpectralParams& p, const std::vector<double>& t_list,
                                               const DispersiveConfig& cfg) {
  GridPtr g = make_log_grid(cfg.r_min, cfg.r_max, cfg.n, p.d);
  RadialFunction f = sample<double>(g, [](double r) { return std::exp(-0.25 * r * r); });
  return dispersive_experiment(p, f, t_list, cfg.sup_r_max);
}

std::vector<double> sobolev_ratio_check(const SpectralParams& p, double alpha, int count) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "sobolev_ratio_check: count must be positive");
  GridPtr g = make_log_grid(1e-5, 1e5, 8192, p.d);
  GridPtr lam = reciprocal_grid(*g);
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    const int k = j % 3;
    const double c = 0.5 + 2.5 * j / std::max(1, count - 1), w = 0.3 + 1.2 * ((j * 7) % count) / double(count);
    RadialFunction f = sample<double>(g, [&](double r) { return std::pow(r, k) * std::exp(-(r - c) * (r - c) / (w * w)); });
    ModeIndices m = mode_indices(p, k);
    RadialFunction bf = bessel_transform(m.mu, f, lam), hf = hankel_transform(m.nu, f, lam);
    for (size_t i = 0; i < lam->size(); ++i) {
      double s = std::pow(lam->r[i], alpha);
      bf.values[i] *= s;
      hf.values[i] *= s;
    }
    out.push_back(norm(bf) / norm(hf));
  }
  return out;
}

}  // namespace invsq
