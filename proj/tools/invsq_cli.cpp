#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "invsq/errors.hpp"
#include "invsq/harmonics.hpp"
#include "invsq/multiplier_check.hpp"
#include "invsq/params.hpp"
#include "invsq/riesz_kernels.hpp"
#include "invsq/transforms.hpp"
#include "invsq/verify.hpp"
#include "invsq/waveop_kernels.hpp"

using namespace invsq;
using nlohmann::json;

namespace {

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  invalid arguments (bad flag, unknown suite, grid mismatch)\n"
    "  3  domain error (subcritical coupling, pole, resonant order, outside a validity window)\n"
    "  4  verification failure (a verify check missed its threshold)\n"
    "  5  numerical nonconvergence (series or quadrature budget exhausted)\n"
    "Tolerance overrides: --tol-<suite>.<check>=VALUE on verify, or INVSQ_TOL_<SUITE>_<CHECK> in the environment.\n";

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;  // numbers, strings or null

  std::string csv() const {
    std::string s;
    for (size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
    s += "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) {
        if (i) s += ",";
        if (r[i].is_number_integer()) s += std::to_string(r[i].get<long long>());
        else if (r[i].is_number()) s += num(r[i].get<double>());
        else if (r[i].is_string()) s += r[i].get<std::string>();
        else if (r[i].is_boolean()) s += r[i].get<bool>() ? "1" : "0";
      }
      s += "\n";
    }
    return s;
  }
  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o;
      for (size_t i = 0; i < cols.size(); ++i) o[cols[i]] = r[i];
      arr.push_back(o);
    }
    return arr;
  }
};

struct Common {
  int d = 3;
  double a = 0.0;
  std::string out;
  std::string format = "csv";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot open output file " + c.out);
  f << text;
}

void emit_table(const Common& c, const Table& t) { emit(c, c.format == "json" ? t.to_json().dump(2) + "\n" : t.csv()); }

json interval_json(const IndexInterval& iv) {
  if (iv.empty()) return nullptr;
  return json::array({jnum(iv.lo), jnum(iv.hi)});
}

std::vector<int> k_range(int k, int k_max) {
  std::vector<int> ks;
  if (k_max >= 0)
    for (int i = 0; i <= k_max; ++i) ks.push_back(i);
  else
    ks.push_back(k);
  return ks;
}

int cmd_params(const Common& c, int alpha_points) {
  SpectralParams p = make_params(c.d, c.a);
  json j;
  j["d"] = p.d;
  j["a"] = p.a;
  j["sigma"] = p.sigma;
  j["nu0"] = p.nu0;
  j["lambda0"] = p.lambda0;
  j["p0"] = jnum(p.p0);
  json iv;
  iv["W"] = interval_json(admissible_p(p, OperatorTag::W));
  iv["WStar"] = interval_json(admissible_p(p, OperatorTag::WStar));
  j["inverse_p"] = iv;
  IndexInterval wa = order_window(p, OperatorTag::Riesz), wb = order_window(p, OperatorTag::RieszInverse);
  j["alpha_window"] = interval_json(wa);
  j["beta_window"] = interval_json(wb);
  json sweep = json::array();
  for (int i = 1; i <= alpha_points; ++i) {
    double al = wa.lo + (wa.hi - wa.lo) * i / (alpha_points + 1.0);
    double be = wb.lo + (wb.hi - wb.lo) * i / (alpha_points + 1.0);
    json e;
    e["alpha"] = al;
    e["beta"] = be;
    auto guarded = [&](OperatorTag op, double o) -> json {
      if (o == 0.0) return nullptr;  // identity; no range to report
      return interval_json(admissible_p(p, op, o));
    };
    e["riesz"] = guarded(OperatorTag::Riesz, al);
    e["riesz_inverse"] = guarded(OperatorTag::RieszInverse, be);
    sweep.push_back(e);
  }
  j["order_sweep"] = sweep;
  emit(c, j.dump(2) + "\n");
  return 0;
}

std::string status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Resonance: return "resonant";
    case ErrorKind::NonConvergence: return "nonconverged";
    case ErrorKind::Pole: return "pole";
    default: return kind_name(e.kind());
  }
}

int cmd_kernel(const Common& c, int k, int k_max, double pexp, const std::vector<double>& ratios, bool oracle,
               double aplus_scale) {
  SpectralParams p = make_params(c.d, c.a);
  if (ratios.empty()) fail(ErrorKind::InvalidArgument, "kernel: empty --ratios");
  KernelOptions ko;
  ko.aplus_scale = aplus_scale;
  Table t{{"k", "r", "s", "ktilde", "oracle", "relgap", "status"}, {}};
  std::vector<double> ss = ratios;
  std::sort(ss.begin(), ss.end());
  for (int kk : k_range(k, k_max))
    for (double s : ss) {
      KernelQuery q{p, kk, pexp, 1.0, s};
      std::vector<json> row{kk, 1.0, s, nullptr, nullptr, nullptr, "ok"};
      try {
        double v = kernel_ktilde(q, ko).value;
        row[3] = v;
        if (oracle) {
          OracleValue o = kernel_quadrature_oracle(q);
          row[4] = o.value;
          row[5] = o.value != 0.0 ? std::abs(v - o.value) / std::abs(o.value) : std::abs(v);
          if (!o.converged) row[6] = "oracle_nonconverged";
        }
      } catch (const Error& e) {
        row[6] = status_of(e);
      }
      t.rows.push_back(row);
    }
  emit_table(c, t);
  return 0;
}

int cmd_riesz(const Common& c, int k, int k_max, const std::vector<double>& alphas, const std::vector<double>& ratios,
              bool oracle, bool inverse) {
  SpectralParams p = make_params(c.d, c.a);
  if (ratios.empty() || alphas.empty()) fail(ErrorKind::InvalidArgument, "riesz: empty --alpha or --ratios");
  RieszDirection dir = inverse ? RieszDirection::Inverse : RieszDirection::Forward;
  Table t{{"k", "alpha", "r", "s", "series", "oracle", "relgap", "status"}, {}};
  std::vector<double> ss = ratios;
  std::sort(ss.begin(), ss.end());
  for (int kk : k_range(k, k_max))
    for (double s : ss)
      for (double al : alphas) {
        std::vector<json> row{kk, al, 1.0, s, nullptr, nullptr, nullptr, "ok"};
        try {
          double v = kernel_riesz(p, kk, al, 1.0, s, dir).value;
          row[4] = v;
          if (oracle) {
            double o = inverse_mellin_oracle(p, kk, al, 1.0 / s, NAN, {}, dir).value;
            row[5] = o;
            row[6] = o != 0.0 ? std::abs(v - o) / std::abs(o) : std::abs(v);
          }
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::Subcritical) throw;
          row[7] = status_of(e);
        }
        t.rows.push_back(row);
      }
  emit_table(c, t);
  return 0;
}

int cmd_transform(const Common& c, const std::string& kind, int k, double r_min, double r_max, int n) {
  SpectralParams p = make_params(c.d, c.a);
  GridPtr g = make_log_grid(r_min, r_max, n, c.d);
  RadialFunction f = sample<double>(g, [k](double r) { return std::pow(r, k) * std::exp(-0.5 * r * r); });
  ModeIndices m = mode_indices(p, k);
  RadialFunction out;
  if (kind == "bessel") out = bessel_transform(m.mu, f, reciprocal_grid(*g));
  else if (kind == "hankel") out = hankel_transform(m.nu, f, reciprocal_grid(*g));
  else if (kind == "W") out = apply_mode_waveop(p, k, f, false);
  else if (kind == "Wstar") out = apply_mode_waveop(p, k, f, true);
  else fail(ErrorKind::InvalidArgument, "transform: --kind must be bessel, hankel, W or Wstar");
  if (c.format == "json") {
    json j;
    j["grid"] = json::parse(grid_json(*out.grid));
    j["kind"] = kind;
    j["k"] = k;
    j["values"] = out.values;
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_csv(os, out);
    emit(c, os.str());
  }
  return 0;
}

json multiplier_sequences(double aplus_unused) {
  (void)aplus_unused;
  json arr = json::array();
  for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}}) {
    SpectralParams p = make_params(d, a);
    const int N = bc_order(d), j_max = 12, K = (2 << j_max) + N + 1;
    std::vector<std::pair<std::string, SequenceSample>> seqs = {{"sin_pi_b", seq_sin_pi_b(p, K)},
                                                                {"riesz_C_0.5", seq_riesz_C(p, 0.5, K)}};
    for (double x : {0.9, 0.95}) {
      std::string sx = num(x);
      seqs.push_back({"T_plus@" + sx, seq_T_plus(p, x, K)});
      seqs.push_back({"T_minus@" + sx, seq_T_minus(p, x, K)});
      seqs.push_back({"T_tilde_plus@" + sx, seq_T_tilde_plus(p, x, K)});
      seqs.push_back({"T_tilde_minus@" + sx, seq_T_tilde_minus(p, x, K)});
    }
    for (const auto& [name, s] : seqs) {
      BCReport r = bc_report(s, N, j_max);
      json e;
      e["sequence"] = name;
      e["d"] = d;
      e["a"] = a;
      e["N"] = N;
      e["sup"] = r.sup;
      e["dyadic"] = r.dyadic;
      e["no_growth"] = r.no_growth();
      arr.push_back(e);
    }
  }
  return arr;
}

int cmd_verify(const Common& c, const std::string& suite, double aplus_scale, const std::vector<std::string>& extras) {
  VerifyOptions opt = verify_options_from_env();
  if (!std::isnan(aplus_scale)) opt.aplus_scale = aplus_scale;
  for (const auto& x : extras) {
    const std::string pre = "--tol-";
    auto eq = x.find('=');
    if (x.rfind(pre, 0) != 0 || eq == std::string::npos)
      fail(ErrorKind::InvalidArgument, "verify: unrecognised argument '" + x + "'");
    std::string name = x.substr(pre.size(), eq - pre.size());
    char* end = nullptr;
    double v = std::strtod(x.c_str() + eq + 1, &end);
    if (*end != '\0') fail(ErrorKind::InvalidArgument, "verify: bad tolerance value in '" + x + "'");
    opt.tol[name] = v;
  }
  auto checks = run_verify(suite, opt);
  json j = json::parse(verify_report_json(suite, checks));
  if (suite == "multiplier" || suite == "all") j["sequences"] = multiplier_sequences(opt.aplus_scale);
  emit(c, j.dump(2) + "\n");
  for (const auto& ch : checks)
    if (!ch.pass) {
      std::cerr << "verify: FAILED";
      for (const auto& f : j["failed"]) std::cerr << " " << f.get<std::string>();
      std::cerr << "\n";
      return exit_code(ErrorKind::Verification);
    }
  return 0;
}

int cmd_dispersive(const Common& c, const std::vector<double>& ts, int n) {
  SpectralParams p = make_params(c.d, c.a);
  if (c.d != 3) fail(ErrorKind::InvalidArgument, "dispersive: only d = 3 is supported");
  DispersiveConfig cfg;
  cfg.n = n;
  auto rows = dispersive_gaussian(p, ts, cfg);
  Table t{{"t", "sup", "scaled", "envelope", "alias_fraction", "aliased"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.t, r.sup, r.scaled, r.envelope, r.alias_fraction, r.aliased});
    if (r.aliased) std::cerr << "warning: phase not resolved at t = " << num(r.t) << "\n";
  }
  emit_table(c, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invsq: kernels and transforms for the inverse-square potential"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  Common c;
  auto common = [&](CLI::App* s, bool with_format) {
    s->add_option("--d", c.d, "dimension")->check(CLI::Range(2, 64));
    s->add_option("--a", c.a, "coupling constant");
    s->add_option("--out", c.out, "write output to this file instead of stdout");
    if (with_format) s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  int k = 0, k_max = -1, n = 4096, alpha_points = 9;
  double pexp = 2.0, r_min = 1e-6, r_max = 1e6, aplus = NAN;
  bool oracle = false, inverse = false;
  std::vector<double> ratios = {0.3, 0.7, 1.5, 3.0}, alphas = {0.5}, ts = {1, 2, 5, 10, 20, 50};
  std::string kind = "W", suite = "all";

  auto* sp = app.add_subcommand("params", "spectral parameters and admissible exponent ranges (JSON)");
  common(sp, false);
  sp->add_option("--alpha-points", alpha_points, "points in the order sweep")->check(CLI::Range(1, 1000));

  auto* sk = app.add_subcommand("kernel", "modified wave-operator kernel rows");
  common(sk, true);
  sk->add_option("--k", k, "mode degree")->check(CLI::NonNegativeNumber);
  sk->add_option("--k-max", k_max, "sweep k = 0..k-max");
  sk->add_option("--p", pexp, "Lebesgue exponent");
  sk->add_option("--ratios", ratios, "values of s (r = 1)")->delimiter(',');
  sk->add_flag("--oracle", oracle, "also evaluate the damped-quadrature oracle");
  sk->add_option("--canary-aplus-scale", aplus, "test hook: scale every A+ coefficient");

  auto* sr = app.add_subcommand("riesz", "Riesz-type kernel rows");
  common(sr, true);
  sr->add_option("--k", k, "mode degree")->check(CLI::NonNegativeNumber);
  sr->add_option("--k-max", k_max, "sweep k = 0..k-max");
  sr->add_option("--alpha", alphas, "order(s)")->delimiter(',');
  sr->add_option("--ratios", ratios, "values of s (r = 1)")->delimiter(',');
  sr->add_flag("--oracle", oracle, "also evaluate the inverse-Mellin oracle");
  sr->add_flag("--inverse", inverse, "use the inverse operator (order read as beta)");

  auto* st = app.add_subcommand("transform", "apply a transform to r^k exp(-r^2/2) on one mode");
  common(st, true);
  st->add_option("--kind", kind, "bessel, hankel, W or Wstar");
  st->add_option("--k", k, "mode degree")->check(CLI::NonNegativeNumber);
  st->add_option("--rmin", r_min, "grid start");
  st->add_option("--rmax", r_max, "grid end");
  st->add_option("--n", n, "grid points")->check(CLI::Range(16, 1 << 22));

  auto* sv = app.add_subcommand("verify", "run property suites; JSON report, exit 4 on failure");
  common(sv, false);
  sv->add_option("suite", suite, "specfun, transforms, kernels, riesz, multiplier, harmonics or all");
  sv->add_option("--canary-aplus-scale", aplus, "test hook: scale every A+ coefficient");
  sv->allow_extras();

  auto* sd = app.add_subcommand("dispersive", "sup-norm decay of exp(-it La) on radial Gaussian data");
  common(sd, true);
  sd->add_option("--t", ts, "times")->delimiter(',');
  sd->add_option("--n", n, "radial grid points")->check(CLI::Range(1024, 1 << 22));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorKind::InvalidArgument);
  }

  try {
    if (sp->parsed()) return cmd_params(c, alpha_points);
    if (sk->parsed()) return cmd_kernel(c, k, k_max, pexp, ratios, oracle, std::isnan(aplus) ? 1.0 : aplus);
    if (sr->parsed()) return cmd_riesz(c, k, k_max, alphas, ratios, oracle, inverse);
    if (st->parsed()) return cmd_transform(c, kind, k, r_min, r_max, n);
    if (sv->parsed()) return cmd_verify(c, suite, aplus, sv->remaining());
    if (sd->parsed()) {
      if (n == 4096) n = DispersiveConfig{}.n;
      return cmd_dispersive(c, ts, n);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
