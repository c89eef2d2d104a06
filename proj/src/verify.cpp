#include "invsq/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <numbers>

#include "invsq/errors.hpp"
#include "invsq/harmonics.hpp"
#include "invsq/multiplier_check.hpp"
#include "invsq/riesz_kernels.hpp"
#include "invsq/specfun.hpp"
#include "invsq/transforms.hpp"
#include "invsq/waveop_kernels.hpp"

namespace invsq {

namespace {

std::string env_key(const std::string& name) {
  std::string k = "INVSQ_TOL_";
  for (char c : name) k += c == '.' ? '_' : char(std::toupper(static_cast<unsigned char>(c)));
  return k;
}

struct Runner {
  std::string suite;
  const VerifyOptions& opt;
  std::vector<CheckResult>& out;

  // pass when measured <= threshold; a thrown error counts as a failure with measured = inf
  void check(const std::string& name, double threshold, const std::function<double()>& f) {
    CheckResult r;
    r.suite = suite;
    r.name = suite + "." + name;
    auto it = opt.tol.find(r.name);
    r.threshold = it != opt.tol.end() ? it->second : threshold;
    try {
      r.measured = f();
    } catch (const Error&) {
      r.measured = std::numeric_limits<double>::infinity();
    }
    r.pass = std::isfinite(r.measured) && r.measured <= r.threshold;
    out.push_back(r);
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void suite_specfun(Runner& R) {
  const std::vector<double> zs = {0.3, 1.7, 4.2, 9.5, 18.0, 33.0};
  R.check("wronskian", 1e-10, [&] {
    return std::max(verify_bessel_identities(0.5, 1.5, zs).wronskian, verify_bessel_identities(2.3, 0.7, zs).wronskian);
  });
  R.check("indefinite_integral", 1e-8, [&] {
    auto a = verify_bessel_identities(0.5, 1.5, {0.5, 2.0, 7.0});
    auto b = verify_bessel_identities(2.3, 0.7, {0.5, 2.0, 7.0});
    return std::max({a.indefinite_integral, a.indefinite_integral_jy, b.indefinite_integral, b.indefinite_integral_jy});
  });
  R.check("hyp2f1_near_one", 1e-6, [] {
    double m = 0;
    for (auto [a, b, c] : {std::tuple{1.6, 0.9, 2.1}, {0.5, 0.5, 0.75}, {1.2, 1.4, 2.0}})
      m = std::max(m, hyp2f1_near_one(a, b, c).residual);
    return m;
  });
  R.check("lngamma_recurrence", 1e-13, [] {
    double m = 0;
    for (double x : {0.01, 0.3, 0.99, 1.5, 2.7, 9.9, 10.1, 55.5, 1e3})
      m = std::max(m, std::abs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)) / std::max(1.0, std::abs(ln_gamma(x + 1))));
    return m;
  });
  R.check("weber_schafheitlin", 1e-6, [] {
    double m = 0;
    for (auto [mu, nu, s] : {std::tuple{0.5, 1.5, 0.4}, {1.5, 0.5, 2.5}, {2.0, 1.2, 0.7}}) {
      DampedLimit dl = damped_bessel_product_limit(mu, nu, s, 1.0);
      m = std::max(m, std::abs(dl.value - wss_integral(mu, nu, s, 1.0)));
    }
    return m;
  });
}

void suite_transforms(Runner& R) {
  auto g = make_log_grid(1e-6, 1e6, 16384, 3);
  auto lam = reciprocal_grid(*g);
  R.check("plancherel", 1e-6, [&] {
    double m = 0;
    for (int k = 0; k <= 4; ++k) {
      auto f = sample<double>(g, [k](double r) { return std::pow(r, k) * std::exp(-0.5 * r * r); });
      double mu = 0.5 + k, nu = std::sqrt(mu * mu + 1.0);
      m = std::max({m, rel(norm(bessel_transform(mu, f, lam)), norm(f)), rel(norm(hankel_transform(nu, f, lam)), norm(f))});
    }
    return m;
  });
  R.check("involution", 1e-5, [&] {
    double m = 0;
    for (int k = 0; k <= 4; ++k) {
      auto f = sample<double>(g, [k](double r) { return std::pow(r, k) * std::exp(-0.5 * r * r); });
      double nu = std::sqrt((0.5 + k) * (0.5 + k) + 1.0);
      m = std::max(m, distance(hankel_transform(nu, hankel_transform(nu, f, lam), g), f) / norm(f));
    }
    return m;
  });
  R.check("gaussian_eigenfunction", 1e-8, [&] {
    double m = 0;
    for (int k = 0; k <= 4; ++k) {
      auto f = sample<double>(g, [k](double r) { return std::pow(r, k) * std::exp(-0.5 * r * r); });
      auto b = bessel_transform(0.5 + k, f, lam);
      for (size_t i = 0; i < lam->size(); ++i) {
        double l = lam->r[i];
        if (l > 1e-2 && l < 20) m = std::max(m, std::abs(b.values[i] - std::pow(l, k) * std::exp(-0.5 * l * l)));
      }
    }
    return m;
  });
}

void suite_kernels(Runner& R) {
  KernelOptions ko;
  ko.aplus_scale = R.opt.aplus_scale;
  const SpectralParams P = make_params(3, 1.0);
  R.check("oracle_equivalence", 1e-5, [&] {
    double m = 0;
    for (int k = 0; k <= 2; ++k)
      for (double x : {0.3, 0.7, 1.5, 3.0}) {
        KernelQuery q{P, k, 2.0, 1.0, x};
        OracleValue o = kernel_quadrature_oracle(q);
        if (!o.converged) continue;
        m = std::max(m, rel(kernel_ktilde(q, ko).value, o.value));
      }
    return m;
  });
  R.check("diagonal_limit", 1e-4, [&] {
    double m = 0;
    for (int k : {0, 1, 3})
      for (Side s : {Side::Below, Side::Above}) m = std::max(m, diagonal_limit(P, k, s, ko).gap);
    return m;
  });
  R.check("coefficient_asymptotics", 4.0, [&] {
    double m = 0;
    for (int k : {0, 8, 64})
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        double e3 = std::abs(coeff_E(b, k, 1000, P)) * 1001.0 * 1001.0;
        double e4 = std::abs(coeff_E(b, k, 10000, P)) * 10001.0 * 10001.0;
        m = std::max(m, e4 / std::max(e3, 1e-300));
      }
    return m;
  });
  R.check("admissibility_consistency", 0.0, [] {
    int bad = 0;
    for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}}) {
      SpectralParams p = make_params(d, a);
      IndexInterval w = admissible_p(p, OperatorTag::W);
      for (int i = 0; i < 100; ++i) {
        double ip = (i + 0.5) / 100.0;
        if (exponent_predicate(p, 1.0 / ip) != w.contains(ip)) ++bad;
      }
    }
    return double(bad);
  });
  R.check("a0_vanish", 1e-12, [] {
    SpectralParams p = make_params(3, 0.0);
    double m = 0;
    for (int k = 0; k <= 3; ++k)
      for (double x : {0.3, 0.7, 1.5, 3.0}) m = std::max(m, std::abs(kernel_ktilde({p, k, 2.0, 1.0, x}).value));
    return m;
  });
}

void suite_riesz(Runner& R) {
  const SpectralParams P = make_params(3, 1.0);
  R.check("oracle_equivalence", 1e-5, [&] {
    double m = 0;
    for (int k : {0, 1})
      for (double al : {0.7, 1.3})
        for (double rho : {0.4, 2.5})
          m = std::max(m, rel(kernel_riesz(P, k, al, rho, 1.0).value, inverse_mellin_oracle(P, k, al, rho, NAN).value));
    return m;
  });
  R.check("even_continuity", 1e-3, [&] {
    double m = 0;
    for (int k = 0; k <= 3; ++k)
      m = std::max(m, std::abs(kernel_riesz(P, k, 2.0 - 1e-4, 1.0, 0.5).value - kernel_even(P, k, 1, 1.0, 0.5)));
    return m;
  });
  R.check("diagonal_limit", 1e-4, [&] {
    double m = 0;
    for (int k : {0, 2})
      for (Side s : {Side::Below, Side::Above}) m = std::max(m, riesz_diagonal_limit(P, k, 0.7, s).gap);
    return m;
  });
  R.check("foxh_invariants", 1e-14, [] {
    double m = 0;
    for (auto [d, a] : {std::pair{3, 1.0}, {3, -0.2}, {4, -1.0}, {2, 4.0}}) {
      SpectralParams p = make_params(d, a);
      for (int k = 0; k <= 4; ++k)
        for (double al : {-0.5, 0.5, 1.3}) {
          FoxHInstance h = make_foxh(p, k, al);
          m = std::max({m, std::abs(h.Lambda), std::abs(h.delta - 1.0), std::abs(h.a_star), std::abs(h.varrho)});
          if (!h.pole_separated()) m = 1.0;
        }
    }
    return m;
  });
  R.check("coefficient_symmetry", 1e-12, [&] {
    double m = 0;
    for (int k = 0; k <= 3; ++k)
      for (int n = 0; n <= 5; ++n) {
        double h1 = riesz_h1(P, k, 0.7, n), h2s = riesz_h2(P, k, -0.7, n, RieszDirection::Inverse);
        m = std::max(m, rel(h2s, h1));
      }
    return m;
  });
  R.check("coefficient_asymptotics", 4.0, [&] {
    double m = 0;
    for (int k : {0, 8, 64}) {
      RieszCoeffs c = riesz_coeffs(P, k, 0.5, 10000);
      for (const auto* E : {&c.E1, &c.E2}) {
        double e3 = std::abs((*E)[1000]) * 1001.0 * 1001.0, e4 = std::abs((*E)[10000]) * 10001.0 * 10001.0;
        m = std::max(m, e4 / std::max(e3, 1e-300));
      }
    }
    return m;
  });
}

void suite_multiplier(Runner& R) {
  const SpectralParams P = make_params(3, 1.0);
  const int N = bc_order(P.d), K = (2 << 12) + N + 1;
  auto growth = [](const BCReport& r) { return r.dyadic[6] > 0 ? r.dyadic[12] / r.dyadic[6] : 0.0; };
  R.check("sin_pi_b_dyadic", 4.0, [&] { return growth(bc_report(seq_sin_pi_b(P, K), N, 12)); });
  R.check("riesz_C_dyadic", 4.0, [&] { return growth(bc_report(seq_riesz_C(P, 0.5, K), N, 12)); });
  R.check("T_sequences_dyadic", 4.0, [&] {
    double m = 0;
    for (double x : {0.9, 0.95})
      for (auto* f : {&seq_T_plus, &seq_T_minus, &seq_T_tilde_plus, &seq_T_tilde_minus})
        m = std::max(m, growth(bc_report((*f)(P, x, K), N, 12)));
    return m;
  });
  R.check("leibniz_residual", 1e-12, [&] {
    return product_rule_check(seq_sin_pi_b(P, K), seq_T_plus(P, 0.9, K), N, 12).leibniz_residual;
  });
  R.check("lattice_sup", 1.0, [&] { return appendix_bound_check(P, std::nullopt, 1, 128, 200).sup; });
}

void suite_harmonics(Runner& R) {
  const SpectralParams P = make_params(3, 1.0);
  const int K = 4;
  auto ang = angular_grid_for(3, K);
  auto g = make_log_grid(1e-6, 1e6, 16384, 3);
  Field F = make_field(ang, g, [](double r, double th, double ph) {
    return cplx(std::exp(-0.5 * r * r) * (1.0 + r * std::cos(th) + r * r * std::pow(std::sin(th), 2) * std::cos(2 * ph)));
  });
  const double nf = field_norm(F);
  R.check("parseval", 1e-10, [&] { return std::abs(analyze(F, K).norm() - nf) / nf; });
  R.check("roundtrip", 1e-10, [&] { return field_distance(synthesize(analyze(F, K), ang), F) / nf; });
  R.check("unitarity", 1e-5, [&] { return std::abs(field_norm(apply_W(P, F, false, K)) / nf - 1.0); });
  R.check("a0_identity", 1e-5, [&] { return field_distance(apply_W(make_params(3, 0.0), F, false, K), F) / nf; });
  R.check("intertwining", 1e-5, [&] {
    std::function<cplx(double)> m = [](double l) { return std::exp(cplx(-l * l, 0.0)); };
    return field_distance(apply_function_of_La(P, m, F, CalculusPath::Direct, K),
                          apply_function_of_La(P, m, F, CalculusPath::Conjugated, K)) /
           nf;
  });
  R.check("sobolev_band", 10.0, [&] {
    auto v = sobolev_ratio_check(P, 1.0, 20);
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::max(*hi, 1.0 / *lo);
  });
  R.check("dispersive_free", 0.05, [] {
    DispersiveConfig cfg;
    cfg.n = 1 << 16;
    double m = 0;
    for (auto& row : dispersive_gaussian(make_params(3, 0.0), {1.0, 10.0}, cfg))
      m = std::max(m, std::abs(row.sup / row.envelope - 1.0));
    return m;
  });
}

}  // namespace

VerifyOptions verify_options_from_env() {
  VerifyOptions o;
  if (const char* s = std::getenv("INVSQ_CANARY_APLUS_SCALE")) o.aplus_scale = std::strtod(s, nullptr);
  return o;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"specfun", "transforms", "kernels", "riesz", "multiplier", "harmonics"};
  return s;
}

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
  const auto& all = verify_suites();
  if (suite != "all" && std::find(all.begin(), all.end(), suite) == all.end())
    fail(ErrorKind::InvalidArgument, "unknown verify suite '" + suite + "'");
  std::vector<CheckResult> out;
  for (const auto& s : all) {
    if (suite != "all" && suite != s) continue;
    Runner R{s, opt, out};
    size_t first = out.size();
    if (s == "specfun") suite_specfun(R);
    if (s == "transforms") suite_transforms(R);
    if (s == "kernels") suite_kernels(R);
    if (s == "riesz") suite_riesz(R);
    if (s == "multiplier") suite_multiplier(R);
    if (s == "harmonics") suite_harmonics(R);
    // environment overrides apply after the fact so a bad value cannot skip a check
    for (size_t i = first; i < out.size(); ++i) {
      if (const char* e = std::getenv(env_key(out[i].name).c_str())) {
        out[i].threshold = std::strtod(e, nullptr);
        out[i].pass = std::isfinite(out[i].measured) && out[i].measured <= out[i].threshold;
      }
    }
  }
  return out;
}

std::string verify_report_json(const std::string& suite, const std::vector<CheckResult>& checks) {
  nlohmann::json j;
  j["suite"] = suite;
  j["count"] = checks.size();
  nlohmann::json arr = nlohmann::json::array(), failed = nlohmann::json::array();
  bool ok = true;
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json("inf");
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    arr.push_back(e);
    if (!c.pass) {
      failed.push_back(c.name);
      ok = false;
    }
  }
  j["checks"] = arr;
  j["failed"] = failed;
  j["passed"] = ok;
  return j.dump(2);
}

}  // namespace invsq
