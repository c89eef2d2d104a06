#include "invsq/params.hpp"

#include <algorithm>
#include <cmath>

#include "invsq/errors.hpp"

namespace invsq {

SpectralParams make_params(int d, double a) {
  if (d < 2) fail(ErrorKind::InvalidArgument, "make_params: d must be >= 2");
  if (!std::isfinite(a)) fail(ErrorKind::InvalidArgument, "make_params: a must be finite");
  SpectralParams p;
  p.d = d;
  p.a = a;
  p.lambda0 = 0.5 * (d - 2);
  double floor = -p.lambda0 * p.lambda0;
  if (a < floor) fail(ErrorKind::Subcritical, "make_params: a is below -(d-2)^2/4");
  p.nu0 = std::sqrt(std::max(0.0, p.lambda0 * p.lambda0 + a));
  p.sigma = p.lambda0 - p.nu0;
  p.p0 = p.sigma > 0.0 ? d / p.sigma : std::numeric_limits<double>::infinity();
  return p;
}

ModeIndices mode_indices(const SpectralParams& p, int k) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "mode_indices: k must be >= 0");
  ModeIndices m;
  m.k = k;
  m.mu = p.lambda0 + k;
  m.nu = std::sqrt(std::max(0.0, m.mu * m.mu + p.a));
  m.a = 0.5 * (m.mu + m.nu);
  // mu - nu = -a/(mu + nu) avoids cancellation for small a
  m.b = (m.mu + m.nu) > 0.0 ? -0.5 * p.a / (m.mu + m.nu) : 0.0;
  if (p.a == 0.0) m.b = 0.0;
  return m;
}

IndexInterval order_window(const SpectralParams& p, OperatorTag op) {
  switch (op) {
    case OperatorTag::Riesz:
    case OperatorTag::WSobolev:
      return {-double(p.d), 2.0 + 2.0 * p.nu0};
    case OperatorTag::RieszInverse:
    case OperatorTag::WStarSobolev:
      return {-2.0 * p.nu0 - 2.0, double(p.d)};
    default:
      return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
}

IndexInterval admissible_p(const SpectralParams& p, OperatorTag op, double order) {
  const double d = p.d, s = p.sigma;
  if (op != OperatorTag::W && op != OperatorTag::WStar) {
    if (!order_window(p, op).contains(order)) fail(ErrorKind::Domain, "admissible_p: order outside its window");
    if ((op == OperatorTag::Riesz || op == OperatorTag::RieszInverse) && order == 0.0)
      fail(ErrorKind::Domain, "admissible_p: Riesz order must be nonzero");
  }
  switch (op) {
    case OperatorTag::W:
    case OperatorTag::WStar:
      return {std::max(0.0, s / d), std::min(1.0, (d - s) / d)};
    case OperatorTag::WSobolev:
      return {std::max({0.0, s / d, (s + order) / d}), std::min({1.0, (d - s) / d, (d + order) / d})};
    case OperatorTag::WStarSobolev:
      return {std::max({0.0, s / d, order / d}), std::min({1.0, (d - s) / d, (d - s + order) / d})};
    case OperatorTag::Riesz:
      return {std::max(0.0, (s + order) / d), std::min({1.0, (d - s) / d, (d + order) / d})};
    case OperatorTag::RieszInverse:
      return {std::max({0.0, order / d, s / d}), std::min(1.0, (d - s + order) / d)};
  }
  return {};
}

double theta_pd(double p, int d) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "theta_pd: p must exceed 1");
  return (d + 1.0) / p - (d + 3.0) / 2.0;
}

OperatorTag parse_operator(const std::string& name) {
  if (name == "W") return OperatorTag::W;
  if (name == "W*" || name == "Wstar") return OperatorTag::WStar;
  if (name == "R" || name == "Ralpha") return OperatorTag::Riesz;
  if (name == "Rinv" || name == "Rbeta") return OperatorTag::RieszInverse;
  if (name == "W-sobolev") return OperatorTag::WSobolev;
  if (name == "W*-sobolev") return OperatorTag::WStarSobolev;
  fail(ErrorKind::InvalidArgument, "unknown operator tag '" + name + "'");
}

const char* operator_name(OperatorTag op) {
  switch (op) {
    case OperatorTag::W: return "W";
    case OperatorTag::WStar: return "W*";
    case OperatorTag::Riesz: return "Ralpha";
    case OperatorTag::RieszInverse: return "Rbeta";
    case OperatorTag::WSobolev: return "W-sobolev";
    case OperatorTag::WStarSobolev: return "W*-sobolev";
  }
  return "?";
}

}  // namespace invsq
