#pragma once

#include <limits>
#include <string>

namespace invsq {

struct SpectralParams {
  int d = 3;
  double a = 0.0;
  double sigma = 0.0;
  double nu0 = 0.5;
  double lambda0 = 0.5;
  double p0 = std::numeric_limits<double>::infinity();  // d/sigma, +inf when sigma <= 0
};

struct ModeIndices {
  int k = 0;
  double mu = 0.0;
  double nu = 0.0;
  double a = 0.0;  // (mu + nu)/2
  double b = 0.0;  // (mu - nu)/2
};

// open interval in 1/p; empty when lo >= hi
struct IndexInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo < x && x < hi; }
};

enum class OperatorTag { W, WStar, Riesz, RieszInverse, WSobolev, WStarSobolev };

SpectralParams make_params(int d, double a);
ModeIndices mode_indices(const SpectralParams& p, int k);

// order is alpha for Riesz/WSobolev and beta for RieszInverse/WStarSobolev; unused otherwise
IndexInterval admissible_p(const SpectralParams& p, OperatorTag op, double order = 0.0);

// validity window for the order of op (open)
IndexInterval order_window(const SpectralParams& p, OperatorTag op);

double theta_pd(double p, int d);

OperatorTag parse_operator(const std::string& name);
const char* operator_name(OperatorTag op);

}  // namespace invsq
