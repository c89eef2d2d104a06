#pragma once

#include <map>
#include <string>
#include <vector>

namespace invsq {

struct CheckResult {
  std::string suite;
  std::string name;  // suite.check
  double measured = 0;
  double threshold = 0;
  bool pass = false;
};

struct VerifyOptions {
  double aplus_scale = 1.0;               // canary: multiplies every A+ coefficient
  std::map<std::string, double> tol;      // overrides keyed by check name
};

// INVSQ_CANARY_APLUS_SCALE and INVSQ_TOL_<SUITE>_<CHECK> (upper case, '.' -> '_')
VerifyOptions verify_options_from_env();

const std::vector<std::string>& verify_suites();  // specfun ... harmonics, without "all"

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& opt = {});

// canonical JSON: sorted keys, checks in run order
std::string verify_report_json(const std::string& suite, const std::vector<CheckResult>& checks);

}  // namespace invsq
