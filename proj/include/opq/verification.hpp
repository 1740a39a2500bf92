#ifndef OPQ_VERIFICATION_HPP
#define OPQ_VERIFICATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opq/family.hpp"

namespace opq {

// every suite name, in canonical order
const std::vector<std::string>& suite_names();

// check name -> suite it belongs to; the registry test asserts coverage
const std::map<std::string, std::string>& check_registry();

struct SuiteConfig {
  std::vector<std::string> families;           // empty = whole catalog
  std::optional<std::vector<std::string>> suites;  // nullopt = all, {} = none
  std::map<std::string, std::vector<GridPoint>> grid_override;
  double tolerance_scale = 1.0;  // multiplies every tolerance (env override)
  int window_cap = 200;
  int n_cap = 40;
};

struct CheckRecord {
  std::string family;
  std::string params;  // rendered "a=1.5,b=2,N=8"
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct SuiteReport {
  std::vector<CheckRecord> records;
  int passed = 0, failed = 0, skipped = 0;
  bool all_pass() const { return failed == 0; }
  std::vector<CheckRecord> worst(int k) const;
};

SuiteReport run_suite(const SuiteConfig& cfg);

// numeric-only checks for user-supplied B/D tables
struct CustomFamily {
  std::vector<double> B, D;  // lattice 0..N
  bool finite = true;
};
SuiteReport run_custom_suite(const CustomFamily& cf, double tolerance_scale = 1.0);

std::string render_params(const Params& p, std::optional<int> N);

}  // namespace opq

#endif
