#ifndef OPQ_FAMILY_HPP
#define OPQ_FAMILY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opq {

// named parameters; q-type families carry "q" as one of them
using Params = std::map<std::string, double>;

struct ParameterVector {
  Params values;
  std::optional<int> N;   // finite families only
  int epsilon = 1;        // sign markers resolved from the matched range
  int epsilon_p = 1;
  int range_index = 0;

  double at(const std::string& k) const { return values.at(k); }
};

// Raw coefficients of R_1, R_0, R_-1 in plain z (the per-family shifted
// argument z' is expanded at catalog load).
struct ClosureCoefficients {
  double r1_1 = 0.0, r1_0 = 0.0;
  double r0_2 = 0.0, r0_1 = 0.0, r0_0 = 0.0;
  double rm1_2 = 0.0, rm1_1 = 0.0, rm1_0 = 0.0;

  double R1(double z) const { return r1_1 * z + r1_0; }
  double R0(double z) const { return (r0_2 * z + r0_1) * z + r0_0; }
  double Rm1(double z) const { return (rm1_2 * z + rm1_1) * z + rm1_0; }
};

struct FamilyInfo {
  std::string id;
  bool finite = false;
  bool q_type = false;
  std::vector<std::string> param_names;  // excluding N
  std::string ranges_text;
  std::string duality;  // "self-dual", partner id, "self-dual (d <-> d~)", or "-"
  std::string ks_ref;   // review subsection, "-" for the unlisted duals
};

// A family bound to validated parameters: every closed form as a closure.
struct BoundFamily {
  FamilyInfo info;
  ParameterVector lambda;

  std::function<double(int)> B, D;
  std::function<double(int)> E, eta;
  std::function<double(int, int)> P;  // P_n(eta(x)), P_n(0) = 1
  std::function<double(int)> phi0sq;  // null when the paper gives no closed form
  std::function<double(int)> dnsq;    // likewise
  std::function<double(int)> A, C;    // three-term recurrence, C(0) = 0
  std::function<double(int)> varphi;  // (eta(x+1)-eta(x))/eta(1)

  ClosureCoefficients closure;
  bool closure_from_partner = false;  // derived via the partner's dual closure

  // shape-invariance data; absent for the duals the review does not list
  bool has_shift = false;
  double kappa = 1.0;
  Params shifted_params;           // lambda + delta
  std::optional<int> shifted_N;

  // duality partner binding (B <-> -A_n correspondence), when defined
  std::string partner_id;
  Params partner_params;
  std::optional<int> partner_N;

  int lattice_points(int window) const;  // N+1 or window+1
};

struct GridPoint {
  Params params;
  std::optional<int> N;
};

struct FamilySpec {
  FamilyInfo info;
  // throws InvalidParameterError naming the violated inequality
  std::function<ParameterVector(const Params&, std::optional<int>)> validate;
  std::function<void(BoundFamily&)> bind;  // fills closures from lambda
  std::vector<GridPoint> grid;             // fixed default parameter points
};

}  // namespace opq

#endif
