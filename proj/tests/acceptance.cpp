// Acceptance suite: runs the full identity survey over the whole catalog and
// prints one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "opq/catalog.hpp"
#include "opq/reconstruction.hpp"
#include "opq/spectral.hpp"
#include "opq/verification.hpp"

using namespace opq;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  double worst = 0.0;
  std::string offender;
  int skipped = 0;

  void fold(const CheckRecord& r) {
    if (r.skipped) {
      ++skipped;
      return;
    }
    double ratio = r.tolerance > 0 ? r.residual / r.tolerance : 0.0;
    // lower-bound checks (negative controls) report pass/fail only
    if (!r.pass) pass = false;
    if (ratio > worst) {
      worst = ratio;
      offender = r.family + " [" + r.params + "] " + r.check;
    }
  }
};

}  // namespace

int main() {
  SuiteConfig cfg;  // full catalog, all suites, default grids
  SuiteReport rep = run_suite(cfg);

  std::map<std::string, int> check_to_criterion = {
      {"factorization", 1},
      {"ground_state_zero_mode", 1},
      {"spectrum_numeric", 2},
      {"spectrum_shape_invariance", 2},
      {"spectrum_alpha_iteration", 2},
      {"duality_pq", 3},
      {"p_route_agreement", 3},
      {"orthogonality_rows", 4},
      {"completeness", 4},
      {"normalization_dn", 5},
      {"closure", 6},
      {"closure_negative_control", 6},
      {"ladder_action", 7},
      {"structure_relation", 7},
      {"heisenberg", 7},
      {"recurrence_from_closure", 8},
      {"a0_e1_identity", 8},
      {"roundtrip_simple", 9},
      {"roundtrip_general", 9},
      {"ri0cond", 9},
      {"rodrigues", 10},
  };

  std::map<int, Criterion> crit;
  const char* titles[10] = {
      "factorization: ||H - A^dag A|| and A phi0 = 0 at 1e-13 scale",
      "spectrum: numeric vs closed form 1e-8; shape-invariance and "
      "alpha-iteration vs closed form 1e-10",
      "duality: P_n(eta(x)) = Q_x(E(n)) via independent routes, 1e-9",
      "orthogonality and completeness Gram deviations, 1e-8",
      "normalization: prod A_m/C_{m+1} vs closed-form d_n^2/d_0^2, 1e-9",
      "closure: commutator residual 1e-9; perturbed coefficients >= 1e-3",
      "ladder/Heisenberg: a+-  actions 1e-8; Heisenberg residual 1e-7 "
      "at t in {0, 0.3, 1.7}",
      "recurrence from closure: A_n, C_n at 1e-10; A_0 E(1) + B(0) eta(1) = 0 "
      "at 1e-12",
      "reconstruction round-trip 1e-9 and ri0cond 1e-10",
      "Rodrigues chain matches phi0 P_n after x=0 rescaling, 1e-8, n <= 5",
  };
  for (int i = 1; i <= 10; ++i) crit[i] = Criterion{i, titles[i - 1]};

  for (const auto& r : rep.records) {
    auto it = check_to_criterion.find(r.check);
    if (it != check_to_criterion.end()) crit[it->second].fold(r);
  }

  // hand-pinned concrete values named by the criteria
  {
    auto f = get_family("krawtchouk", {{"p", 0.5}}, 2);
    GroundState g = ground_state(f.B, f.D, 3);
    auto dn = normalization_dn(f, 2, g.squared_norm);
    if (std::fabs(dn[1] / dn[0] - 2.0) > 1e-12) {
      crit[5].pass = false;
      crit[5].offender = "krawtchouk d_1^2/d_0^2 != 2";
    }
  }
  {
    auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
    auto st = reconstruct(c.closure, 1.0, 1.0, 10, ReconstructionRoute::simple);
    for (int x = 0; x <= 10; ++x) {
      if (std::fabs(st.B_tilde[x] - 2.0) > 1e-12 ||
          std::fabs(st.D_tilde[x] - 2.0 * x) > 1e-11) {
        crit[9].pass = false;
        crit[9].offender = "charlier B~/D~ intermediates";
      }
    }
  }

  bool all = true;
  for (int i = 1; i <= 10; ++i) {
    const auto& c = crit[i];
    all = all && c.pass;
    std::printf("ACCEPTANCE %2d: %s  [%s]", i, c.pass ? "PASS" : "FAIL",
                c.title.c_str());
    if (!c.pass) std::printf("  worst: %s (%.3g x tol)", c.offender.c_str(), c.worst);
    if (c.skipped)
      std::printf("  (%d checks skipped as documented)", c.skipped);
    std::printf("\n");
  }
  std::printf("suite: %d passed, %d failed, %d skipped\n", rep.passed,
              rep.failed, rep.skipped);
  if (rep.failed > 0) {
    std::printf("failing records:\n");
    for (const auto& r : rep.records)
      if (!r.pass && !r.skipped)
        std::printf("  %s [%s] %s residual %.3g tol %.1g %s\n", r.family.c_str(),
                    r.params.c_str(), r.check.c_str(), r.residual, r.tolerance,
                    r.note.c_str());
  }
  return all && rep.failed == 0 ? 0 : 1;
}
