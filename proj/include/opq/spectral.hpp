#ifndef OPQ_SPECTRAL_HPP
#define OPQ_SPECTRAL_HPP

#include <string>
#include <vector>

#include "opq/family.hpp"
#include "opq/tridiagonal.hpp"

namespace opq {

enum class SpectrumMethod {
  numeric,              // bisection on the factored form, then sigma^2
  closed_form,          // catalog E(n)
  shape_invariance,     // sum kappa^s E(1; lambda + s delta)
  alpha_iteration,      // E(n+1) = E(n) + alpha_+(E(n))
  characteristic_roots  // closed-form roots checked against the Q_N equation
};

struct SpectralSolution {
  std::vector<double> eigenvalues;     // ascending
  std::vector<double> residuals;       // characteristic_roots only
  SpectrumMethod method = SpectrumMethod::numeric;
};

struct PolynomialTable {
  // values[n][x] = P_n(eta(x)); rows 0..n_max, lattice 0..x_max
  std::vector<std::vector<double>> values;
  int n_max = 0;
  int x_max = 0;
};

struct DualTable {
  // values[x][k] = Q_x(E_k) for the supplied eigenvalue list
  std::vector<std::vector<double>> values;
  std::vector<double> char_residuals;  // finite case: last-equation residual per E
  int x_max = 0;
};

// window used by the suites: N for finite families, the phi_0^2 tail window
// for infinite ones (capped, and kept inside double range)
int suite_window(const BoundFamily& f, int cap = 200);

// largest n with E(n) below 0.9 * (Gershgorin radius of the windowed H)
int suite_n_max(const BoundFamily& f, int window, int cap = 40);

SpectralSolution solve_spectrum(const BoundFamily& f, SpectrumMethod m,
                                int window, int n_count);

// route: true = closed form, false = three-term recurrence (Eq-2.32 style)
PolynomialTable build_P_table(const BoundFamily& f, int n_max, int x_max,
                              bool closed_form_route);

DualTable build_Q_table(const LatticeFn& B, const LatticeFn& D,
                        const std::vector<double>& eigenvalues, int x_max,
                        std::optional<int> N_finite);

// max |P_n(eta(x)) - Q_x(E(n))| / max(1, |P_n(eta(x))|)
double duality_check(const PolynomialTable& p, const DualTable& q);

enum class OrthogonalityMode { rows, completeness };

// rows:          max |d_n d_m sum_x phi0^2 P_n P_m - delta_nm|
// completeness:  max |phi0(x) phi0(y) sum_n d_n^2 P_n P_n - delta_xy|
double orthogonality_check(const PolynomialTable& p,
                           const std::vector<double>& phi0sq,
                           const std::vector<double>& dnsq,
                           OrthogonalityMode mode);

// d_n^2 from d_0^2 = 1/sum phi0^2 and the product A_m / C_{m+1}
std::vector<double> normalization_dn(const BoundFamily& f, int n_max,
                                     double phi0_norm);

// A_n, C_n from the closure data (paper forms with A_0 = r_-1^0 / r_0^0);
// also returns the residual of A_0 E(1) + B(0) eta(1) = 0
struct RecurrenceFromClosure {
  std::vector<double> A, C;
  double a0_identity_residual = 0.0;
};
RecurrenceFromClosure recurrence_coeffs_from_closure(const BoundFamily& f,
                                                     int n_max);

TridiagonalOperator build_dual_hamiltonian(const std::vector<double>& A,
                                           const std::vector<double>& C);

double alpha_plus(const ClosureCoefficients& r, double z);
double alpha_minus(const ClosureCoefficients& r, double z);

}  // namespace opq

#endif
