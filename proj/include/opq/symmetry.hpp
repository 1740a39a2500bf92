#ifndef OPQ_SYMMETRY_HPP
#define OPQ_SYMMETRY_HPP

#include <Eigen/Dense>
#include <vector>

#include "opq/family.hpp"
#include "opq/spectral.hpp"
#include "opq/tridiagonal.hpp"

namespace opq {

// || [H,[H,eta]] - eta R0(H) - [H,eta] R1(H) - R-1(H) ||, row-scale
// normalised, over rows with the given margin to the truncation edge
double closure_residual(const TridiagonalOperator& h,
                        const std::vector<double>& eta_diag,
                        const ClosureCoefficients& r, int margin);

struct LadderOperators {
  Eigen::MatrixXd a_plus;
  Eigen::MatrixXd a_minus;
  double transpose_residual = 0.0;  // ||a_plus - a_minus^T|| / scale
};

// matrix functions of H via its eigen-decomposition
LadderOperators build_ladder_operators(const TridiagonalOperator& h,
                                       const std::vector<double>& eta_diag,
                                       const ClosureCoefficients& r);

struct LadderActionReport {
  double up = 0.0;           // a+ phi_n vs A_n phi_{n+1}
  double down = 0.0;         // a- phi_n vs C_n phi_{n-1}
  double annihilate = 0.0;   // a- phi_0 vs 0
  double transpose = 0.0;
};

// eigenvectors taken as phi_0(x) P_n(eta(x)) from the closed forms
LadderActionReport ladder_action_check(const BoundFamily& f, int window,
                                       int n_max);

// same identity applied row-locally through the structure relation; no
// matrix functions, so it stays well-posed for strongly graded windows
LadderActionReport structure_relation_check(const BoundFamily& f, int window,
                                            int n_max, int margin);

double heisenberg_check(const TridiagonalOperator& h,
                        const std::vector<double>& eta_diag,
                        const ClosureCoefficients& r,
                        const std::vector<double>& t_samples, int margin);

// Heisenberg identity applied to phi_n = phi_0 P_n for n <= n_max.  On a
// truncated window the full matrix identity picks up edge effects from the
// top of the spectrum; the action on tail-converged eigenvectors does not.
double heisenberg_action_check(const BoundFamily& f, int window, int n_max,
                               const std::vector<double>& t_samples,
                               int margin);

struct ShapeInvarianceReport {
  double forward = 0.0;    // B(x+1;l) phi(x+1;l) = kappa B(x;l+d) phi(x;l)
  double backward = 0.0;   // D(x;l) phi(x-1;l)  = kappa D(x;l+d) phi(x;l)
  double diagonal = 0.0;   // B + D shift condition with E(1)
  double varphi_eta = 0.0; // phi(x) = (eta(x+1)-eta(x))/eta(1)
  double kappa = 1.0;
  double e1 = 0.0;
};
ShapeInvarianceReport shape_invariance_check(const BoundFamily& f, int window);

struct ShiftActionReport {
  double forward = 0.0;   // F P_n(.;l) = E(n;l) P_{n-1}(.;l+d)
  double backward = 0.0;  // Bop P_n(.;l+d) = P_{n+1}(.;l)
  double bf_energy = 0.0; // b_{n-1} f_n = E(n)
};
ShiftActionReport shift_operator_action(const BoundFamily& f, int n_max,
                                        int window);

// A^+(l) ... A^+(l+(n-1)d) phi_0(.;l+nd) vs phi_0 P_n, rescaled at x = 0
double rodrigues_generate(const BoundFamily& f, int n, int window);

struct DualClosureReport {
  double r1 = 0.0;   // R1^dual(eta) vs (eta(x+1)-eta(x)) + (eta(x-1)-eta(x))
  double r0 = 0.0;   // R0^dual(eta) vs -(...)(...)
  double rm1 = 0.0;  // R-1^dual(eta) vs -(B+D) R0^dual(eta)
};
DualClosureReport dual_closure_check(const BoundFamily& f, int window);

}  // namespace opq

#endif
