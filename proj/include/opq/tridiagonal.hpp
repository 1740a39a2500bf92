#ifndef OPQ_TRIDIAGONAL_HPP
#define OPQ_TRIDIAGONAL_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace opq {

using LatticeFn = std::function<double(int)>;

// Tridiagonal window of H, H~ or H^dual.  The (0,0) element is the upper
// left corner; super/sub coincide when symmetric.
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> sub;
  bool symmetric = true;

  int size() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
  std::vector<double> apply(const std::vector<double>& v) const;
  double norm_max() const;
};

// One factor of H = A^dagger A.  `main` holds sqrt(B(x)); `shift` holds
// sqrt(D(x)) with x = 1..n-1, above the diagonal for the forward factor A
// and below it for A^dagger.
struct BidiagonalFactor {
  std::vector<double> main;
  std::vector<double> shift;
  bool forward = true;

  int size() const { return static_cast<int>(main.size()); }
  Eigen::MatrixXd dense() const;
  std::vector<double> apply(const std::vector<double>& v) const;
};

struct GroundState {
  std::vector<double> values;  // phi_0(x) >= 0, phi_0(0) = 1
  double squared_norm = 0.0;   // sum phi_0^2 over the window
};

struct TruncationWindow {
  int x_max = 0;
  double tail_estimate = 0.0;
};

// sqrt(B(x) D(x+1)) via logs, with sign guard
double sqrt_product(double a, double b);

TridiagonalOperator build_hamiltonian(const LatticeFn& B, const LatticeFn& D,
                                      int n_points);

std::pair<BidiagonalFactor, BidiagonalFactor> factorize(const LatticeFn& B,
                                                        const LatticeFn& D,
                                                        int n_points);

GroundState ground_state(const LatticeFn& B, const LatticeFn& D, int n_points);

// phi_0^-1 H phi_0: diag B+D, super -B(x), sub -D(x)
TridiagonalOperator similarity_transform(const LatticeFn& B, const LatticeFn& D,
                                         int n_points);

// Extends the window until the phi_0^2 tail estimate drops below
// 1e-16 * partial sum, or throws at the cap.
TruncationWindow extend_window(const LatticeFn& B, const LatticeFn& D,
                               int x_cap = 10000);

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

// Implicit-shift QL for a symmetric tridiagonal window, with accumulated
// eigenvectors, results sorted ascending.
EigenDecomposition symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                               const std::vector<double>& off);

// First `count` eigenvalues of A^dagger A computed as squared singular
// values of the bidiagonal factor, by bisection on the Golub-Kahan form.
// Relative accuracy is preserved even for strongly graded factors.
std::vector<double> factored_eigenvalues(const BidiagonalFactor& a, int count);

}  // namespace opq

#endif
