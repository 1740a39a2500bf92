#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opq/errors.hpp"
#include "opq/tridiagonal.hpp"

using namespace opq;

namespace {
// Krawtchouk p=1/2, N=2
const LatticeFn kB = [](int x) { return 0.5 * (2 - x); };
const LatticeFn kD = [](int x) { return 0.5 * x; };
// Charlier a=1
const LatticeFn cB = [](int) { return 1.0; };
const LatticeFn cD = [](int x) { return double(x); };
}  // namespace

TEST_CASE("Hamiltonian entries for Krawtchouk p=1/2 N=2") {
  auto h = build_hamiltonian(kB, kD, 3);
  CHECK(h.diag[0] == doctest::Approx(1.0));
  CHECK(h.diag[1] == doctest::Approx(1.0));
  CHECK(h.diag[2] == doctest::Approx(1.0));
  CHECK(h.super[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(h.super[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("Hamiltonian entries for Charlier a=1 window 0..3") {
  auto h = build_hamiltonian(cB, cD, 4);
  CHECK(h.diag == std::vector<double>{1, 2, 3, 4});
  CHECK(h.super[0] == doctest::Approx(-1.0));
  CHECK(h.super[1] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(h.super[2] == doctest::Approx(-std::sqrt(3.0)));
}

TEST_CASE("D(0) != 0 is rejected") {
  CHECK_THROWS_AS(build_hamiltonian(cB, [](int x) { return x + 1.0; }, 4),
                  InvalidFamilyError);
}

TEST_CASE("factorisation reassembles H and annihilates phi_0") {
  auto h = build_hamiltonian(kB, kD, 3);
  auto [a, ad] = factorize(kB, kD, 3);
  Eigen::MatrixXd res = h.dense() - ad.dense() * a.dense();
  CHECK(res.cwiseAbs().maxCoeff() < 1e-14);
  for (int x = 0; x < 3; ++x)
    CHECK(a.main[x] == doctest::Approx(std::sqrt(kB(x))));

  auto g = ground_state(kB, kD, 3);
  auto aphi = a.apply(g.values);
  for (double v : aphi) CHECK(std::fabs(v) < 1e-13);
  auto hphi = h.apply(g.values);
  for (double v : hphi) CHECK(std::fabs(v) < 1e-13);
}

TEST_CASE("ground state weights") {
  auto g = ground_state(kB, kD, 3);
  CHECK(g.values[0] == 1.0);
  CHECK(g.values[1] * g.values[1] == doctest::Approx(2.0));
  CHECK(g.values[2] * g.values[2] == doctest::Approx(1.0));
  CHECK(g.squared_norm == doctest::Approx(4.0));

  auto gc = ground_state(cB, cD, 8);
  double fact = 1.0;
  for (int x = 0; x < 8; ++x) {
    if (x > 0) fact *= x;
    CHECK(gc.values[x] * gc.values[x] == doctest::Approx(1.0 / fact));
  }
}

TEST_CASE("similarity transform annihilates constants and conjugates H") {
  auto ht = similarity_transform(cB, cD, 6);
  std::vector<double> ones(6, 1.0);
  auto z = ht.apply(ones);
  for (int x = 0; x < 5; ++x) CHECK(std::fabs(z[x]) < 1e-14);

  auto h = build_hamiltonian(cB, cD, 6);
  auto g = ground_state(cB, cD, 6);
  for (int x = 0; x + 1 < 6; ++x) {
    double sup = h.super[x] * g.values[x + 1] / g.values[x];
    double sub = h.sub[x] * g.values[x] / g.values[x + 1];
    CHECK(sup == doctest::Approx(ht.super[x]).epsilon(1e-12));
    CHECK(sub == doctest::Approx(ht.sub[x]).epsilon(1e-12));
  }
}

TEST_CASE("tail window extension for Charlier") {
  auto w = extend_window(cB, cD);
  CHECK(w.x_max < 40);
  CHECK(w.tail_estimate >= 0.0);
}

TEST_CASE("non-decaying measure is rejected at the cap") {
  // B/D ratio stays 2, sum diverges
  CHECK_THROWS_AS(extend_window([](int x) { return 2.0 * (x + 1); },
                                [](int x) { return double(x); }, 500),
                  DivergentMeasureError);
}

TEST_CASE("QL eigensolver on the Kac matrix (exact integer spectrum)") {
  // diag 0, off sqrt((k+1)(n-1-k)); eigenvalues -(n-1), -(n-3), ..., n-1
  const int n = 11;
  std::vector<double> d(n, 0.0), e(n - 1);
  for (int k = 0; k + 1 < n; ++k) e[k] = std::sqrt((k + 1.0) * (n - 1.0 - k));
  auto ed = symmetric_tridiagonal_eigen(d, e);
  for (int k = 0; k < n; ++k)
    CHECK(ed.values[k] == doctest::Approx(-(n - 1.0) + 2.0 * k).epsilon(1e-12));
  // orthonormal vectors reproducing T
  Eigen::MatrixXd vtv = ed.vectors.transpose() * ed.vectors;
  CHECK((vtv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    t(k, k) = d[k];
    if (k + 1 < n) t(k, k + 1) = t(k + 1, k) = e[k];
  }
  Eigen::MatrixXd rec =
      ed.vectors * ed.values.asDiagonal() * ed.vectors.transpose();
  CHECK((rec - t).cwiseAbs().maxCoeff() < 1e-11 * (n - 1));
}

TEST_CASE("QL and factored bisection agree on Krawtchouk N=2") {
  auto h = build_hamiltonian(kB, kD, 3);
  auto ed = symmetric_tridiagonal_eigen(h.diag, h.super);
  CHECK(ed.values[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ed.values[1] == doctest::Approx(1.0));
  CHECK(ed.values[2] == doctest::Approx(2.0));

  auto [a, ad] = factorize(kB, kD, 3);
  (void)ad;
  auto ev = factored_eigenvalues(a, 3);
  CHECK(std::fabs(ev[0]) < 1e-20);
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("factored bisection matches QL on a generic positive factor") {
  const int n = 20;
  BidiagonalFactor a;
  a.forward = true;
  a.main.resize(n);
  a.shift.resize(n - 1);
  for (int i = 0; i < n; ++i) a.main[i] = 0.4 + 0.13 * ((i * 7) % 5);
  for (int i = 0; i + 1 < n; ++i) a.shift[i] = 0.2 + 0.09 * ((i * 3) % 7);
  Eigen::MatrixXd A = a.dense();
  Eigen::MatrixXd H = A.transpose() * A;
  std::vector<double> d(n), e(n - 1);
  for (int i = 0; i < n; ++i) d[i] = H(i, i);
  for (int i = 0; i + 1 < n; ++i) e[i] = H(i, i + 1);
  auto ed = symmetric_tridiagonal_eigen(d, e);
  auto ev = factored_eigenvalues(a, n);
  for (int i = 0; i < n; ++i)
    CHECK(ev[i] == doctest::Approx(ed.values[i]).epsilon(1e-11));
}

TEST_CASE("factored bisection keeps relative accuracy on a graded factor") {
  // entries spanning 12 orders of magnitude: sigma_k ~ main[k] since the
  // factor is strongly diagonally graded
  const int n = 12;
  BidiagonalFactor a;
  a.forward = true;
  a.main.resize(n);
  a.shift.resize(n - 1);
  for (int i = 0; i < n; ++i) a.main[i] = std::pow(10.0, i - 2);
  for (int i = 0; i + 1 < n; ++i) a.shift[i] = 0.3 * std::pow(10.0, i - 2);
  auto ev = factored_eigenvalues(a, 3);
  // smallest eigenvalues must come out at their own scale, not at eps*||H||
  CHECK(ev[0] > 0.0);
  CHECK(ev[0] < 1e-3);
  CHECK(ev[1] / ev[0] > 10.0);
}
