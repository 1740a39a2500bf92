#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"
#include "opq/spectral.hpp"

using namespace opq;

namespace {
BoundFamily kraw2() { return get_family("krawtchouk", {{"p", 0.5}}, 2); }
BoundFamily charlier1() { return get_family("charlier", {{"a", 1.0}}, std::nullopt); }
}  // namespace

TEST_CASE("numeric spectrum of Krawtchouk p=1/2 N=2 is 0,1,2") {
  auto f = kraw2();
  auto s = solve_spectrum(f, SpectrumMethod::numeric, 2, 3);
  CHECK(std::fabs(s.eigenvalues[0]) < 1e-14);
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("alpha iteration reproduces the Charlier ladder 0,1,2,...") {
  auto f = charlier1();
  CHECK(alpha_plus(f.closure, 3.7) == doctest::Approx(1.0));   // R1=0, R0=1
  CHECK(alpha_minus(f.closure, 3.7) == doctest::Approx(-1.0));
  auto s = solve_spectrum(f, SpectrumMethod::alpha_iteration, 20, 8);
  for (int n = 0; n < 8; ++n)
    CHECK(s.eigenvalues[n] == doctest::Approx(double(n)).epsilon(1e-14));
}

TEST_CASE("all methods give E(0) = 0") {
  auto f = kraw2();
  for (auto m : {SpectrumMethod::numeric, SpectrumMethod::closed_form,
                 SpectrumMethod::shape_invariance, SpectrumMethod::alpha_iteration})
    CHECK(std::fabs(solve_spectrum(f, m, 2, 3).eigenvalues[0]) < 1e-12);
}

TEST_CASE("shape-invariance composition matches closed form on Hahn") {
  auto f = get_family("hahn", {{"a", 2.5}, {"b", 1.5}}, 10);
  auto si = solve_spectrum(f, SpectrumMethod::shape_invariance, 10, 11);
  for (int n = 0; n <= 10; ++n)
    CHECK(si.eigenvalues[n] ==
          doctest::Approx(f.E(n)).epsilon(1e-13));
}

TEST_CASE("P table recurrence reproduces Charlier P2 = x^2 - 3x + 1") {
  auto f = charlier1();
  CHECK(f.A(1) == doctest::Approx(-1.0));
  CHECK(f.C(1) == doctest::Approx(-1.0));
  auto t = build_P_table(f, 2, 6, false);
  for (int x = 0; x <= 6; ++x)
    CHECK(t.values[2][x] == doctest::Approx(x * x - 3.0 * x + 1.0));
  for (int x = 0; x <= 6; ++x) CHECK(t.values[0][x] == 1.0);
}

TEST_CASE("Q table for Krawtchouk N=2") {
  auto f = kraw2();
  std::vector<double> evs{0.0, 1.0, 2.0};
  auto q = build_Q_table(f.B, f.D, evs, 2, 2);
  // E = 0 column is all ones
  for (int x = 0; x <= 2; ++x) CHECK(q.values[x][0] == doctest::Approx(1.0));
  // E = 1 column is 1, 0, -1
  CHECK(q.values[0][1] == doctest::Approx(1.0));
  CHECK(q.values[1][1] == doctest::Approx(0.0));
  CHECK(q.values[2][1] == doctest::Approx(-1.0));
  for (double r : q.char_residuals) CHECK(r <= 1e-12);
}

TEST_CASE("duality for the self-dual Krawtchouk") {
  auto f = kraw2();
  auto p = build_P_table(f, 2, 2, true);
  std::vector<double> evs{f.E(0), f.E(1), f.E(2)};
  auto q = build_Q_table(f.B, f.D, evs, 2, 2);
  CHECK(duality_check(p, q) <= 1e-10);
}

TEST_CASE("cross-family duality: Hahn vs dual Hahn swapped indices") {
  Params pr{{"a", 2.5}, {"b", 1.5}};
  auto h = get_family("hahn", pr, 10);
  auto dh = get_family("dual_hahn", pr, 10);
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (int x = 0; x <= 10; ++x) {
      double a = h.P(n, x), b = dh.P(x, n);
      worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("orthogonality sums for Krawtchouk p=1/2 N=2") {
  auto f = kraw2();
  // sum phi0^2 P_1^2 = 1*1 + 2*0 + 1*1 = 2 = 1/d_1^2
  double s = 1.0 * 1.0 + 2.0 * 0.0 + 1.0 * 1.0;
  CHECK(s == doctest::Approx(1.0 / f.dnsq(1)));
  CHECK(f.dnsq(0) == doctest::Approx(0.25));  // (1-p)^N
  auto dn = normalization_dn(f, 2, 4.0);
  CHECK(dn[0] == doctest::Approx(0.25));
  CHECK(dn[1] / dn[0] == doctest::Approx(2.0));  // A_0 / C_1
}

TEST_CASE("Charlier truncated weights sum to e") {
  auto f = charlier1();
  int w = suite_window(f);
  GroundState g = ground_state(f.B, f.D, w + 1);
  CHECK(g.squared_norm == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("recurrence coefficients from closure data (Charlier)") {
  auto f = charlier1();
  auto rc = recurrence_coeffs_from_closure(f, 10);
  CHECK(rc.A[0] == doctest::Approx(-1.0));  // r_-1^(0)/r_0^(0)
  CHECK(rc.C[0] == 0.0);
  CHECK(rc.a0_identity_residual <= 1e-14);
  for (int n = 0; n <= 10; ++n) {
    CHECK(rc.A[n] == doctest::Approx(f.A(n)).epsilon(1e-12));
    if (n) CHECK(rc.C[n] == doctest::Approx(f.C(n)).epsilon(1e-12));
  }
}

TEST_CASE("dual Hamiltonian of the self-dual Krawtchouk equals H") {
  auto f = kraw2();
  std::vector<double> A{f.A(0), f.A(1), f.A(2)}, C{f.C(0), f.C(1), f.C(2)};
  auto hd = build_dual_hamiltonian(A, C);
  auto h = build_hamiltonian(f.B, f.D, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(hd.diag[i] == doctest::Approx(h.diag[i]).epsilon(1e-13));
  for (int i = 0; i < 2; ++i)
    CHECK(hd.super[i] == doctest::Approx(h.super[i]).epsilon(1e-13));

  // eigenvalues are eta(x) = 0, 1, 2; ground-state ratios give d_n/d_0
  auto ed = symmetric_tridiagonal_eigen(hd.diag, hd.super);
  CHECK(std::fabs(ed.values[0]) < 1e-12);
  CHECK(ed.values[2] == doctest::Approx(2.0).epsilon(1e-12));
  auto gd = ground_state([&](int n) { return -f.A(n); },
                         [&](int n) { return -f.C(n); }, 3);
  auto dn = normalization_dn(f, 2, 4.0);
  for (int n = 0; n < 3; ++n)
    CHECK(gd.values[n] == doctest::Approx(std::sqrt(dn[n] / dn[0])).epsilon(1e-12));
}

TEST_CASE("dual construction rejects positive A_n") {
  CHECK_THROWS_AS(build_dual_hamiltonian({1.0, -1.0}, {0.0, -1.0}),
                  DualConstructionError);
}

TEST_CASE("recurrence route breaks down when A_n = 0") {
  auto f = kraw2();  // A(N) = -p(N-n) vanishes at n = N
  CHECK_THROWS_AS(build_P_table(f, 3, 2, false), RecurrenceBreakdownError);
}
