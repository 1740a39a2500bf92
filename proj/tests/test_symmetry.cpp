#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opq/catalog.hpp"
#include "opq/spectral.hpp"
#include "opq/symmetry.hpp"

using namespace opq;

namespace {
BoundFamily kraw2() { return get_family("krawtchouk", {{"p", 0.5}}, 2); }
BoundFamily charlier1() { return get_family("charlier", {{"a", 1.0}}, std::nullopt); }

std::vector<double> eta_of(const BoundFamily& f, int pts) {
  std::vector<double> e(pts);
  for (int x = 0; x < pts; ++x) e[x] = f.eta(x);
  return e;
}
}  // namespace

TEST_CASE("closure relation holds for Charlier and Krawtchouk") {
  {
    auto f = charlier1();
    auto h = build_hamiltonian(f.B, f.D, 21);
    CHECK(closure_residual(h, eta_of(f, 21), f.closure, 2) <= 1e-10);
  }
  {
    auto f = kraw2();
    auto h = build_hamiltonian(f.B, f.D, 3);
    CHECK(closure_residual(h, eta_of(f, 3), f.closure, 0) <= 1e-12);
  }
}

TEST_CASE("wrong closure coefficients produce a large residual") {
  auto f = charlier1();
  auto h = build_hamiltonian(f.B, f.D, 21);
  ClosureCoefficients zero;  // all-zero polynomial set
  zero.r0_0 = 1.0;
  zero.rm1_1 = 17.0;  // deliberately wrong linear part
  CHECK(closure_residual(h, eta_of(f, 21), zero, 2) >= 1e-3);
}

TEST_CASE("alpha_pm root identities") {
  auto f = get_family("q_charlier", {{"a", 2.0}, {"q", 0.7}}, std::nullopt);
  for (double z : {0.0, 0.13, 0.4, 0.77, 0.95}) {
    double ap = alpha_plus(f.closure, z), am = alpha_minus(f.closure, z);
    CHECK(ap + am == doctest::Approx(f.closure.R1(z)).epsilon(1e-12));
    CHECK(-ap * am == doctest::Approx(f.closure.R0(z)).epsilon(1e-12));
  }
  // alpha evaluated at E(n) gives spectral gaps
  for (int n = 0; n < 10; ++n) {
    CHECK(alpha_plus(f.closure, f.E(n)) ==
          doctest::Approx(f.E(n + 1) - f.E(n)).epsilon(1e-12));
    if (n)
      CHECK(alpha_minus(f.closure, f.E(n)) ==
            doctest::Approx(f.E(n - 1) - f.E(n)).epsilon(1e-12));
  }
  auto k = kraw2();
  CHECK(alpha_plus(k.closure, k.E(1)) == doctest::Approx(1.0));
}

TEST_CASE("ladder operators act as A_n up, C_n down") {
  {
    auto f = kraw2();
    auto rep = ladder_action_check(f, 2, 2);
    CHECK(rep.up <= 1e-10);
    CHECK(rep.down <= 1e-10);
    CHECK(rep.annihilate <= 1e-12);
    CHECK(rep.transpose <= 1e-10);
  }
  {
    auto f = charlier1();
    auto rep = ladder_action_check(f, 22, 5);
    CHECK(rep.up <= 1e-8);
    CHECK(rep.down <= 1e-8);
    CHECK(rep.annihilate <= 1e-9);
  }
}

TEST_CASE("structure relation matches the ladder action row-locally") {
  auto f = charlier1();
  auto rep = structure_relation_check(f, 22, 5, 2);
  CHECK(rep.up <= 1e-10);
  CHECK(rep.down <= 1e-10);
}

TEST_CASE("Heisenberg solution at t = 0 and generic t") {
  {
    auto f = kraw2();
    auto h = build_hamiltonian(f.B, f.D, 3);
    CHECK(heisenberg_check(h, eta_of(f, 3), f.closure, {0.0}, 0) <= 1e-10);
    CHECK(heisenberg_check(h, eta_of(f, 3), f.closure, {0.3, 1.7}, 0) <= 1e-8);
  }
  {
    auto f = charlier1();
    auto h = build_hamiltonian(f.B, f.D, 16);
    CHECK(heisenberg_check(h, eta_of(f, 16), f.closure, {0.5}, 2) <= 1e-7);
  }
}

TEST_CASE("shape invariance conditions") {
  {
    auto f = charlier1();  // delta = 0, kappa = 1
    auto rep = shape_invariance_check(f, 20);
    CHECK(rep.forward <= 1e-12);
    CHECK(rep.backward <= 1e-12);
    CHECK(rep.diagonal <= 1e-12);
    CHECK(rep.varphi_eta <= 1e-14);
  }
  {
    auto f = get_family("racah", {{"a", 11.5}, {"b", 0.8}, {"d", 1.5}}, 8);
    auto rep = shape_invariance_check(f, 8);
    CHECK(rep.forward <= 1e-12);
    CHECK(rep.backward <= 1e-12);
    CHECK(rep.diagonal <= 1e-12);
    CHECK(rep.varphi_eta <= 1e-13);  // phi(x) = (2x+d+1)/(d+1) vs delta eta
    CHECK(rep.kappa == 1.0);
  }
}

TEST_CASE("forward and backward shift operators") {
  auto f = kraw2();
  auto rep = shift_operator_action(f, 1, 2);
  CHECK(rep.forward <= 1e-12);
  CHECK(rep.backward <= 1e-12);
  auto c = charlier1();
  auto repc = shift_operator_action(c, 6, 18);
  CHECK(repc.forward <= 1e-10);
  CHECK(repc.backward <= 1e-10);
}

TEST_CASE("Rodrigues-type generation of excited states") {
  CHECK(rodrigues_generate(kraw2(), 0, 2) <= 1e-14);
  CHECK(rodrigues_generate(kraw2(), 1, 2) <= 1e-12);
  CHECK(rodrigues_generate(charlier1(), 2, 20) <= 1e-9);
  auto hahn = get_family("hahn", {{"a", 2.5}, {"b", 1.5}}, 10);
  CHECK(rodrigues_generate(hahn, 3, 10) <= 1e-10);
}

TEST_CASE("dual closure relation pointwise") {
  {
    auto f = charlier1();
    // R1^dual = 0, R0^dual = 1 for eta(x) = x
    CHECK(f.closure.r1_1 * 3.0 + f.closure.rm1_2 == 0.0);
    auto rep = dual_closure_check(f, 20);
    CHECK(rep.r1 <= 1e-12);
    CHECK(rep.r0 <= 1e-12);
    CHECK(rep.rm1 <= 1e-10);
  }
  {
    auto f = get_family("q_racah",
                        {{"a", 0.02}, {"b", 0.6}, {"d", 0.5}, {"q", 0.7}}, 6);
    auto rep = dual_closure_check(f, 6);
    CHECK(rep.r1 <= 1e-10);
    CHECK(rep.r0 <= 1e-10);
    CHECK(rep.rm1 <= 1e-10);
  }
}
