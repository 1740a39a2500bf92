#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"
#include "opq/reconstruction.hpp"

using namespace opq;

TEST_CASE("eta recurrence: linear class") {
  ClosureCoefficients r;  // r1_1 = 0, rm1_2 = 0
  auto [eta, cls] = solve_eta(r, 1.0, 10);
  CHECK(cls.tag == EtaClass::linear);
  for (int x = 0; x <= 10; ++x) CHECK(eta[x] == doctest::Approx(double(x)));
}

TEST_CASE("eta recurrence: quadratic class (d = 0)") {
  ClosureCoefficients r;
  r.rm1_2 = 2.0;
  auto [eta, cls] = solve_eta(r, 1.0, 10);  // eta(1) = 1+d with d=0
  CHECK(cls.tag == EtaClass::quadratic);
  CHECK(cls.epsilon_p == 1);
  CHECK(cls.d == doctest::Approx(0.0));
  for (int x = 0; x <= 10; ++x) CHECK(eta[x] == doctest::Approx(double(x) * x));
}

TEST_CASE("eta recurrence: q-geometric class (iii)") {
  const double q = 0.5;
  const double rho = std::pow(1 / std::sqrt(q) - std::sqrt(q), 2);
  ClosureCoefficients r;
  r.r1_1 = rho;
  r.rm1_2 = -rho;
  auto [eta, cls] = solve_eta(r, 1.0 - q, 20);
  CHECK(cls.tag == EtaClass::q_geometric);
  CHECK(cls.q == doctest::Approx(q).epsilon(1e-13));
  for (int x = 0; x <= 20; ++x)
    CHECK(eta[x] == doctest::Approx(1.0 - std::pow(q, x)).epsilon(1e-12));
}

TEST_CASE("eta recurrence: q-inverse-geometric and q-quadratic classes") {
  const double q = 0.7;
  const double rho = std::pow(1 / std::sqrt(q) - std::sqrt(q), 2);
  {
    ClosureCoefficients r;
    r.r1_1 = rho;
    r.rm1_2 = rho;
    auto [eta, cls] = solve_eta(r, 1.0 / q - 1.0, 15);
    CHECK(cls.tag == EtaClass::q_inverse_geometric);
    for (int x = 0; x <= 15; ++x)
      CHECK(eta[x] == doctest::Approx(std::pow(q, -x) - 1.0).epsilon(1e-12));
  }
  {
    const double d = 0.4;
    ClosureCoefficients r;
    r.r1_1 = rho;
    r.rm1_2 = rho * (1.0 + d);
    double eta1 = (1.0 / q - 1.0) * (1.0 - d * q);
    auto [eta, cls] = solve_eta(r, eta1, 15);
    CHECK(cls.tag == EtaClass::q_quadratic);
    CHECK(cls.q == doctest::Approx(q).epsilon(1e-12));
    CHECK(cls.d == doctest::Approx(d).epsilon(1e-10));
    CHECK(cls.epsilon_p == 1);
    for (int x = 0; x <= 15; ++x)
      CHECK(eta[x] == doctest::Approx((std::pow(q, -x) - 1.0) *
                                      (1.0 - d * std::pow(q, x))).epsilon(1e-11));
  }
}

TEST_CASE("negative r_1^(1) is rejected") {
  ClosureCoefficients r;
  r.r1_1 = -0.5;
  CHECK_THROWS_AS(solve_eta(r, 1.0, 5), ReconstructionError);
}

TEST_CASE("a_x for Charlier and Krawtchouk") {
  auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
  auto [eta, cls] = solve_eta(c.closure, 1.0, 12);
  auto a = solve_a(c.closure, eta, 1.0, c.B(0));
  for (int x = 0; x <= 12; ++x) CHECK(a[x] == doctest::Approx(x + 1.0));
  CHECK(a[0] == doctest::Approx(c.B(0)));

  auto k = get_family("krawtchouk", {{"p", 0.5}}, 2);
  auto [ek, ck] = solve_eta(k.closure, 1.0, 4);
  auto ak = solve_a(k.closure, ek, 1.0, k.B(0));
  for (int x = 0; x <= 2; ++x) CHECK(ak[x] == doctest::Approx(1.0));
}

TEST_CASE("ri0cond holds for Charlier and detects perturbation") {
  auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
  CHECK(std::fabs(verify_ri0cond(c.closure, 1.0, 1.0)) <= 1e-14);
  ClosureCoefficients bad = c.closure;
  bad.r0_0 *= 1.1;
  CHECK(std::fabs(verify_ri0cond(bad, 1.0, 1.0)) > 1e-3);
}

TEST_CASE("Charlier reconstruction intermediates B~ = 2a, D~ = 2x") {
  auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
  auto st = reconstruct(c.closure, 1.0, 1.0, 10, ReconstructionRoute::simple);
  CHECK(st.eta_minus1 == doctest::Approx(-1.0));
  for (int x = 0; x <= 10; ++x) {
    CHECK(st.B_tilde[x] == doctest::Approx(2.0));
    CHECK(st.D_tilde[x] == doctest::Approx(2.0 * x));
    CHECK(st.B_values[x] == doctest::Approx(1.0));
    CHECK(st.D_values[x] == doctest::Approx(double(x)));
  }
  CHECK(st.D_values[0] == 0.0);
}

TEST_CASE("round trips through Appendix-A reconstruction") {
  {
    auto f = get_family("charlier", {{"a", 1.0}}, std::nullopt);
    auto rt = roundtrip_catalog(f, 15, ReconstructionRoute::simple);
    CHECK(rt.max_deviation <= 1e-12);
    CHECK(rt.state.cls.tag == EtaClass::linear);
  }
  {
    auto f = get_family("krawtchouk", {{"p", 0.5}}, 2);
    auto rt = roundtrip_catalog(f, 2, ReconstructionRoute::simple);
    CHECK(rt.max_deviation <= 1e-12);
  }
  {
    auto f = get_family("q_racah",
                        {{"a", 0.02}, {"b", 0.6}, {"d", 0.5}, {"q", 0.7}}, 6);
    auto rt = roundtrip_catalog(f, 6, ReconstructionRoute::general);
    CHECK(rt.max_deviation <= 1e-9);
    CHECK(rt.state.cls.tag == EtaClass::q_quadratic);
    CHECK(rt.state.cls.q == doctest::Approx(0.7).epsilon(1e-12));
  }
  {
    auto f = get_family("racah", {{"a", 11.5}, {"b", 0.8}, {"d", 1.5}}, 8);
    auto rt = roundtrip_catalog(f, 8, ReconstructionRoute::automatic);
    CHECK(rt.max_deviation <= 1e-9);
    CHECK(rt.state.cls.tag == EtaClass::quadratic);
  }
}

TEST_CASE("dual alpha at eta lattice equals eta increments") {
  for (const char* id : {"charlier", "q_charlier", "little_q_jacobi"}) {
    auto gp = default_grid(id).front();
    auto f = get_family(id, gp.params, gp.N);
    const auto& r = f.closure;
    double eta1 = f.eta(1), etam1 = r.rm1_2 - eta1;
    for (int x = 1; x <= 10; ++x) {
      double z = f.eta(x);
      double r1d = r.r1_1 * z + r.rm1_2;
      double r0d = r.r1_1 * z * z + 2 * r.rm1_2 * z - eta1 * etam1;
      double s = std::sqrt(r1d * r1d + 4 * r0d);
      double adp = 0.5 * (r1d + s), adm = 0.5 * (r1d - s);
      CHECK(adp == doctest::Approx(f.eta(x + 1) - z).epsilon(1e-10));
      CHECK(adm == doctest::Approx(f.eta(x - 1) - z).epsilon(1e-10));
    }
  }
}
