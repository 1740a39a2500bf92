#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"
#include "opq/verification.hpp"

using namespace opq;

TEST_CASE("catalog enumerates the full family set") {
  const auto& cat = Catalog::instance();
  std::set<std::string> ids;
  int finite = 0, infinite = 0;
  for (const auto& s : cat.families()) {
    ids.insert(s.info.id);
    (s.info.finite ? finite : infinite)++;
  }
  CHECK(ids.size() == cat.families().size());  // unique ids
  CHECK(ids.size() == 28);
  CHECK(finite == 16);
  CHECK(infinite == 12);
  CHECK(ids.count("krawtchouk"));
  CHECK(ids.count("dual_quantum_q_krawtchouk"));
  CHECK_THROWS_AS(cat.spec("no_such_family"), InvalidParameterError);
}

TEST_CASE("basic descriptor spot values") {
  auto k = get_family("krawtchouk", {{"p", 0.5}}, 2);
  CHECK(k.B(0) == doctest::Approx(1.0));
  CHECK(k.B(1) == doctest::Approx(0.5));
  CHECK(k.B(2) == 0.0);
  CHECK(k.D(1) == doctest::Approx(0.5));

  auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
  CHECK(c.B(5) == 1.0);
  CHECK(c.D(5) == 5.0);
  CHECK(c.dnsq(0) == doctest::Approx(std::exp(-1.0)));
  CHECK(c.phi0sq(3) == doctest::Approx(1.0 / 6.0));

  auto r = get_family("racah",
                      {{"a", 11.5}, {"b", 0.8}, {"d", 1.5}}, 8);
  CHECK(r.lambda.epsilon == 1);
  CHECK(r.lambda.epsilon_p == 1);
  // E(n) = eps n (n + d~), d~ = a+b+c-d-1 with c = -N
  double dt = 11.5 + 0.8 - 8.0 - 1.5 - 1.0;
  CHECK(r.E(1) == doctest::Approx(1.0 + dt));
  CHECK(r.varphi(2) == doctest::Approx((4.0 + 1.5 + 1.0) / (1.5 + 1.0)));
}

TEST_CASE("validation names the violated inequality") {
  CHECK_THROWS_WITH_AS(get_family("krawtchouk", {{"p", 1.2}}, 5),
                       doctest::Contains("0<p<1"), InvalidParameterError);
  CHECK_NOTHROW(get_family("meixner", {{"beta", 1.0}, {"c", 0.5}}, std::nullopt));
  CHECK_THROWS_AS(get_family("meixner", {{"beta", 1.0}, {"c", 1.5}}, std::nullopt),
                  InvalidParameterError);
  CHECK_THROWS_AS(get_family("krawtchouk", {{"p", 0.5}}, std::nullopt),
                  InvalidParameterError);  // missing N
  CHECK_THROWS_AS(get_family("charlier", {{"a", 1.0}}, 5),
                  InvalidParameterError);  // N on an infinite family
  CHECK_THROWS_AS(
      get_family("krawtchouk", {{"p", 0.5}, {"bogus", 1.0}}, 5),
      InvalidParameterError);  // unknown parameter name
  CHECK_THROWS_AS(get_family("q_charlier", {{"a", 1.0}, {"q", 1.5}}, std::nullopt),
                  InvalidParameterError);  // q outside (0,1)
}

TEST_CASE("racah epsilon resolution covers all four quadrants") {
  int seen = 0;
  for (const auto& gp : default_grid("racah")) {
    auto f = get_family("racah", gp.params, gp.N);
    seen |= (f.lambda.epsilon > 0 ? 1 : 2) | (f.lambda.epsilon_p > 0 ? 4 : 8);
  }
  CHECK(seen == 15);
}

TEST_CASE("closed-form polynomial spot values") {
  auto c = get_family("charlier", {{"a", 1.0}}, std::nullopt);
  CHECK(c.P(0, 7) == 1.0);
  CHECK(c.P(1, 2) == doctest::Approx(-1.0));  // 1 - x at x=2
  auto k = get_family("krawtchouk", {{"p", 0.5}}, 2);
  CHECK(k.P(1, 0) == doctest::Approx(1.0));
  CHECK(k.P(1, 1) == doctest::Approx(0.0));
  CHECK(k.P(1, 2) == doctest::Approx(-1.0));
}

TEST_CASE("structural invariants hold on every default grid point") {
  for (const auto& s : Catalog::instance().families()) {
    for (const auto& gp : s.grid) {
      CAPTURE(s.info.id);
      std::string point = render_params(gp.params, gp.N);
      CAPTURE(point);
      BoundFamily f = get_family(s.info.id, gp.params, gp.N);
      int W = s.info.finite ? *gp.N : 25;
      // boundary structure
      CHECK(f.D(0) == 0.0);
      CHECK(f.eta(0) == 0.0);
      CHECK(f.E(0) == 0.0);
      CHECK(f.C(0) == 0.0);
      if (s.info.finite) CHECK(f.B(*gp.N) == 0.0);
      // positivity on the lattice
      for (int x = 0; x < W; ++x) CHECK(f.B(x) > 0.0);
      for (int x = 1; x <= W; ++x) CHECK(f.D(x) > 0.0);
      // strictly increasing spectrum (bounded q-spectra saturate in
      // binary64 once q^n underflows the increment; never decreasing)
      int ncheck = s.info.finite ? std::min(*gp.N, 50) : 50;
      bool saturated = false;
      for (int n = 0; n < ncheck; ++n) {
        double e0 = f.E(n), e1 = f.E(n + 1);
        CHECK(e1 >= e0);
        if (!saturated) {
          if (e1 == e0 && std::fabs(e0) > 0.5)
            saturated = true;
          else
            CHECK(e1 > e0);
        }
      }
      // universal normalisation
      for (int n : {0, 1, 3}) {
        if (s.info.finite && n > *gp.N) continue;
        CHECK(f.P(n, 0) == doctest::Approx(1.0).epsilon(1e-12));
      }
      for (int x : {0, 1, 3}) {
        if (s.info.finite && x > *gp.N) continue;
        CHECK(f.P(0, x) == doctest::Approx(1.0).epsilon(1e-12));
      }
      if (f.phi0sq) CHECK(f.phi0sq(0) == doctest::Approx(1.0));
      // closure constraints of Eq. (4.56) pattern
      CHECK(f.closure.r0_2 == doctest::Approx(f.closure.r1_1).epsilon(1e-14));
      CHECK(f.closure.r0_1 == doctest::Approx(2.0 * f.closure.r1_0).epsilon(1e-14));
      // q is never shifted
      if (s.info.q_type && f.has_shift)
        CHECK(f.shifted_params.at("q") == f.lambda.at("q"));
    }
  }
}

TEST_CASE("self-dual families have symmetric P tables") {
  for (const char* id : {"krawtchouk", "charlier", "meixner",
                         "affine_q_krawtchouk",
                         "alternative_affine_q_krawtchouk"}) {
    auto gp = default_grid(id).front();
    auto f = get_family(id, gp.params, gp.N);
    int m = f.info.finite ? *gp.N : 8;
    for (int n = 0; n <= m; ++n)
      for (int x = 0; x <= m; ++x) {
        double a = f.P(n, x), b = f.P(x, n);
        CHECK(std::fabs(a - b) <= 1e-11 * std::max(1.0, std::fabs(a)));
      }
  }
}

TEST_CASE("duality partners match B <-> -A_n, D <-> -C_n") {
  for (const char* id : {"hahn", "q_hahn", "quantum_q_krawtchouk",
                         "q_krawtchouk", "little_q_jacobi", "q_meixner",
                         "little_q_laguerre", "alternative_q_charlier",
                         "q_charlier"}) {
    for (const auto& gp : default_grid(id)) {
      auto f = get_family(id, gp.params, gp.N);
      auto p = get_family(f.partner_id, f.partner_params, f.partner_N);
      CAPTURE(id);
      int m = f.info.finite ? *gp.N : 12;
      for (int k = 0; k <= m; ++k) {
        CHECK(p.B(k) == doctest::Approx(-f.A(k)).epsilon(1e-12));
        CHECK(p.D(k) == doctest::Approx(-f.C(k)).epsilon(1e-12));
        CHECK(p.eta(k) == doctest::Approx(f.E(k)).epsilon(1e-12));
        CHECK(p.E(k) == doctest::Approx(f.eta(k)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("review reflections: alternative families vs x -> N-x") {
  // alternative q-Hahn vs q-Hahn
  {
    Params p{{"a", 0.5}, {"b", 0.3}, {"q", 0.7}};
    auto alt = get_family("alternative_q_hahn", p, 8);
    auto base = get_family("q_hahn", p, 8);
    for (int x = 0; x <= 8; ++x) {
      CHECK(alt.B(x) == doctest::Approx(base.D(8 - x)).epsilon(1e-13));
      CHECK(alt.D(x) == doctest::Approx(base.B(8 - x)).epsilon(1e-13));
    }
  }
  // alternative q-Krawtchouk vs q-Krawtchouk
  {
    Params p{{"p", 2.0}, {"q", 0.7}};
    auto alt = get_family("alternative_q_krawtchouk", p, 8);
    auto base = get_family("q_krawtchouk", p, 8);
    for (int x = 0; x <= 8; ++x) {
      CHECK(alt.B(x) == doctest::Approx(base.D(8 - x)).epsilon(1e-13));
      CHECK(alt.D(x) == doctest::Approx(base.B(8 - x)).epsilon(1e-13));
    }
  }
  // alternative affine q-Krawtchouk vs quantum q-Krawtchouk
  {
    Params p{{"p", 20.0}, {"q", 0.7}};
    auto alt = get_family("alternative_affine_q_krawtchouk", p, 8);
    auto base = get_family("quantum_q_krawtchouk", p, 8);
    for (int x = 0; x <= 8; ++x) {
      CHECK(alt.B(x) == doctest::Approx(base.D(8 - x)).epsilon(1e-13));
      CHECK(alt.D(x) == doctest::Approx(base.B(8 - x)).epsilon(1e-13));
    }
  }
  // dual quantum q-Krawtchouk vs affine q-Krawtchouk with p -> p^-1 q^-N-1
  {
    double p = 20.0, q = 0.7;
    int N = 8;
    auto dual = get_family("dual_quantum_q_krawtchouk", {{"p", p}, {"q", q}}, N);
    auto aff = get_family("affine_q_krawtchouk",
                          {{"p", std::pow(q, -N - 1) / p}, {"q", q}}, N);
    for (int x = 0; x <= N; ++x) {
      CHECK(dual.B(x) == doctest::Approx(aff.D(N - x)).epsilon(1e-13));
      CHECK(dual.D(x) == doctest::Approx(aff.B(N - x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("shifted families stay valid and respect kappa conventions") {
  for (const auto& s : Catalog::instance().families()) {
    auto gp = s.grid.front();
    auto f = get_family(s.info.id, gp.params, gp.N);
    if (!f.has_shift) continue;
    CAPTURE(s.info.id);
    CHECK_NOTHROW(shifted_family(f));
    CHECK(f.kappa > 0.0);
  }
}
