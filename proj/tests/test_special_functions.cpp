#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "opq/errors.hpp"
#include "opq/special_functions.hpp"

using namespace opq;

namespace {

// independent oracle: plain forward product, no log bookkeeping
double poch_direct(double a, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double qpoch_direct(double a, double q, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= 1.0 - a * std::pow(q, k);
  return p;
}

// Horner-style backward evaluation of a terminating series given the list
// of term ratios r_k = t_{k+1}/t_k, k = 0..K-1.
double backward_sum(const std::vector<double>& ratios) {
  double s = 1.0;
  for (auto it = ratios.rbegin(); it != ratios.rend(); ++it) s = 1.0 + *it * s;
  return s;
}

}  // namespace

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer(3.0, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));  // 5!
  CHECK(pochhammer(-2.0, 4) == 0.0);
  CHECK(pochhammer_sl(-2.0, 4).is_zero());
}

TEST_CASE("pochhammer recurrence (a)_{n+1} = (a)_n (a+n)") {
  for (double a : {0.37, 2.0, -5.5, 13.0}) {
    SignedLog p = SignedLog::one();
    for (int n = 0; n < 1000; ++n) {
      SignedLog next = pochhammer_sl(a, n + 1);
      SignedLog expect = p * SignedLog::from(a + n);
      if (expect.is_zero()) {
        CHECK(next.is_zero());
      } else {
        CHECK(next.sign == expect.sign);
        CHECK(next.logabs == doctest::Approx(expect.logabs).epsilon(1e-14));
      }
      p = next;
    }
  }
}

TEST_CASE("pochhammer stays finite in log form for n = 10^4") {
  SignedLog p = pochhammer_sl(2.5, 10000);
  CHECK(std::isfinite(p.logabs));
  CHECK(p.sign == 1);
}

TEST_CASE("q-pochhammer basics") {
  CHECK(q_pochhammer(0.5, 0.5, 1) == doctest::Approx(0.5));
  CHECK(q_pochhammer(0.77, 0.3, 0) == 1.0);
  CHECK(q_pochhammer(1.0, 0.6, 3) == 0.0);
  CHECK_THROWS_AS(q_pochhammer(0.5, 1.5, 2), InvalidParameterError);
  CHECK_THROWS_AS(q_pochhammer(0.5, -0.1, 2), InvalidParameterError);
}

TEST_CASE("q-pochhammer recurrence (a;q)_{n+1} = (a;q)_n (1-aq^n)") {
  for (double a : {0.3, -1.7, 4.0}) {
    for (double q : {0.3, 0.7}) {
      for (int n : {0, 1, 7, 50, 999}) {
        SignedLog lhs = q_pochhammer_sl(a, q, n + 1);
        SignedLog rhs = q_pochhammer_sl(a, q, n) *
                        SignedLog::from(1.0 - a * std::pow(q, n));
        if (rhs.is_zero()) {
          CHECK(lhs.is_zero());
        } else {
          CHECK(lhs.sign == rhs.sign);
          CHECK(lhs.logabs == doctest::Approx(rhs.logabs).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("q-pochhammer agrees with direct product") {
  CHECK(q_pochhammer(2.5, 0.7, 12) ==
        doctest::Approx(qpoch_direct(2.5, 0.7, 12)).epsilon(1e-13));
  CHECK(pochhammer(3.25, 9) == doctest::Approx(poch_direct(3.25, 9)));
}

TEST_CASE("q-pochhammer at infinity") {
  // (a;q)_inf equals the n->large limit of the finite product
  double v = q_pochhammer_inf(0.4, 0.6);
  CHECK(v == doctest::Approx(qpoch_direct(0.4, 0.6, 200)).epsilon(1e-13));
}

TEST_CASE("2F1(-1,-1;-2|2) = 0") {
  SeriesParameters p;
  p.numerator_params = {-1.0, -1.0};
  p.denominator_params = {-2.0};
  p.argument = 2.0;
  CHECK(hypergeometric_F(p) == doctest::Approx(0.0));
}

TEST_CASE("rFs with a zero numerator parameter is 1") {
  SeriesParameters p;
  p.numerator_params = {0.0, 3.7};
  p.denominator_params = {1.2};
  p.argument = 0.9;
  CHECK(hypergeometric_F(p) == 1.0);
}

TEST_CASE("2F0(-2,-x;-|-1) at x=2 is -1") {
  SeriesParameters p;
  p.numerator_params = {-2.0, -2.0};
  p.argument = -1.0;
  CHECK(hypergeometric_F(p) == doctest::Approx(-1.0));  // 1 - 4 + 2
}

TEST_CASE("denominator Pochhammer zero before termination is singular") {
  SeriesParameters p;
  p.numerator_params = {-5.0, 1.3};
  p.denominator_params = {-2.0};
  p.argument = 1.0;
  CHECK_THROWS_AS(hypergeometric_F(p), SingularParameterError);
}

TEST_CASE("non-terminating 2F1 matches a converged reference") {
  // 2F1(1,1;2|z) = -log(1-z)/z
  SeriesParameters p;
  p.numerator_params = {1.0, 1.0};
  p.denominator_params = {2.0};
  p.argument = 0.25;
  CHECK(hypergeometric_F(p) ==
        doctest::Approx(-std::log(0.75) / 0.25).epsilon(1e-14));
}

TEST_CASE("phi with first numerator parameter 1 gives 1") {
  SeriesParameters p;
  p.numerator_params = {1.0, 0.4};
  p.denominator_params = {0.2};
  p.argument = 0.8;
  p.q_base = 0.5;
  CHECK(basic_hypergeometric_phi(p) == 1.0);
}

TEST_CASE("phi with argument 0 gives 1") {
  SeriesParameters p;
  p.numerator_params = {0.9, 0.4};
  p.denominator_params = {0.2};
  p.argument = 0.0;
  p.q_base = 0.5;
  CHECK(basic_hypergeometric_phi(p) == 1.0);
}

TEST_CASE("2phi1(q^-1,q^-1;q^-2|q;q) at q=0.5 equals the two-term sum") {
  const double q = 0.5;
  SeriesParameters p;
  p.numerator_params = {1.0 / q, 1.0 / q};
  p.denominator_params = {1.0 / (q * q)};
  p.argument = q;
  p.q_base = q;
  p.terminate_at = 1;
  // n=0 term: 1.  n=1 term: (1-q^-1)^2 / ((1-q^-2)(1-q)) * q
  double t1 = (1.0 - 1.0 / q) * (1.0 - 1.0 / q) /
              ((1.0 - 1.0 / (q * q)) * (1.0 - q)) * q;
  CHECK(basic_hypergeometric_phi(p) == doctest::Approx(1.0 + t1));
}

TEST_CASE("terminating series forward equals Horner backward") {
  // 3F2(-6, 2.5, -9; 4, -12 | 0.8): ratios collected by hand
  const std::vector<double> an = {-6.0, 2.5, -9.0};
  const std::vector<double> bn = {4.0, -12.0};
  const double z = 0.8;
  std::vector<double> ratios;
  for (int k = 0; k < 6; ++k) {
    double r = z / (k + 1.0);
    for (double a : an) r *= a + k;
    for (double b : bn) r /= b + k;
    ratios.push_back(r);
  }
  SeriesParameters p;
  p.numerator_params = an;
  p.denominator_params = bn;
  p.argument = z;
  CHECK(hypergeometric_F(p) ==
        doctest::Approx(backward_sum(ratios)).epsilon(1e-12));

  // 3phi2 with the (-1)^... q^... factor absent (r = s+1)
  const double q = 0.7;
  const std::vector<double> aq = {std::pow(q, -5.0), 0.3, 2.0};
  const std::vector<double> bq = {0.4, 0.9};
  std::vector<double> qratios;
  for (int k = 0; k < 5; ++k) {
    double r = 0.6 / (1.0 - std::pow(q, k + 1));
    for (double a : aq) r *= 1.0 - a * std::pow(q, k);
    for (double b : bq) r /= 1.0 - b * std::pow(q, k);
    qratios.push_back(r);
  }
  SeriesParameters pq;
  pq.numerator_params = aq;
  pq.denominator_params = bq;
  pq.argument = 0.6;
  pq.q_base = q;
  pq.terminate_at = 5;
  CHECK(basic_hypergeometric_phi(pq) ==
        doctest::Approx(backward_sum(qratios)).epsilon(1e-12));
}

TEST_CASE("phi prefactor handling for r > s+1 (2phi0)") {
  // 2phi0(q^-1, q^-2; - | q; z) terminates after 2 terms; check against a
  // hand-expanded sum including the (-1)^{-n} q^{-n(n-1)/2} factor.
  const double q = 0.4, z = 0.3;
  const double a1 = 1.0 / q, a2 = 1.0 / (q * q);
  double t1 = (1.0 - a1) * (1.0 - a2) / (1.0 - q) * (-1.0) * z;
  double t2 = t1 * (1.0 - a1 * q) * (1.0 - a2 * q) / (1.0 - q * q) *
              (-1.0) * std::pow(q, -1.0) * z;
  SeriesParameters p;
  p.numerator_params = {a1, a2};
  p.argument = z;
  p.q_base = q;
  p.terminate_at = 2;
  CHECK(basic_hypergeometric_phi(p) == doctest::Approx(1.0 + t1 + t2));
}
