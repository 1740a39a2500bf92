#include "opq/special_functions.hpp"

#include <cmath>
#include <limits>

#include "opq/errors.hpp"

namespace opq {

namespace {

constexpr double kTailRelative = 1e-17;
constexpr int kTailStreak = 3;
constexpr int kMaxTerms = 200000;

bool is_nonpositive_integer(double a) {
  return a <= 0.0 && a == std::floor(a);
}

void check_q(const double q) {
  if (!(q > 0.0 && q < 1.0))
    throw InvalidParameterError("q-base must lie strictly inside (0,1)");
}

// Shared summation loop.  `ratio(k)` returns the multiplicative step from
// term k to term k+1; an exact zero numerator factor ends the series.
// `last_term`, when set, is the index of the last term to include.
template <class Ratio>
SignedLog sum_series(std::optional<int> last_term, Ratio ratio) {
  SignedLog term = SignedLog::one();
  // running sum kept relative to a floating max-log scale
  double scale = 0.0;  // log scale
  double acc = 1.0;    // sum / exp(scale), starts at term 0 = 1
  int below = 0;
  for (int k = 0;; ++k) {
    if (last_term && k >= *last_term) break;
    if (k >= kMaxTerms)
      throw Error("series did not converge within the term budget");
    SignedLog r = ratio(k);
    if (r.sign == 0) break;  // structural zero: all later terms vanish
    term *= r;
    double rel;
    if (term.logabs > scale) {
      acc *= std::exp(scale - term.logabs);
      scale = term.logabs;
      acc += term.sign;
      rel = 1.0;
    } else {
      double t = term.sign * std::exp(term.logabs - scale);
      acc += t;
      rel = std::fabs(t) / std::max(std::fabs(acc), 1e-300);
    }
    if (!last_term) {
      if (rel < kTailRelative) {
        if (++below >= kTailStreak) break;
      } else {
        below = 0;
      }
    }
  }
  if (acc == 0.0) return SignedLog();
  return SignedLog(scale + std::log(std::fabs(acc)), acc > 0.0 ? 1 : -1);
}

}  // namespace

SignedLog pochhammer_sl(double a, int n) {
  SignedLog p = SignedLog::one();
  for (int k = 0; k < n; ++k) {
    double f = a + k;
    if (f == 0.0) return SignedLog();
    p *= SignedLog::from(f);
  }
  return p;
}

double pochhammer(double a, int n) { return pochhammer_sl(a, n).value(); }

SignedLog q_pochhammer_sl(double a, double q, int n) {
  check_q(q);
  SignedLog p = SignedLog::one();
  for (int k = 0; k < n; ++k) {
    double f = 1.0 - a * std::pow(q, k);
    if (f == 0.0) return SignedLog();
    p *= SignedLog::from(f);
  }
  return p;
}

double q_pochhammer(double a, double q, int n) {
  return q_pochhammer_sl(a, q, n).value();
}

double q_pochhammer_inf(double a, double q) {
  check_q(q);
  double p = 1.0;
  double aq = a;
  for (int k = 0; k < kMaxTerms; ++k) {
    p *= 1.0 - aq;
    aq *= q;
    if (std::fabs(aq) < 1e-18) break;
  }
  return p;
}

SignedLog hypergeometric_F_sl(const SeriesParameters& p) {
  // structural termination: smallest -a over nonpositive-integer numerators
  std::optional<int> stop = p.terminate_at;
  for (double a : p.numerator_params) {
    if (is_nonpositive_integer(a)) {
      int na = static_cast<int>(-a);
      if (!stop || na < *stop) stop = na;
    }
  }
  return sum_series(stop, [&](int k) {
    SignedLog r = SignedLog::one();
    for (double a : p.numerator_params) {
      double f = a + k;
      if (f == 0.0) return SignedLog();
      r *= SignedLog::from(f);
    }
    for (double b : p.denominator_params) {
      double f = b + k;
      if (f == 0.0)
        throw SingularParameterError(
            "denominator Pochhammer vanishes before the series terminates");
      r /= SignedLog::from(f);
    }
    r *= SignedLog::from(p.argument);
    r /= SignedLog::from(k + 1.0);
    return r;
  });
}

double hypergeometric_F(const SeriesParameters& p) {
  return hypergeometric_F_sl(p).value();
}

SignedLog basic_hypergeometric_phi_sl(const SeriesParameters& p) {
  if (!p.q_base) throw InvalidParameterError("phi series needs a q-base");
  const double q = *p.q_base;
  check_q(q);
  if (p.argument == 0.0) return SignedLog::one();
  const int r = static_cast<int>(p.numerator_params.size());
  const int s = static_cast<int>(p.denominator_params.size());
  const int e = 1 + s - r;
  return sum_series(p.terminate_at, [&](int k) {
    SignedLog ratio = SignedLog::one();
    const double qk = std::pow(q, k);
    for (double a : p.numerator_params) {
      double f = 1.0 - a * qk;
      if (f == 0.0) return SignedLog();
      ratio *= SignedLog::from(f);
    }
    for (double b : p.denominator_params) {
      double f = 1.0 - b * qk;
      if (f == 0.0)
        throw SingularParameterError(
            "denominator q-Pochhammer vanishes before the series terminates");
      ratio /= SignedLog::from(f);
    }
    if (e != 0) {
      // step change of (-1)^{en} q^{e n(n-1)/2}: multiply (-1)^e q^{ek}
      ratio *= SignedLog(e * k * std::log(q), (e % 2 != 0) ? -1 : 1);
    }
    ratio *= SignedLog::from(p.argument);
    ratio /= SignedLog::from(1.0 - std::pow(q, k + 1));
    return ratio;
  });
}

double basic_hypergeometric_phi(const SeriesParameters& p) {
  return basic_hypergeometric_phi_sl(p).value();
}

}  // namespace opq
