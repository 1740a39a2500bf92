#ifndef OPQ_SIGNED_LOG_HPP
#define OPQ_SIGNED_LOG_HPP

#include <cmath>
#include <limits>
#include <vector>

namespace opq {

// Product of many factors tracked as log-magnitude plus sign, so that
// (beta)_x, q^{x^2} and friends never leave the double range mid-flight.
// An exact zero is kept as a dedicated state, not as log(0) noise.
struct SignedLog {
  double logabs = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1

  SignedLog() = default;
  SignedLog(double la, int s) : logabs(la), sign(s) {}

  static SignedLog from(double v) {
    if (v == 0.0) return SignedLog();
    return SignedLog(std::log(std::fabs(v)), v > 0.0 ? 1 : -1);
  }
  static SignedLog one() { return SignedLog(0.0, 1); }

  bool is_zero() const { return sign == 0; }

  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logabs);
  }

  SignedLog& operator*=(const SignedLog& o) {
    if (sign == 0 || o.sign == 0) { *this = SignedLog(); return *this; }
    logabs += o.logabs;
    sign *= o.sign;
    return *this;
  }
  SignedLog& operator/=(const SignedLog& o) {
    // division by exact zero is a caller bug; keep it loud
    logabs -= o.logabs;
    sign *= o.sign;
    if (sign == 0 || o.sign == 0) *this = SignedLog(std::numeric_limits<double>::quiet_NaN(), 0);
    return *this;
  }
  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }

  SignedLog pow(double e) const {
    if (sign == 0) return SignedLog();
    return SignedLog(logabs * e, sign < 0 ? (static_cast<long long>(e) % 2 ? -1 : 1) : 1);
  }
};

// Sum of signed-log terms via max-log extraction.  Accurate as long as the
// result is representable once the common exponent is pulled out.
inline SignedLog signed_log_sum(const std::vector<SignedLog>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0 && t.logabs > m) m = t.logabs;
  if (!std::isfinite(m)) return SignedLog();
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.logabs - m);
  if (acc == 0.0) return SignedLog();
  return SignedLog(m + std::log(std::fabs(acc)), acc > 0.0 ? 1 : -1);
}

}  // namespace opq

#endif
