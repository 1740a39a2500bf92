#ifndef OPQ_SPECIAL_FUNCTIONS_HPP
#define OPQ_SPECIAL_FUNCTIONS_HPP

#include <optional>
#include <vector>

#include "opq/signed_log.hpp"

namespace opq {

// (a)_n = a(a+1)...(a+n-1), (a)_0 = 1
SignedLog pochhammer_sl(double a, int n);
double pochhammer(double a, int n);

// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}), (a;q)_0 = 1.  Requires 0 < q < 1.
SignedLog q_pochhammer_sl(double a, double q, int n);
double q_pochhammer(double a, double q, int n);

// (a;q)_inf, absolutely convergent for 0 < q < 1
double q_pochhammer_inf(double a, double q);

struct SeriesParameters {
  std::vector<double> numerator_params;
  std::vector<double> denominator_params;
  double argument = 0.0;
  std::optional<double> q_base;      // set for r_phi_s, inside (0,1)
  // Number of the last nonzero term when the caller knows the series
  // terminates (e.g. a numerator parameter is q^{-n}).  q^{-n}*q^n != 1
  // in floating point, so structural knowledge must come from the caller.
  std::optional<int> terminate_at;
};

// {}_rF_s(a_1..a_r; b_1..b_s | z), term-by-term with early exit at the
// terminating index; non-terminating input stops after 3 consecutive terms
// below 1e-17 relative.
SignedLog hypergeometric_F_sl(const SeriesParameters& p);
double hypergeometric_F(const SeriesParameters& p);

// {}_r phi_s(a_1..a_r; b_1..b_s | q; z) including the
// (-1)^{(1+s-r)n} q^{(1+s-r)n(n-1)/2} factor.
SignedLog basic_hypergeometric_phi_sl(const SeriesParameters& p);
double basic_hypergeometric_phi(const SeriesParameters& p);

}  // namespace opq

#endif
