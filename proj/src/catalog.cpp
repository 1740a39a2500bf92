#include "opq/catalog.hpp"

#include <cmath>
#include <sstream>

#include "opq/errors.hpp"
#include "opq/signed_log.hpp"
#include "opq/special_functions.hpp"

namespace opq {

namespace {

// --- small builders -------------------------------------------------------

// 1 - q^e and q^e - 1 through expm1, exact zeros at e = 0
double one_m_qe(double lq, double e) { return -std::expm1(e * lq); }
double qe_m_one(double lq, double e) { return std::expm1(e * lq); }

SignedLog poch_prod(std::initializer_list<double> as, int n) {
  SignedLog p = SignedLog::one();
  for (double a : as) p *= pochhammer_sl(a, n);
  return p;
}

SignedLog qpoch_prod(std::initializer_list<double> as, double q, int n) {
  SignedLog p = SignedLog::one();
  for (double a : as) p *= q_pochhammer_sl(a, q, n);
  return p;
}

// N! / (x! (N-x)!)
SignedLog binom_sl(int N, int x) {
  return pochhammer_sl(1.0, N) / (pochhammer_sl(1.0, x) * pochhammer_sl(1.0, N - x));
}

// (q;q)_N / ((q;q)_x (q;q)_{N-x})
SignedLog qbinom_sl(double q, int N, int x) {
  return q_pochhammer_sl(q, q, N) /
         (q_pochhammer_sl(q, q, x) * q_pochhammer_sl(q, q, N - x));
}

SignedLog powi_sl(double b, double e) { return SignedLog::from(b).pow(e); }

// Closure coefficients for the q-scheme pattern
//   R_1 = rho z',  R_0 = rho (z'^2 + g0),  R_-1 = rho (w2 z'^2 + w1 z' + w0)
// with z' = z + c0 and rho = (q^{-1/2} - q^{1/2})^2, expanded into raw z.
ClosureCoefficients q_closure(double q, double c0, double g0, double w2,
                              double w1, double w0) {
  const double rho = std::pow(1.0 / std::sqrt(q) - std::sqrt(q), 2);
  ClosureCoefficients r;
  r.r1_1 = rho;
  r.r1_0 = rho * c0;
  r.r0_2 = rho;
  r.r0_1 = 2.0 * rho * c0;
  r.r0_0 = rho * (c0 * c0 + g0);
  r.rm1_2 = rho * w2;
  r.rm1_1 = rho * (2.0 * w2 * c0 + w1);
  r.rm1_0 = rho * (w2 * c0 * c0 + w1 * c0 + w0);
  return r;
}

// dual closure of `r` gives the closure of the partner family
ClosureCoefficients dual_closure(const ClosureCoefficients& r, double eta1,
                                 double B0) {
  const double etam1 = r.rm1_2 - eta1;
  ClosureCoefficients d;
  d.r1_1 = r.r1_1;
  d.r1_0 = r.rm1_2;
  d.r0_2 = r.r1_1;
  d.r0_1 = 2.0 * r.rm1_2;
  d.r0_0 = -eta1 * etam1;
  d.rm1_2 = r.r1_0;
  d.rm1_1 = r.rm1_1;
  d.rm1_0 = eta1 * etam1 * B0;
  return d;
}

void require_params(const FamilyInfo& info, const Params& p,
                    std::optional<int> N) {
  for (const auto& name : info.param_names)
    if (!p.count(name))
      throw InvalidParameterError(info.id + ": missing parameter " + name);
  for (const auto& [k, v] : p) {
    (void)v;
    bool known = false;
    for (const auto& name : info.param_names) known |= (name == k);
    if (!known)
      throw InvalidParameterError(info.id + ": unknown parameter " + k);
  }
  if (info.finite) {
    if (!N || *N < 1)
      throw InvalidParameterError(info.id + ": needs integer N >= 1");
  } else if (N) {
    throw InvalidParameterError(info.id + ": N is not a parameter of an infinite family");
  }
  if (info.q_type) {
    double q = p.at("q");
    if (!(q > 0.0 && q < 1.0))
      throw InvalidParameterError(info.id + ": 0<q<1 violated");
  }
}

struct RangeDef {
  std::function<bool(const Params&, int)> ok;
  const char* text;
  int eps;
  int epsp;
};

std::function<ParameterVector(const Params&, std::optional<int>)>
range_validator(const FamilyInfo& info, std::vector<RangeDef> ranges) {
  return [info, ranges](const Params& p, std::optional<int> N) {
    require_params(info, p, N);
    int nn = N.value_or(0);
    for (size_t i = 0; i < ranges.size(); ++i) {
      if (ranges[i].ok(p, nn)) {
        ParameterVector v;
        v.values = p;
        v.N = N;
        v.epsilon = ranges[i].eps;
        v.epsilon_p = ranges[i].epsp;
        v.range_index = static_cast<int>(i);
        return v;
      }
    }
    std::ostringstream os;
    os << info.id << ": parameters outside every validated range (";
    for (size_t i = 0; i < ranges.size(); ++i)
      os << (i ? " | " : "") << ranges[i].text;
    os << " violated)";
    throw InvalidParameterError(os.str());
  };
}

void set_varphi_from_eta(BoundFamily& f) {
  auto eta = f.eta;
  double e1 = eta(1);
  f.varphi = [eta, e1](int x) { return (eta(x + 1) - eta(x)) / e1; };
}

// transpose of the partner's polynomial table, used for the duals the
// review does not list
void bind_as_dual_of(BoundFamily& f, const std::string& partner_id) {
  BoundFamily partner = get_family(partner_id, f.lambda.values, f.lambda.N);
  f.P = [partner](int n, int x) { return partner.P(x, n); };
  f.closure = dual_closure(partner.closure, partner.eta(1), partner.B(0));
  f.closure_from_partner = true;
  f.partner_id = partner_id;
  f.partner_params = f.lambda.values;
  f.partner_N = f.lambda.N;
  f.has_shift = false;
}

double get(const Params& p, const char* k) { return p.at(k); }

// ---------------------------------------------------------------------------
// 5.1 finite families

FamilySpec make_racah() {
  FamilySpec s;
  s.info = {"racah", true, false, {"a", "b", "d"},
            "one of: d>0,a>N+d,0<b<1+d | d<-2N,a>0,N+d<b<1-N | d>0,0<a<1+d,b<1-N | d<-2N,N+d<a<1-N,b<1+d",
            "self-dual (d <-> a+b+c-d-1)", "KS1.2"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int N) {
          return get(p, "d") > 0 && get(p, "a") > N + get(p, "d") &&
                 0 < get(p, "b") && get(p, "b") < 1 + get(p, "d");
        }, "d>0, a>N+d, 0<b<1+d", 1, 1},
       {[](const Params& p, int N) {
          return get(p, "d") < -2.0 * N && get(p, "a") > 0 &&
                 N + get(p, "d") < get(p, "b") && get(p, "b") < 1.0 - N;
        }, "d<-2N, a>0, N+d<b<1-N", 1, -1},
       {[](const Params& p, int N) {
          return get(p, "d") > 0 && 0 < get(p, "a") &&
                 get(p, "a") < 1 + get(p, "d") && get(p, "b") < 1.0 - N;
        }, "d>0, 0<a<1+d, b<1-N", -1, 1},
       {[](const Params& p, int N) {
          return get(p, "d") < -2.0 * N && N + get(p, "d") < get(p, "a") &&
                 get(p, "a") < 1.0 - N && get(p, "b") < 1 + get(p, "d");
        }, "d<-2N, N+d<a<1-N, b<1+d", -1, -1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), d = f.lambda.at("d");
    const int N = *f.lambda.N;
    const double c = -static_cast<double>(N);
    const double dt = a + b + c - d - 1.0;  // d~
    const double eps = f.lambda.epsilon, epp = f.lambda.epsilon_p;
    f.B = [=](int x) {
      return -eps * (x + a) * (x + b) * (x + c) * (x + d) /
             ((2 * x + d) * (2 * x + 1 + d));
    };
    f.D = [=](int x) {
      return -eps * (x + d - a) * (x + d - b) * (x + d - c) * x /
             ((2 * x - 1 + d) * (2 * x + d));
    };
    f.E = [=](int n) { return eps * n * (n + dt); };
    f.eta = [=](int x) { return epp * x * (x + d); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, n + dt, -(double)x, x + d};
      sp.denominator_params = {a, b, c};
      sp.argument = 1.0;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = poch_prod({a, b, c, d}, x) /
                    poch_prod({1 + d - a, 1 + d - b, 1 + d - c, 1.0}, x);
      v *= SignedLog::from((2 * x + d) / d);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = poch_prod({a, b, c, dt}, n) /
                    poch_prod({1 + dt - a, 1 + dt - b, 1 + dt - c, 1.0}, n);
      v *= SignedLog::from((2 * n + dt) / dt);
      SignedLog d0 = poch_prod({1 + d - a, 1 + d - b, 1 + d - c}, N) /
                     (pochhammer_sl(dt + 1, N) * pochhammer_sl(d + 1, 2 * N));
      d0 *= SignedLog(0.0, (N % 2) ? -1 : 1);  // (-1)^N
      return (v * d0).value();
    };
    f.A = [=](int n) {
      return epp * (n + a) * (n + b) * (n + c) * (n + dt) /
             ((2 * n + dt) * (2 * n + 1 + dt));
    };
    f.C = [=](int n) {
      return epp * (n + dt - a) * (n + dt - b) * (n + dt - c) * n /
             ((2 * n - 1 + dt) * (2 * n + dt));
    };
    f.closure.r1_1 = 0.0;
    f.closure.r1_0 = 2.0 * eps;
    f.closure.r0_2 = 0.0;
    f.closure.r0_1 = 4.0 * eps;
    f.closure.r0_0 = dt * dt - 1.0;
    f.closure.rm1_2 = 2.0 * epp;
    f.closure.rm1_1 = eps * epp * (2.0 * (a * b + b * c + c * a) - (1 + d) * (1 + dt));
    f.closure.rm1_0 = epp * a * b * c * (dt - 1.0);
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"a", a + 1}, {"b", b + 1}, {"d", d + 1}};
    f.shifted_N = N - 1;
    f.partner_id = "racah";
    f.partner_params = {{"a", a}, {"b", b}, {"d", dt}};
    f.partner_N = N;
    f.varphi = [=](int x) { return (2.0 * x + d + 1.0) / (d + 1.0); };
  };
  // one grid point per (eps, eps') quadrant, N = 8
  s.grid = {{{{"a", 11.5}, {"b", 0.8}, {"d", 1.5}}, 8},
            {{{"a", 2.0}, {"b", -8.0}, {"d", -18.5}}, 8},
            {{{"a", 1.1}, {"b", -8.5}, {"d", 2.2}}, 8},
            {{{"a", -8.2}, {"b", -18.2}, {"d", -18.5}}, 8}};
  return s;
}

FamilySpec make_hahn() {
  FamilySpec s;
  s.info = {"hahn", true, false, {"a", "b"},
            "a,b>0 | a,b<1-N", "dual_hahn", "KS1.5"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0 && get(p, "b") > 0; },
        "a,b>0", 1, 1},
       {[](const Params& p, int N) {
          return get(p, "a") < 1.0 - N && get(p, "b") < 1.0 - N;
        }, "a,b<1-N", -1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b");
    const int N = *f.lambda.N;
    const double eps = f.lambda.epsilon;
    f.B = [=](int x) { return eps * (x + a) * (N - x); };
    f.D = [=](int x) { return eps * x * (b + N - x); };
    f.E = [=](int n) { return eps * n * (n + a + b - 1); };
    f.eta = [](int x) { return (double)x; };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, n + a + b - 1, -(double)x};
      sp.denominator_params = {a, -(double)N};
      sp.argument = 1.0;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = binom_sl(N, x) * pochhammer_sl(a, x) *
                    pochhammer_sl(b, N - x) / pochhammer_sl(b, N);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = binom_sl(N, n) * pochhammer_sl(a, n) *
                    SignedLog::from(2 * n + a + b - 1) * pochhammer_sl(a + b, N) /
                    (pochhammer_sl(b, n) * pochhammer_sl(n + a + b - 1, N + 1));
      v *= pochhammer_sl(b, N) / pochhammer_sl(a + b, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -(n + a) * (n + a + b - 1) * (N - n) /
             ((2 * n - 1 + a + b) * (2 * n + a + b));
    };
    f.C = [=](int n) {
      return -n * (n + b - 1) * (n + a + b + N - 1) /
             ((2 * n - 2 + a + b) * (2 * n - 1 + a + b));
    };
    f.closure.r1_0 = 2.0 * eps;
    f.closure.r0_1 = 4.0 * eps;
    f.closure.r0_0 = (a + b - 2) * (a + b);
    f.closure.rm1_1 = -eps * (2.0 * N - a + b);
    f.closure.rm1_0 = -a * (a + b - 2) * N;
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"a", a + 1}, {"b", b + 1}};
    f.shifted_N = N - 1;
    f.partner_id = "dual_hahn";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [](int) { return 1.0; };
  };
  s.grid = {{{{"a", 2.5}, {"b", 1.5}}, 10},
            {{{"a", 0.3}, {"b", 4.0}}, 10},
            {{{"a", 5.0}, {"b", 0.5}}, 12},
            {{{"a", -8.4}, {"b", -9.1}}, 8}};
  return s;
}

FamilySpec make_dual_hahn() {
  FamilySpec s;
  s.info = {"dual_hahn", true, false, {"a", "b"},
            "a,b>0 | a,b<1-N", "hahn", "KS1.6"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0 && get(p, "b") > 0; },
        "a,b>0", 1, 1},
       {[](const Params& p, int N) {
          return get(p, "a") < 1.0 - N && get(p, "b") < 1.0 - N;
        }, "a,b<1-N", -1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b");
    const int N = *f.lambda.N;
    const double eps = f.lambda.epsilon;
    f.B = [=](int x) {
      return (x + a) * (x + a + b - 1) * (N - x) /
             ((2 * x - 1 + a + b) * (2 * x + a + b));
    };
    f.D = [=](int x) {
      return x * (x + b - 1) * (x + a + b + N - 1) /
             ((2 * x - 2 + a + b) * (2 * x - 1 + a + b));
    };
    f.E = [](int n) { return (double)n; };
    f.eta = [=](int x) { return eps * x * (x + a + b - 1); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, x + a + b - 1, -(double)x};
      sp.denominator_params = {a, -(double)N};
      sp.argument = 1.0;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = binom_sl(N, x) * pochhammer_sl(a, x) *
                    SignedLog::from(2 * x + a + b - 1) * pochhammer_sl(a + b, N) /
                    (pochhammer_sl(b, x) * pochhammer_sl(x + a + b - 1, N + 1));
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = binom_sl(N, n) * pochhammer_sl(a, n) *
                    pochhammer_sl(b, N - n) / pochhammer_sl(a + b, N);
      return v.value();
    };
    f.A = [=](int n) { return -eps * (n + a) * (N - n); };
    f.C = [=](int n) { return -eps * n * (b + N - n); };
    f.closure.r0_0 = 1.0;
    f.closure.rm1_2 = 2.0 * eps;
    f.closure.rm1_1 = -eps * (2.0 * N - a + b);
    f.closure.rm1_0 = -eps * a * N;
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"a", a + 1}, {"b", b}};
    f.shifted_N = N - 1;
    f.partner_id = "hahn";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return (2.0 * x + a + b) / (a + b); };
  };
  s.grid = {{{{"a", 2.5}, {"b", 1.5}}, 10},
            {{{"a", 0.3}, {"b", 4.0}}, 10},
            {{{"a", 5.0}, {"b", 0.5}}, 12},
            {{{"a", -8.4}, {"b", -9.1}}, 8}};
  return s;
}

FamilySpec make_krawtchouk() {
  FamilySpec s;
  s.info = {"krawtchouk", true, false, {"p"}, "0<p<1", "self-dual", "KS1.10"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "p") && get(p, "p") < 1;
                }, "0<p<1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p");
    const int N = *f.lambda.N;
    f.B = [=](int x) { return p * (N - x); };
    f.D = [=](int x) { return (1 - p) * x; };
    f.E = [](int n) { return (double)n; };
    f.eta = [](int x) { return (double)x; };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, -(double)x};
      sp.denominator_params = {-(double)N};
      sp.argument = 1.0 / p;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      return (binom_sl(N, x) * powi_sl(p / (1 - p), x)).value();
    };
    f.dnsq = [=](int n) {
      return (binom_sl(N, n) * powi_sl(p / (1 - p), n) * powi_sl(1 - p, N)).value();
    };
    f.A = [=](int n) { return -p * (N - n); };
    f.C = [=](int n) { return -(1 - p) * n; };
    f.closure.r0_0 = 1.0;
    f.closure.rm1_1 = 2 * p - 1;
    f.closure.rm1_0 = -p * N;
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"p", p}};
    f.shifted_N = N - 1;
    f.partner_id = "krawtchouk";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [](int) { return 1.0; };
  };
  s.grid = {{{{"p", 0.5}}, 2}, {{{"p", 0.1}}, 10}, {{{"p", 0.9}}, 10}, {{{"p", 0.5}}, 25}};
  return s;
}

FamilySpec make_q_racah() {
  FamilySpec s;
  s.info = {"q_racah", true, true, {"a", "b", "d", "q"},
            "one of: 0<d<1,0<a<q^N d,qd<b<1 | d>q^-2N,0<a<1,q^(1-N)<b<q^N d | "
            "0<d<1,qd<a<1,b>q^(1-N) | d>q^-2N,q^(1-N)<a<q^N d,b>qd",
            "self-dual (d <-> abc/(dq))", "KS3.2"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int N) {
          double q = get(p, "q"), d = get(p, "d");
          return 0 < d && d < 1 && 0 < get(p, "a") &&
                 get(p, "a") < std::pow(q, N) * d && q * d < get(p, "b") &&
                 get(p, "b") < 1;
        }, "0<d<1, 0<a<q^N d, qd<b<1", 1, 1},
       {[](const Params& p, int N) {
          double q = get(p, "q"), d = get(p, "d");
          return d > std::pow(q, -2 * N) && 0 < get(p, "a") && get(p, "a") < 1 &&
                 std::pow(q, 1 - N) < get(p, "b") &&
                 get(p, "b") < std::pow(q, N) * d;
        }, "d>q^-2N, 0<a<1, q^(1-N)<b<q^N d", 1, -1},
       {[](const Params& p, int N) {
          double q = get(p, "q"), d = get(p, "d");
          return 0 < d && d < 1 && q * d < get(p, "a") && get(p, "a") < 1 &&
                 get(p, "b") > std::pow(q, 1 - N);
        }, "0<d<1, qd<a<1, b>q^(1-N)", -1, 1},
       {[](const Params& p, int N) {
          double q = get(p, "q"), d = get(p, "d");
          return d > std::pow(q, -2 * N) && std::pow(q, 1 - N) < get(p, "a") &&
                 get(p, "a") < std::pow(q, N) * d && get(p, "b") > q * d;
        }, "d>q^-2N, q^(1-N)<a<q^N d, b>qd", -1, -1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), d = f.lambda.at("d");
    const double q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    const double c = std::pow(q, -N);
    const double dt = a * b * c / (d * q);
    const double eps = f.lambda.epsilon, epp = f.lambda.epsilon_p;
    f.B = [=](int x) {
      // (1 - c q^x) written as (1 - q^{x-N}) so B(N) vanishes exactly
      return -eps * (1 - a * std::pow(q, x)) * (1 - b * std::pow(q, x)) *
             one_m_qe(lq, x - N) * (1 - d * std::pow(q, x)) /
             ((1 - d * std::pow(q, 2 * x)) * (1 - d * std::pow(q, 2 * x + 1)));
    };
    f.D = [=](int x) {
      return -eps * dt * (1 - d / a * std::pow(q, x)) *
             (1 - d / b * std::pow(q, x)) * (1 - d / c * std::pow(q, x)) *
             one_m_qe(lq, x) /
             ((1 - d * std::pow(q, 2 * x - 1)) * (1 - d * std::pow(q, 2 * x)));
    };
    f.E = [=](int n) { return eps * qe_m_one(lq, -n) * (1 - dt * std::pow(q, n)); };
    f.eta = [=](int x) { return epp * qe_m_one(lq, -x) * (1 - d * std::pow(q, x)); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), dt * std::pow(q, n),
                             std::pow(q, -x), d * std::pow(q, x)};
      sp.denominator_params = {a, b, c};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qpoch_prod({a, b, c, d}, q, x) /
                    (qpoch_prod({d * q / a, d * q / b, d * q / c, q}, q, x) *
                     powi_sl(dt, x));
      v *= SignedLog::from((1 - d * std::pow(q, 2 * x)) / (1 - d));
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qpoch_prod({a, b, c, dt}, q, n) /
                    (qpoch_prod({dt * q / a, dt * q / b, dt * q / c, q}, q, n) *
                     powi_sl(d, n));
      v *= SignedLog::from((1 - dt * std::pow(q, 2 * n)) / (1 - dt));
      SignedLog d0 = qpoch_prod({d * q / a, d * q / b, d * q / c}, q, N) *
                     powi_sl(dt, N) * SignedLog(0.5 * N * (N + 1) * lq, 1) /
                     (q_pochhammer_sl(dt * q, q, N) * q_pochhammer_sl(d * q, q, 2 * N));
      d0 *= SignedLog(0.0, (N % 2) ? -1 : 1);
      return (v * d0).value();
    };
    f.A = [=](int n) {
      return epp * (1 - a * std::pow(q, n)) * (1 - b * std::pow(q, n)) *
             (1 - c * std::pow(q, n)) * (1 - dt * std::pow(q, n)) /
             ((1 - dt * std::pow(q, 2 * n)) * (1 - dt * std::pow(q, 2 * n + 1)));
    };
    f.C = [=](int n) {
      return epp * d * (1 - dt / a * std::pow(q, n)) *
             (1 - dt / b * std::pow(q, n)) * (1 - dt / c * std::pow(q, n)) *
             one_m_qe(lq, n) /
             ((1 - dt * std::pow(q, 2 * n - 1)) * (1 - dt * std::pow(q, 2 * n)));
    };
    f.closure = q_closure(
        q, eps * (1 + dt), -std::pow(1 / std::sqrt(q) + std::sqrt(q), 2) * dt,
        epp * (1 + d),
        -eps * epp * (a + b + c + d + dt + (a * b + b * c + c * a) / q),
        epp * ((1 - a) * (1 - b) * (1 - c) * (1 - dt / q) +
               (a + b + c - 1 - d * dt + (a * b + b * c + c * a) / q)) *
            (1 + dt));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"b", b * q}, {"d", d * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "q_racah";
    f.partner_params = {{"a", a}, {"b", b}, {"d", dt}, {"q", q}};
    f.partner_N = N;
    f.varphi = [=](int x) { return (std::pow(q, -x) - d * std::pow(q, x + 1)) / (1.0 - d * q); };
  };
  s.grid = {{{{"a", 0.02}, {"b", 0.6}, {"d", 0.5}, {"q", 0.7}}, 6},
            {{{"a", 0.5}, {"b", 9.0}, {"d", 150.0}, {"q", 0.7}}, 6},
            {{{"a", 0.6}, {"b", 8.0}, {"d", 0.5}, {"q", 0.7}}, 6},
            {{{"a", 7.0}, {"b", 120.0}, {"d", 150.0}, {"q", 0.7}}, 6},
            {{{"a", 0.0008}, {"b", 0.2}, {"d", 0.5}, {"q", 0.3}}, 5}};
  return s;
}

FamilySpec make_q_hahn() {
  FamilySpec s;
  s.info = {"q_hahn", true, true, {"a", "b", "q"},
            "0<a<1,0<b<1 | a,b>q^(1-N)", "dual_q_hahn", "KS3.6"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) {
          return 0 < get(p, "a") && get(p, "a") < 1 && 0 < get(p, "b") &&
                 get(p, "b") < 1;
        }, "0<a<1, 0<b<1", 1, 1},
       {[](const Params& p, int N) {
          double q = get(p, "q");
          return get(p, "a") > std::pow(q, 1 - N) &&
                 get(p, "b") > std::pow(q, 1 - N);
        }, "a,b>q^(1-N)", -1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    const double eps = f.lambda.epsilon;
    f.B = [=](int x) {
      return eps * (1 - a * std::pow(q, x)) * qe_m_one(lq, x - N);
    };
    f.D = [=](int x) {
      return eps * a / q * one_m_qe(lq, x) * (std::pow(q, x - N) - b);
    };
    f.E = [=](int n) {
      return eps * qe_m_one(lq, -n) * (1 - a * b * std::pow(q, n - 1));
    };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), a * b * std::pow(q, n - 1),
                             std::pow(q, -x)};
      sp.denominator_params = {a, std::pow(q, -N)};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * q_pochhammer_sl(a, q, x) *
                    q_pochhammer_sl(b, q, N - x) /
                    (q_pochhammer_sl(b, q, N) * powi_sl(a, x));
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * qpoch_prod({a, a * b / q}, q, n) /
                    (qpoch_prod({a * b * std::pow(q, N), b}, q, n) * powi_sl(a, n));
      v *= SignedLog::from((1 - a * b * std::pow(q, 2 * n - 1)) / (1 - a * b / q));
      v *= q_pochhammer_sl(b, q, N) * powi_sl(a, N) / q_pochhammer_sl(a * b, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -qe_m_one(lq, n - N) * (1 - a * std::pow(q, n)) *
             (1 - a * b * std::pow(q, n - 1)) /
             ((1 - a * b * std::pow(q, 2 * n - 1)) * (1 - a * b * std::pow(q, 2 * n)));
    };
    f.C = [=](int n) {
      return -a * std::pow(q, n - N - 1) * one_m_qe(lq, n) *
             (1 - a * b * std::pow(q, n + N - 1)) * (1 - b * std::pow(q, n - 1)) /
             ((1 - a * b * std::pow(q, 2 * n - 2)) * (1 - a * b * std::pow(q, 2 * n - 1)));
    };
    f.closure = q_closure(
        q, eps * (1 + a * b / q), -a * b * std::pow(1 + 1 / q, 2), 1.0,
        -eps * (a * (1 + b / q) + (1 + a / q) * std::pow(q, -N)),
        a * (1 + 1 / q) * ((a - 1) * b / q + (1 + b / q) * std::pow(q, -N)));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"b", b * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "dual_q_hahn";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"a", 0.5}, {"b", 0.3}, {"q", 0.7}}, 10},
            {{{"a", 0.9}, {"b", 0.1}, {"q", 0.7}}, 8},
            {{{"a", 15.0}, {"b", 20.0}, {"q", 0.7}}, 8},
            {{{"a", 500.0}, {"b", 600.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_dual_q_hahn() {
  FamilySpec s;
  s.info = {"dual_q_hahn", true, true, {"a", "b", "q"},
            "0<a<1,0<b<1 | a,b>q^(1-N)", "q_hahn", "KS3.7"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) {
          return 0 < get(p, "a") && get(p, "a") < 1 && 0 < get(p, "b") &&
                 get(p, "b") < 1;
        }, "0<a<1, 0<b<1", 1, 1},
       {[](const Params& p, int N) {
          double q = get(p, "q");
          return get(p, "a") > std::pow(q, 1 - N) &&
                 get(p, "b") > std::pow(q, 1 - N);
        }, "a,b>q^(1-N)", -1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    const double eps = f.lambda.epsilon;
    f.B = [=](int x) {
      return qe_m_one(lq, x - N) * (1 - a * std::pow(q, x)) *
             (1 - a * b * std::pow(q, x - 1)) /
             ((1 - a * b * std::pow(q, 2 * x - 1)) * (1 - a * b * std::pow(q, 2 * x)));
    };
    f.D = [=](int x) {
      return a * std::pow(q, x - N - 1) * one_m_qe(lq, x) *
             (1 - a * b * std::pow(q, x + N - 1)) * (1 - b * std::pow(q, x - 1)) /
             ((1 - a * b * std::pow(q, 2 * x - 2)) * (1 - a * b * std::pow(q, 2 * x - 1)));
    };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) {
      return eps * qe_m_one(lq, -x) * (1 - a * b * std::pow(q, x - 1));
    };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), a * b * std::pow(q, x - 1),
                             std::pow(q, -x)};
      sp.denominator_params = {a, std::pow(q, -N)};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * qpoch_prod({a, a * b / q}, q, x) /
                    (qpoch_prod({a * b * std::pow(q, N), b}, q, x) * powi_sl(a, x));
      v *= SignedLog::from((1 - a * b * std::pow(q, 2 * x - 1)) / (1 - a * b / q));
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * q_pochhammer_sl(a, q, n) *
                    q_pochhammer_sl(b, q, N - n) /
                    (q_pochhammer_sl(b, q, N) * powi_sl(a, n));
      v *= q_pochhammer_sl(b, q, N) * powi_sl(a, N) / q_pochhammer_sl(a * b, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -eps * (1 - a * std::pow(q, n)) * qe_m_one(lq, n - N);
    };
    f.C = [=](int n) {
      return -eps * a / q * one_m_qe(lq, n) * (std::pow(q, n - N) - b);
    };
    f.closure = q_closure(
        q, 1.0, 0.0, eps * (1 + a * b / q),
        -eps * (a * (1 + b / q) + (1 + a / q) * std::pow(q, -N)),
        eps * a * (1 + 1 / q) * std::pow(q, -N));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"b", b}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "q_hahn";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return (std::pow(q, -x) - a * b * std::pow(q, x)) / (1.0 - a * b); };
  };
  s.grid = {{{{"a", 0.5}, {"b", 0.3}, {"q", 0.7}}, 10},
            {{{"a", 0.9}, {"b", 0.1}, {"q", 0.7}}, 8},
            {{{"a", 15.0}, {"b", 20.0}, {"q", 0.7}}, 8},
            {{{"a", 500.0}, {"b", 600.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_quantum_q_krawtchouk() {
  FamilySpec s;
  s.info = {"quantum_q_krawtchouk", true, true, {"p", "q"},
            "p>q^-N", "dual_quantum_q_krawtchouk", "KS3.14"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int N) {
                  return get(p, "p") > std::pow(get(p, "q"), -N);
                }, "p>q^-N", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) { return std::pow(q, x) / p * qe_m_one(lq, x - N); };
    f.D = [=](int x) {
      return one_m_qe(lq, x) * (1 - std::pow(q, x - N - 1) / p);
    };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.denominator_params = {std::pow(q, -N)};
      sp.argument = p * std::pow(q, n + 1);
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * powi_sl(1 / p, x) *
                    SignedLog(x * (x - 1.0 - N) * lq, 1) /
                    q_pochhammer_sl(std::pow(q, -N) / p, q, x);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * powi_sl(1 / p, n) *
                    SignedLog(-static_cast<double>(N) * n * lq, 1) /
                    q_pochhammer_sl(std::pow(q, -n) / p, q, n);
      v *= q_pochhammer_sl(std::pow(q, -N) / p, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -std::pow(q, -n - N - 1) / p * one_m_qe(lq, N - n);
    };
    f.C = [=](int n) {
      return -qe_m_one(lq, -n) * (1 - std::pow(q, -n) / p);
    };
    f.closure = q_closure(q, -1.0, 0.0, 1.0,
                          (1 + p + std::pow(q, -N - 1)) / p, (1 + 1 / q) / p);
    f.has_shift = true;
    f.kappa = q;
    f.shifted_params = {{"p", p * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "dual_quantum_q_krawtchouk";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"p", 20.0}, {"q", 0.7}}, 8},
            {{{"p", 60.0}, {"q", 0.7}}, 8},
            {{{"p", 1600.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_dual_quantum_q_krawtchouk() {
  FamilySpec s;
  s.info = {"dual_quantum_q_krawtchouk", true, true, {"p", "q"},
            "p>q^-N", "quantum_q_krawtchouk", "-"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int N) {
                  return get(p, "p") > std::pow(get(p, "q"), -N);
                }, "p>q^-N", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) {
      return std::pow(q, -x - N - 1) / p * one_m_qe(lq, N - x);
    };
    f.D = [=](int x) {
      return qe_m_one(lq, -x) * (1 - std::pow(q, -x) / p);
    };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.A = [=](int n) { return -std::pow(q, n) / p * qe_m_one(lq, n - N); };
    f.C = [=](int n) {
      return -one_m_qe(lq, n) * (1 - std::pow(q, n - N - 1) / p);
    };
    bind_as_dual_of(f, "quantum_q_krawtchouk");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"p", 20.0}, {"q", 0.7}}, 8},
            {{{"p", 60.0}, {"q", 0.7}}, 8},
            {{{"p", 1600.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_q_krawtchouk() {
  FamilySpec s;
  s.info = {"q_krawtchouk", true, true, {"p", "q"},
            "p>0", "dual_q_krawtchouk_p", "KS3.15"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "p") > 0; }, "p>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) { return qe_m_one(lq, x - N); };
    f.D = [=](int x) { return p * one_m_qe(lq, x); };
    f.E = [=](int n) { return qe_m_one(lq, -n) * (1 + p * std::pow(q, n)); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x),
                             -p * std::pow(q, n)};
      sp.denominator_params = {std::pow(q, -N), 0.0};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * powi_sl(1 / p, x) *
                    SignedLog((0.5 * x * (x - 1.0) - x * N) * lq, 1);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * q_pochhammer_sl(-p, q, n) /
                    (q_pochhammer_sl(-p * std::pow(q, N + 1), q, n) *
                     powi_sl(p, n) * SignedLog(0.5 * n * (n + 1.0) * lq, 1));
      v *= SignedLog::from((1 + p * std::pow(q, 2 * n)) / (1 + p));
      v *= powi_sl(p, N) * SignedLog(0.5 * N * (N + 1.0) * lq, 1) /
           q_pochhammer_sl(-p * q, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -qe_m_one(lq, n - N) * (1 + p * std::pow(q, n)) /
             ((1 + p * std::pow(q, 2 * n)) * (1 + p * std::pow(q, 2 * n + 1)));
    };
    f.C = [=](int n) {
      return -p * std::pow(q, 2 * n - N - 1) * one_m_qe(lq, n) *
             (1 + p * std::pow(q, n + N)) /
             ((1 + p * std::pow(q, 2 * n - 1)) * (1 + p * std::pow(q, 2 * n)));
    };
    f.closure = q_closure(q, 1.0 - p, p * std::pow(1 / std::sqrt(q) + std::sqrt(q), 2),
                          1.0, p - std::pow(q, -N),
                          p * (1 + 1 / q) * (1 - std::pow(q, -N)));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"p", p * q * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "dual_q_krawtchouk_p";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"p", 0.5}, {"q", 0.7}}, 8},
            {{{"p", 2.0}, {"q", 0.7}}, 8},
            {{{"p", 10.0}, {"q", 0.7}}, 8},
            {{{"p", 2.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_dual_q_krawtchouk_p() {
  FamilySpec s;
  s.info = {"dual_q_krawtchouk_p", true, true, {"p", "q"},
            "p>0", "q_krawtchouk", "-"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "p") > 0; }, "p>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) {
      return qe_m_one(lq, x - N) * (1 + p * std::pow(q, x)) /
             ((1 + p * std::pow(q, 2 * x)) * (1 + p * std::pow(q, 2 * x + 1)));
    };
    f.D = [=](int x) {
      return p * std::pow(q, 2 * x - N - 1) * one_m_qe(lq, x) *
             (1 + p * std::pow(q, x + N)) /
             ((1 + p * std::pow(q, 2 * x - 1)) * (1 + p * std::pow(q, 2 * x)));
    };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x) * (1 + p * std::pow(q, x)); };
    f.A = [=](int n) { return -qe_m_one(lq, n - N); };
    f.C = [=](int n) { return -p * one_m_qe(lq, n); };
    bind_as_dual_of(f, "q_krawtchouk");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"p", 0.5}, {"q", 0.7}}, 8},
            {{{"p", 2.0}, {"q", 0.7}}, 8},
            {{{"p", 10.0}, {"q", 0.7}}, 8},
            {{{"p", 2.0}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_dual_q_krawtchouk() {
  FamilySpec s;
  s.info = {"dual_q_krawtchouk", true, true, {"c", "q"},
            "c<0", "q_krawtchouk (p=-cq^-N)", "KS3.17"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "c") < 0; }, "c<0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double c = f.lambda.at("c"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) {
      return qe_m_one(lq, x - N) * (1 - c * std::pow(q, x - N)) /
             ((1 - c * std::pow(q, 2 * x - N)) * (1 - c * std::pow(q, 2 * x + 1 - N)));
    };
    f.D = [=](int x) {
      return -c * std::pow(q, 2 * x - 2 * N - 1) * one_m_qe(lq, x) *
             (1 - c * std::pow(q, x)) /
             ((1 - c * std::pow(q, 2 * x - 1 - N)) * (1 - c * std::pow(q, 2 * x - N)));
    };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) {
      return qe_m_one(lq, -x) * (1 - c * std::pow(q, x - N));
    };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x),
                             c * std::pow(q, x - N)};
      sp.denominator_params = {std::pow(q, -N), 0.0};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) *
                    q_pochhammer_sl(c * std::pow(q, -N), q, x) *
                    SignedLog((N * x - 0.5 * x * (x + 1.0)) * lq, 1) /
                    (q_pochhammer_sl(c * q, q, x) * powi_sl(-c, x));
      v *= SignedLog::from((1 - c * std::pow(q, 2 * x - N)) /
                           (1 - c * std::pow(q, -N)));
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * powi_sl(-1 / c, n) *
                    SignedLog(0.5 * n * (n - 1.0) * lq, 1);
      v /= q_pochhammer_sl(1 / c, q, N);
      return v.value();
    };
    f.A = [=](int n) { return -qe_m_one(lq, n - N); };
    f.C = [=](int n) { return c * std::pow(q, -N) * one_m_qe(lq, n); };
    f.closure = q_closure(q, 1.0, 0.0, (1 + c * std::pow(q, -N)),
                          -(1 + c) * std::pow(q, -N), 0.0);
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"c", c}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "q_krawtchouk";
    f.partner_params = {{"p", -c * std::pow(q, -N)}, {"q", q}};
    f.partner_N = N;
    f.varphi = [=](int x) { return (std::pow(q, -x) - c * std::pow(q, 1 - N) * std::pow(q, x)) / (1.0 - c * std::pow(q, 1 - N)); };
  };
  s.grid = {{{{"c", -0.1}, {"q", 0.7}}, 8},
            {{{"c", -1.2}, {"q", 0.7}}, 8},
            {{{"c", -0.05}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_affine_q_krawtchouk() {
  FamilySpec s;
  s.info = {"affine_q_krawtchouk", true, true, {"p", "q"},
            "0<p<q^-1", "self-dual", "KS3.16"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "p") && get(p, "p") < 1.0 / get(p, "q");
                }, "0<p<q^-1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) {
      return qe_m_one(lq, x - N) * (1 - p * std::pow(q, x + 1));
    };
    f.D = [=](int x) { return p * std::pow(q, x - N) * one_m_qe(lq, x); };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x), 0.0};
      sp.denominator_params = {p * q, std::pow(q, -N)};
      sp.argument = q;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      return (qbinom_sl(q, N, x) * q_pochhammer_sl(p * q, q, x) /
              powi_sl(p * q, x)).value();
    };
    f.dnsq = [=](int n) {
      return (qbinom_sl(q, N, n) * q_pochhammer_sl(p * q, q, n) /
              powi_sl(p * q, n) * powi_sl(p * q, N)).value();
    };
    f.A = [=](int n) {
      return -qe_m_one(lq, n - N) * (1 - p * std::pow(q, n + 1));
    };
    f.C = [=](int n) { return -p * std::pow(q, n - N) * one_m_qe(lq, n); };
    f.closure = q_closure(q, 1.0, 0.0, 1.0,
                          -(p * q + (1 + p) * std::pow(q, -N)),
                          p * (1 + q) * std::pow(q, -N));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"p", p * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "affine_q_krawtchouk";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"p", 0.3}, {"q", 0.7}}, 8},
            {{{"p", 1.35}, {"q", 0.7}}, 8},
            {{{"p", 0.9}, {"q", 0.7}}, 10},
            {{{"p", 3.2}, {"q", 0.3}}, 6}};
  return s;
}

// ---------------------------------------------------------------------------
// 5.2 infinite families

FamilySpec make_meixner() {
  FamilySpec s;
  s.info = {"meixner", false, false, {"beta", "c"},
            "beta>0, 0<c<1", "self-dual", "KS1.9"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return get(p, "beta") > 0 && 0 < get(p, "c") && get(p, "c") < 1;
                }, "beta>0, 0<c<1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double beta = f.lambda.at("beta"), c = f.lambda.at("c");
    f.B = [=](int x) { return c / (1 - c) * (x + beta); };
    f.D = [=](int x) { return x / (1 - c); };
    f.E = [](int n) { return (double)n; };
    f.eta = [](int x) { return (double)x; };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, -(double)x};
      sp.denominator_params = {beta};
      sp.argument = 1.0 - 1.0 / c;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      return (pochhammer_sl(beta, x) * powi_sl(c, x) / pochhammer_sl(1.0, x)).value();
    };
    f.dnsq = [=](int n) {
      return (pochhammer_sl(beta, n) * powi_sl(c, n) / pochhammer_sl(1.0, n) *
              powi_sl(1 - c, beta)).value();
    };
    f.A = [=](int n) { return -c / (1 - c) * (n + beta); };
    f.C = [=](int n) { return -n / (1 - c); };
    f.closure.r0_0 = 1.0;
    f.closure.rm1_1 = -(1 + c) / (1 - c);
    f.closure.rm1_0 = -beta * c / (1 - c);
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"beta", beta + 1}, {"c", c}};
    f.partner_id = "meixner";
    f.partner_params = f.lambda.values;
    f.varphi = [](int) { return 1.0; };
  };
  s.grid = {{{{"beta", 0.5}, {"c", 0.3}}, std::nullopt},
            {{{"beta", 1.0}, {"c", 0.5}}, std::nullopt},
            {{{"beta", 4.0}, {"c", 0.9}}, std::nullopt},
            {{{"beta", 2.0}, {"c", 0.1}}, std::nullopt}};
  return s;
}

FamilySpec make_charlier() {
  FamilySpec s;
  s.info = {"charlier", false, false, {"a"}, "a>0", "self-dual", "KS1.12"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0; }, "a>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a");
    f.B = [=](int) { return a; };
    f.D = [](int x) { return (double)x; };
    f.E = [](int n) { return (double)n; };
    f.eta = [](int x) { return (double)x; };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {-(double)n, -(double)x};
      sp.argument = -1.0 / a;
      return hypergeometric_F(sp);
    };
    f.phi0sq = [=](int x) {
      return (powi_sl(a, x) / pochhammer_sl(1.0, x)).value();
    };
    f.dnsq = [=](int n) {
      return (powi_sl(a, n) / pochhammer_sl(1.0, n)).value() * std::exp(-a);
    };
    f.A = [=](int) { return -a; };
    f.C = [](int n) { return -(double)n; };
    f.closure.r0_0 = 1.0;
    f.closure.rm1_1 = -1.0;
    f.closure.rm1_0 = -a;
    f.has_shift = true;
    f.kappa = 1.0;
    f.shifted_params = {{"a", a}};
    f.partner_id = "charlier";
    f.partner_params = f.lambda.values;
    f.varphi = [](int) { return 1.0; };
  };
  s.grid = {{{{"a", 0.5}}, std::nullopt},
            {{{"a", 1.0}}, std::nullopt},
            {{{"a", 5.0}}, std::nullopt}};
  return s;
}

FamilySpec make_little_q_jacobi() {
  FamilySpec s;
  s.info = {"little_q_jacobi", false, true, {"a", "b", "q"},
            "0<a<q^-1, b<q^-1", "dual_little_q_jacobi", "KS3.12"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  double q = get(p, "q");
                  return 0 < get(p, "a") && get(p, "a") < 1 / q &&
                         get(p, "b") < 1 / q;
                }, "0<a<q^-1, b<q^-1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) { return a * (std::pow(q, -x) - b * q); };
    f.D = [=](int x) { return qe_m_one(lq, -x); };
    f.E = [=](int n) {
      return qe_m_one(lq, -n) * (1 - a * b * std::pow(q, n + 1));
    };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    // N -> infinity limit of the alternative q-Hahn 3phi2; equivalent to the
    // prefactored 2phi1 form but exact at the lattice origin
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), a * b * std::pow(q, n + 1),
                             std::pow(q, -x)};
      sp.denominator_params = {b * q};
      sp.argument = std::pow(q, x) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      return (q_pochhammer_sl(b * q, q, x) * powi_sl(a * q, x) /
              q_pochhammer_sl(q, q, x)).value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qpoch_prod({b * q, a * b * q}, q, n) * powi_sl(a, n) *
                    SignedLog(n * n * lq, 1) / qpoch_prod({q, a * q}, q, n);
      v *= SignedLog::from((1 - a * b * std::pow(q, 2 * n + 1)) / (1 - a * b * q));
      return v.value() * q_pochhammer_inf(a * q, q) /
             q_pochhammer_inf(a * b * q * q, q);
    };
    f.A = [=](int n) {
      return -a * std::pow(q, 2 * n + 1) * (1 - b * std::pow(q, n + 1)) *
             (1 - a * b * std::pow(q, n + 1)) /
             ((1 - a * b * std::pow(q, 2 * n + 1)) * (1 - a * b * std::pow(q, 2 * n + 2)));
    };
    f.C = [=](int n) {
      return -one_m_qe(lq, n) * (1 - a * std::pow(q, n)) /
             ((1 - a * b * std::pow(q, 2 * n)) * (1 - a * b * std::pow(q, 2 * n + 1)));
    };
    f.closure = q_closure(q, 1 + a * b * q, -a * b * std::pow(1 + q, 2), -1.0,
                          1 + a, -a * (1 + q) * (1 - b * q));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"b", b * q}, {"q", q}};
    f.partner_id = "dual_little_q_jacobi";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"a", 0.5}, {"b", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.9}, {"b", 0.1}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.3}, {"b", -1.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.1}, {"b", 0.4}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_dual_little_q_jacobi() {
  FamilySpec s;
  s.info = {"dual_little_q_jacobi", false, true, {"a", "b", "q"},
            "0<a<q^-1, b<q^-1", "little_q_jacobi", "-"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  double q = get(p, "q");
                  return 0 < get(p, "a") && get(p, "a") < 1 / q &&
                         get(p, "b") < 1 / q;
                }, "0<a<q^-1, b<q^-1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) {
      return a * std::pow(q, 2 * x + 1) * (1 - b * std::pow(q, x + 1)) *
             (1 - a * b * std::pow(q, x + 1)) /
             ((1 - a * b * std::pow(q, 2 * x + 1)) * (1 - a * b * std::pow(q, 2 * x + 2)));
    };
    f.D = [=](int x) {
      return one_m_qe(lq, x) * (1 - a * std::pow(q, x)) /
             ((1 - a * b * std::pow(q, 2 * x)) * (1 - a * b * std::pow(q, 2 * x + 1)));
    };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) {
      return qe_m_one(lq, -x) * (1 - a * b * std::pow(q, x + 1));
    };
    f.A = [=](int n) { return -a * (std::pow(q, -n) - b * q); };
    f.C = [=](int n) { return -qe_m_one(lq, -n); };
    bind_as_dual_of(f, "little_q_jacobi");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"a", 0.5}, {"b", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.9}, {"b", 0.1}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.3}, {"b", -1.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.1}, {"b", 0.4}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_q_meixner() {
  FamilySpec s;
  s.info = {"q_meixner", false, true, {"b", "c", "q"},
            "0<b<q^-1, c>0", "dual_q_meixner", "KS3.13"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "b") && get(p, "b") < 1 / get(p, "q") &&
                         get(p, "c") > 0;
                }, "0<b<q^-1, c>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double b = f.lambda.at("b"), c = f.lambda.at("c"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) {
      return c * std::pow(q, x) * (1 - b * std::pow(q, x + 1));
    };
    f.D = [=](int x) { return one_m_qe(lq, x) * (1 + b * c * std::pow(q, x)); };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.denominator_params = {b * q};
      sp.argument = -std::pow(q, n + 1) / c;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = q_pochhammer_sl(b * q, q, x) * powi_sl(c, x) *
                    SignedLog(0.5 * x * (x - 1.0) * lq, 1) /
                    qpoch_prod({q, -b * c * q}, q, x);
      return v.value();
    };
    // the review's normalisation carries q^n; the paper text drops it,
    // which breaks d_n^2/d_0^2 = prod A_m/C_{m+1}
    f.dnsq = [=](int n) {
      SignedLog v = q_pochhammer_sl(b * q, q, n) * SignedLog(n * lq, 1) /
                    qpoch_prod({q, -q / c}, q, n);
      return v.value() * q_pochhammer_inf(-b * c * q, q) /
             q_pochhammer_inf(-c, q);
    };
    f.A = [=](int n) {
      return -c * std::pow(q, -n - 1) * (std::pow(q, -n) - b * q);
    };
    f.C = [=](int n) {
      return -qe_m_one(lq, -n) * (1 + c * std::pow(q, -n));
    };
    f.closure = q_closure(q, -1.0, 0.0, 1.0, 1 - c - b * c, -c * (1 + 1 / q));
    f.has_shift = true;
    f.kappa = q;
    f.shifted_params = {{"b", b * q}, {"c", c / q}, {"q", q}};
    f.partner_id = "dual_q_meixner";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"b", 0.5}, {"c", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"b", 0.2}, {"c", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"b", 1.2}, {"c", 5.0}, {"q", 0.7}}, std::nullopt},
            {{{"b", 0.5}, {"c", 1.5}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_dual_q_meixner() {
  FamilySpec s;
  s.info = {"dual_q_meixner", false, true, {"b", "c", "q"},
            "0<b<q^-1, c>0", "q_meixner", "-"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "b") && get(p, "b") < 1 / get(p, "q") &&
                         get(p, "c") > 0;
                }, "0<b<q^-1, c>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double b = f.lambda.at("b"), c = f.lambda.at("c"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) {
      return c * std::pow(q, -x - 1) * (std::pow(q, -x) - b * q);
    };
    f.D = [=](int x) { return qe_m_one(lq, -x) * (1 + c * std::pow(q, -x)); };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.A = [=](int n) { return -c * std::pow(q, n) * (1 - b * std::pow(q, n + 1)); };
    f.C = [=](int n) { return -one_m_qe(lq, n) * (1 + b * c * std::pow(q, n)); };
    bind_as_dual_of(f, "q_meixner");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"b", 0.5}, {"c", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"b", 0.2}, {"c", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"b", 0.5}, {"c", 1.5}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_little_q_laguerre() {
  FamilySpec s;
  s.info = {"little_q_laguerre", false, true, {"a", "q"},
            "0<a<q^-1", "al_salam_carlitz_2", "KS3.20"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "a") && get(p, "a") < 1 / get(p, "q");
                }, "0<a<q^-1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) { return a * std::pow(q, -x); };
    f.D = [=](int x) { return qe_m_one(lq, -x); };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.argument = std::pow(q, x) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      return (powi_sl(a * q, x) / q_pochhammer_sl(q, q, x)).value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = powi_sl(a, n) * SignedLog(n * n * lq, 1) /
                    qpoch_prod({q, a * q}, q, n);
      return v.value() * q_pochhammer_inf(a * q, q);
    };
    f.A = [=](int n) { return -a * std::pow(q, 2 * n + 1); };
    f.C = [=](int n) { return -one_m_qe(lq, n) * (1 - a * std::pow(q, n)); };
    f.closure = q_closure(q, 1.0, 0.0, -1.0, 1 + a, -a * (1 + q));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"q", q}};
    f.partner_id = "al_salam_carlitz_2";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"a", 0.3}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.8}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.2}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.15}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_al_salam_carlitz_2() {
  FamilySpec s;
  s.info = {"al_salam_carlitz_2", false, true, {"a", "q"},
            "0<a<q^-1", "little_q_laguerre", "KS3.25"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int) {
                  return 0 < get(p, "a") && get(p, "a") < 1 / get(p, "q");
                }, "0<a<q^-1", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) { return a * std::pow(q, 2 * x + 1); };
    f.D = [=](int x) { return one_m_qe(lq, x) * (1 - a * std::pow(q, x)); };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.argument = std::pow(q, n) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = powi_sl(a, x) * SignedLog((double)x * x * lq, 1) /
                    qpoch_prod({q, a * q}, q, x);
      return v.value();
    };
    f.dnsq = [=](int n) {
      return (powi_sl(a * q, n) / q_pochhammer_sl(q, q, n)).value() *
             q_pochhammer_inf(a * q, q);
    };
    f.A = [=](int n) { return -a * std::pow(q, -n); };
    f.C = [=](int n) { return -qe_m_one(lq, -n); };
    f.closure = q_closure(q, -1.0, 0.0, 1.0, 1 + a, 0.0);
    f.has_shift = true;
    f.kappa = q;
    f.shifted_params = {{"a", a}, {"q", q}};
    f.partner_id = "little_q_laguerre";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"a", 0.3}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.8}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.2}, {"q", 0.7}}, std::nullopt},
            {{{"a", 0.15}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_alternative_q_charlier() {
  FamilySpec s;
  s.info = {"alternative_q_charlier", false, true, {"a", "q"},
            "a>0", "dual_alternative_q_charlier", "KS3.22"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0; }, "a>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int) { return a; };
    f.D = [=](int x) { return qe_m_one(lq, -x); };
    f.E = [=](int n) { return qe_m_one(lq, -n) * (1 + a * std::pow(q, n)); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.denominator_params = {0.0};
      sp.argument = -std::pow(q, 1 - n) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      SignedLog v = basic_hypergeometric_phi_sl(sp);
      return (SignedLog((double)n * x * lq, 1) * v).value();
    };
    f.phi0sq = [=](int x) {
      SignedLog v = powi_sl(a, x) * SignedLog(0.5 * x * (x + 1.0) * lq, 1) /
                    q_pochhammer_sl(q, q, x);
      return v.value();
    };
    // (-a;q)_inf / (-aq^n;q)_inf reduced to (-a;q)_n
    f.dnsq = [=](int n) {
      SignedLog v = powi_sl(a, n) * SignedLog(0.5 * n * (3.0 * n - 1) * lq, 1) *
                    q_pochhammer_sl(-a, q, n) / q_pochhammer_sl(q, q, n);
      v *= SignedLog::from((1 + a * std::pow(q, 2 * n)) / (1 + a));
      return v.value() / q_pochhammer_inf(-a * q, q);
    };
    f.A = [=](int n) {
      return -a * std::pow(q, 3 * n + 1) * (1 + a * std::pow(q, n)) /
             ((1 + a * std::pow(q, 2 * n)) * (1 + a * std::pow(q, 2 * n + 1)));
    };
    f.C = [=](int n) {
      return -one_m_qe(lq, n) /
             ((1 + a * std::pow(q, 2 * n - 1)) * (1 + a * std::pow(q, 2 * n)));
    };
    f.closure = q_closure(q, 1.0 - a, a * std::pow(1 / std::sqrt(q) + std::sqrt(q), 2),
                          -1.0, 1.0, -a * (1 + q));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q * q}, {"q", q}};
    f.partner_id = "dual_alternative_q_charlier";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"a", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 8.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.0}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_dual_alternative_q_charlier() {
  FamilySpec s;
  s.info = {"dual_alternative_q_charlier", false, true, {"a", "q"},
            "a>0", "alternative_q_charlier", "-"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0; }, "a>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) {
      return a * std::pow(q, 3 * x + 1) * (1 + a * std::pow(q, x)) /
             ((1 + a * std::pow(q, 2 * x)) * (1 + a * std::pow(q, 2 * x + 1)));
    };
    f.D = [=](int x) {
      return one_m_qe(lq, x) /
             ((1 + a * std::pow(q, 2 * x - 1)) * (1 + a * std::pow(q, 2 * x)));
    };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x) * (1 + a * std::pow(q, x)); };
    f.A = [=](int) { return -a; };
    f.C = [=](int n) { return -qe_m_one(lq, -n); };
    bind_as_dual_of(f, "alternative_q_charlier");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"a", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.0}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_q_charlier() {
  FamilySpec s;
  s.info = {"q_charlier", false, true, {"a", "q"},
            "a>0", "dual_q_charlier", "KS3.23"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0; }, "a>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) { return a * std::pow(q, x); };
    f.D = [=](int x) { return one_m_qe(lq, x); };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return qe_m_one(lq, -x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.denominator_params = {0.0};
      sp.argument = -std::pow(q, n + 1) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = powi_sl(a, x) * SignedLog(0.5 * x * (x - 1.0) * lq, 1) /
                    q_pochhammer_sl(q, q, x);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = SignedLog(n * lq, 1) / qpoch_prod({-q / a, q}, q, n);
      return v.value() / q_pochhammer_inf(-a, q);
    };
    f.A = [=](int n) { return -a * std::pow(q, -2 * n - 1); };
    f.C = [=](int n) {
      return -qe_m_one(lq, -n) * (1 + a * std::pow(q, -n));
    };
    f.closure = q_closure(q, -1.0, 0.0, 1.0, 1 - a, -a * (1 + 1 / q));
    f.has_shift = true;
    f.kappa = q;
    f.shifted_params = {{"a", a / q}, {"q", q}};
    f.partner_id = "dual_q_charlier";
    f.partner_params = f.lambda.values;
    f.varphi = [=](int x) { return std::pow(q, -x); };
  };
  s.grid = {{{{"a", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 8.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.0}, {"q", 0.3}}, std::nullopt}};
  return s;
}

FamilySpec make_dual_q_charlier() {
  FamilySpec s;
  s.info = {"dual_q_charlier", false, true, {"a", "q"},
            "a>0", "q_charlier", "-"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "a") > 0; }, "a>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), q = f.lambda.at("q");
    const double lq = std::log(q);
    f.B = [=](int x) { return a * std::pow(q, -2 * x - 1); };
    f.D = [=](int x) {
      return qe_m_one(lq, -x) * (1 + a * std::pow(q, -x));
    };
    f.E = [=](int n) { return qe_m_one(lq, -n); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.A = [=](int n) { return -a * std::pow(q, n); };
    f.C = [=](int n) { return -one_m_qe(lq, n); };
    bind_as_dual_of(f, "q_charlier");
    set_varphi_from_eta(f);
  };
  s.grid = {{{{"a", 0.5}, {"q", 0.7}}, std::nullopt},
            {{{"a", 2.0}, {"q", 0.7}}, std::nullopt},
            {{{"a", 1.0}, {"q", 0.3}}, std::nullopt}};
  return s;
}

// ---------------------------------------------------------------------------
// 5.3 polynomials not in the review

FamilySpec make_alternative_q_hahn() {
  FamilySpec s;
  s.info = {"alternative_q_hahn", true, true, {"a", "b", "q"},
            "0<a<1,0<b<1 | a,b>q^(1-N)", "-", "-"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) {
          return 0 < get(p, "a") && get(p, "a") < 1 && 0 < get(p, "b") &&
                 get(p, "b") < 1;
        }, "0<a<1, 0<b<1", 1, 1},
       {[](const Params& p, int N) {
          double q = get(p, "q");
          return get(p, "a") > std::pow(q, 1 - N) &&
                 get(p, "b") > std::pow(q, 1 - N);
        }, "a,b>q^(1-N)", -1, 1}});
  s.bind = [](BoundFamily& f) {
    const double a = f.lambda.at("a"), b = f.lambda.at("b"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    const double eps = f.lambda.epsilon;
    f.B = [=](int x) {
      return eps * a / q * one_m_qe(lq, N - x) * (std::pow(q, -x) - b);
    };
    f.D = [=](int x) {
      return eps * (1 - a * std::pow(q, N - x)) * qe_m_one(lq, -x);
    };
    f.E = [=](int n) {
      return eps * qe_m_one(lq, -n) * (1 - a * b * std::pow(q, n - 1));
    };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), a * b * std::pow(q, n - 1),
                             std::pow(q, -x)};
      sp.denominator_params = {b, std::pow(q, -N)};
      sp.argument = std::pow(q, x + 1 - N) / a;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * powi_sl(a, x) *
                    q_pochhammer_sl(a, q, N - x) * q_pochhammer_sl(b, q, x) /
                    q_pochhammer_sl(a, q, N);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * qpoch_prod({b, a * b / q}, q, n) *
                    powi_sl(a, n) * SignedLog(n * (n - 1.0) * lq, 1) /
                    qpoch_prod({a, a * b * std::pow(q, N)}, q, n);
      v *= SignedLog::from((1 - a * b * std::pow(q, 2 * n - 1)) / (1 - a * b / q));
      v *= q_pochhammer_sl(a, q, N) / q_pochhammer_sl(a * b, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -a * std::pow(q, n + N) * qe_m_one(lq, n - N) *
             (1 - b * std::pow(q, n)) * (1 - a * b * std::pow(q, n - 1)) /
             ((1 - a * b * std::pow(q, 2 * n - 1)) * (1 - a * b * std::pow(q, 2 * n)));
    };
    f.C = [=](int n) {
      return -one_m_qe(lq, n) * (1 - a * std::pow(q, n - 1)) *
             (1 - a * b * std::pow(q, n + N - 1)) /
             ((1 - a * b * std::pow(q, 2 * n - 2)) * (1 - a * b * std::pow(q, 2 * n - 1)));
    };
    f.closure = q_closure(
        q, eps * (1 + a * b / q), -a * b * std::pow(1 + 1 / q, 2), -1.0,
        eps * (1 + a / q + a * (1 + b / q) * std::pow(q, N)),
        -a * (1 + 1 / q) * (1 - b + b * (1 + a / q) * std::pow(q, N)));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"a", a * q}, {"b", b * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"a", 0.5}, {"b", 0.3}, {"q", 0.7}}, 8},
            {{{"a", 0.9}, {"b", 0.2}, {"q", 0.7}}, 8},
            {{{"a", 15.0}, {"b", 20.0}, {"q", 0.7}}, 8},
            {{{"a", 0.4}, {"b", 0.6}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_alternative_q_krawtchouk() {
  FamilySpec s;
  s.info = {"alternative_q_krawtchouk", true, true, {"p", "q"},
            "p>0", "-", "-"};
  s.validate = range_validator(
      s.info,
      {{[](const Params& p, int) { return get(p, "p") > 0; }, "p>0", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) { return p * one_m_qe(lq, N - x); };
    f.D = [=](int x) { return qe_m_one(lq, -x); };
    f.E = [=](int n) { return qe_m_one(lq, -n) * (1 + p * std::pow(q, n)); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), -p * std::pow(q, n),
                             std::pow(q, -x)};
      sp.denominator_params = {std::pow(q, -N)};
      sp.argument = -std::pow(q, x - N) / p;
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * powi_sl(p, x) *
                    SignedLog(0.5 * x * (x + 1.0) * lq, 1);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * q_pochhammer_sl(-p, q, n) *
                    powi_sl(p, n) * SignedLog(0.5 * n * (3.0 * n - 1) * lq, 1) /
                    q_pochhammer_sl(-p * std::pow(q, N + 1), q, n);
      v *= SignedLog::from((1 + p * std::pow(q, 2 * n)) / (1 + p));
      v /= q_pochhammer_sl(-p * q, q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -p * std::pow(q, 2 * n + N + 1) * qe_m_one(lq, n - N) *
             (1 + p * std::pow(q, n)) /
             ((1 + p * std::pow(q, 2 * n)) * (1 + p * std::pow(q, 2 * n + 1)));
    };
    f.C = [=](int n) {
      return -one_m_qe(lq, n) * (1 + p * std::pow(q, n + N)) /
             ((1 + p * std::pow(q, 2 * n - 1)) * (1 + p * std::pow(q, 2 * n)));
    };
    f.closure = q_closure(q, 1.0 - p, p * std::pow(1 / std::sqrt(q) + std::sqrt(q), 2),
                          -1.0, 1 - p * std::pow(q, N),
                          -p * (1 + q) * (1 - std::pow(q, N)));
    f.has_shift = true;
    f.kappa = 1.0 / q;
    f.shifted_params = {{"p", p * q * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"p", 0.6}, {"q", 0.7}}, 8},
            {{{"p", 2.5}, {"q", 0.7}}, 8},
            {{{"p", 1.5}, {"q", 0.3}}, 6}};
  return s;
}

FamilySpec make_alternative_affine_q_krawtchouk() {
  FamilySpec s;
  s.info = {"alternative_affine_q_krawtchouk", true, true, {"p", "q"},
            "p>q^-N", "self-dual", "-"};
  s.validate = range_validator(
      s.info, {{[](const Params& p, int N) {
                  return get(p, "p") > std::pow(get(p, "q"), -N);
                }, "p>q^-N", 1, 1}});
  s.bind = [](BoundFamily& f) {
    const double p = f.lambda.at("p"), q = f.lambda.at("q");
    const int N = *f.lambda.N;
    const double lq = std::log(q);
    f.B = [=](int x) {
      return one_m_qe(lq, N - x) * (1 - std::pow(q, -x - 1) / p);
    };
    f.D = [=](int x) {
      return std::pow(q, N - x) / p * qe_m_one(lq, -x);
    };
    f.E = [=](int n) { return one_m_qe(lq, n); };
    f.eta = [=](int x) { return one_m_qe(lq, x); };
    f.P = [=](int n, int x) {
      SeriesParameters sp;
      sp.numerator_params = {std::pow(q, -n), std::pow(q, -x)};
      sp.denominator_params = {p * q, std::pow(q, -N)};
      sp.argument = p * std::pow(q, x + n + 1 - N);
      sp.q_base = q;
      sp.terminate_at = std::min(n, x);
      return basic_hypergeometric_phi(sp);
    };
    f.phi0sq = [=](int x) {
      SignedLog v = qbinom_sl(q, N, x) * powi_sl(p, x) *
                    SignedLog(x * (x + 1.0 - N) * lq, 1) *
                    q_pochhammer_sl(std::pow(q, -N) / p, q, N) /
                    q_pochhammer_sl(std::pow(q, -N) / p, q, N - x);
      return v.value();
    };
    f.dnsq = [=](int n) {
      SignedLog v = qbinom_sl(q, N, n) * powi_sl(p, n) *
                    SignedLog(n * (n + 1.0 - N) * lq, 1) *
                    q_pochhammer_sl(std::pow(q, -N) / p, q, N) /
                    q_pochhammer_sl(std::pow(q, -N) / p, q, N - n);
      v /= powi_sl(p * q, N);
      return v.value();
    };
    f.A = [=](int n) {
      return -(1 - std::pow(q, -n - 1) / p) * one_m_qe(lq, N - n);
    };
    f.C = [=](int n) {
      return -std::pow(q, N - n) / p * qe_m_one(lq, -n);
    };
    f.closure = q_closure(
        q, -1.0, 0.0, -1.0,
        -(1 / (p * q) + (1 + 1 / p) * std::pow(q, N)),
        -(1 + 1 / q) * std::pow(q, N) / p);
    f.has_shift = true;
    f.kappa = q;
    f.shifted_params = {{"p", p * q}, {"q", q}};
    f.shifted_N = N - 1;
    f.partner_id = "alternative_affine_q_krawtchouk";
    f.partner_params = f.lambda.values;
    f.partner_N = N;
    f.varphi = [=](int x) { return std::pow(q, x); };
  };
  s.grid = {{{{"p", 20.0}, {"q", 0.7}}, 8},
            {{{"p", 40.0}, {"q", 0.7}}, 8},
            {{{"p", 1600.0}, {"q", 0.3}}, 6}};
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Catalog::Catalog() {
  specs_ = {
      // 5.1 finite
      make_racah(), make_hahn(), make_dual_hahn(), make_krawtchouk(),
      make_q_racah(), make_q_hahn(), make_dual_q_hahn(),
      make_quantum_q_krawtchouk(), make_dual_quantum_q_krawtchouk(),
      make_q_krawtchouk(), make_dual_q_krawtchouk_p(), make_dual_q_krawtchouk(),
      make_affine_q_krawtchouk(),
      // 5.2 infinite
      make_meixner(), make_charlier(), make_little_q_jacobi(),
      make_dual_little_q_jacobi(), make_q_meixner(), make_dual_q_meixner(),
      make_little_q_laguerre(), make_al_salam_carlitz_2(),
      make_alternative_q_charlier(), make_dual_alternative_q_charlier(),
      make_q_charlier(), make_dual_q_charlier(),
      // 5.3 alternatives
      make_alternative_q_hahn(), make_alternative_q_krawtchouk(),
      make_alternative_affine_q_krawtchouk(),
  };
}

const Catalog& Catalog::instance() {
  static Catalog c;
  return c;
}

const FamilySpec& Catalog::spec(const std::string& id) const {
  for (const auto& s : specs_)
    if (s.info.id == id) return s;
  throw InvalidParameterError("unknown family id: " + id);
}

bool Catalog::has(const std::string& id) const {
  for (const auto& s : specs_)
    if (s.info.id == id) return true;
  return false;
}

ParameterVector validate_parameters(const std::string& id, const Params& p,
                                    std::optional<int> N) {
  const auto& s = Catalog::instance().spec(id);
  return s.validate(p, N);
}

BoundFamily get_family(const std::string& id, const Params& p,
                       std::optional<int> N) {
  const auto& s = Catalog::instance().spec(id);
  BoundFamily f;
  f.info = s.info;
  f.lambda = s.validate(p, N);
  s.bind(f);
  return f;
}

BoundFamily shifted_family(const BoundFamily& f) {
  if (!f.has_shift)
    throw InvalidParameterError(f.info.id +
                                ": no parameter shift data for this family");
  return get_family(f.info.id, f.shifted_params, f.shifted_N);
}

std::vector<GridPoint> default_grid(const std::string& id) {
  return Catalog::instance().spec(id).grid;
}

int BoundFamily::lattice_points(int window) const {
  if (info.finite) return *lambda.N + 1;
  return window + 1;
}

}  // namespace opq
