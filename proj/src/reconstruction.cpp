#include "opq/reconstruction.hpp"

#include <cmath>

#include "opq/errors.hpp"

namespace opq {

std::string EtaClass::name() const {
  switch (tag) {
    case linear: return "linear";
    case quadratic: return "quadratic";
    case q_geometric: return "q_geometric";
    case q_inverse_geometric: return "q_inverse_geometric";
    case q_quadratic: return "q_quadratic";
  }
  return "?";
}

std::pair<std::vector<double>, EtaClass> solve_eta(
    const ClosureCoefficients& r, double eta1, int x_max) {
  if (r.r1_1 < 0.0)
    throw ReconstructionError(
        "r_1^(1) < 0: characteristic roots not positive, eta not monotone");
  std::vector<double> iter(x_max + 1);
  iter[0] = 0.0;
  if (x_max >= 1) iter[1] = eta1;
  for (int x = 0; x + 2 <= x_max; ++x)
    iter[x + 2] = (2.0 + r.r1_1) * iter[x + 1] - iter[x] + r.rm1_2;

  // classify, then evaluate the recurrence solution in closed form; the
  // forward iteration excites the q^{-x} mode at roundoff level and is
  // kept only as a consistency witness
  EtaClass cls;
  std::vector<double> eta(x_max + 1);
  double growth_base = 1.0;
  if (r.r1_1 == 0.0) {
    if (r.rm1_2 == 0.0) {
      cls.tag = EtaClass::linear;
      for (int x = 0; x <= x_max; ++x) eta[x] = eta1 * x;
    } else {
      cls.tag = EtaClass::quadratic;
      cls.epsilon_p = (r.rm1_2 > 0.0) ? 1 : -1;
      cls.d = eta1 / (0.5 * r.rm1_2) - 1.0;
      for (int x = 0; x <= x_max; ++x)
        eta[x] = 0.5 * r.rm1_2 * x * (x - 1.0) + eta1 * x;
    }
  } else {
    // roots of t^2 - (2 + r_1^(1)) t + 1 = 0; q is the smaller one
    const double tr = 2.0 + r.r1_1;
    const double disc = std::sqrt(tr * tr - 4.0);
    const double q = 0.5 * (tr - disc);
    cls.q = q;
    growth_base = 1.0 / q;
    const double lq = std::log(q);
    // eta(x) = A q^{-x} + Bq q^x + P, P = -r_-1^(2)/r_1^(1), A + Bq + P = 0
    const double P = -r.rm1_2 / r.r1_1;
    const double A = (eta1 - P + q * P) / (1.0 / q - q);
    const double Bq = -P - A;
    for (int x = 0; x <= x_max; ++x)
      eta[x] = A * std::expm1(-x * lq) + Bq * std::expm1(x * lq);
    const double tol = 1e-9 * std::max({std::fabs(A), std::fabs(Bq), 1.0});
    if (std::fabs(Bq) <= tol) {
      cls.tag = EtaClass::q_inverse_geometric;  // eta = A (q^{-x} - 1)
      cls.epsilon_p = (A > 0) ? 1 : -1;
    } else if (std::fabs(A) <= tol) {
      cls.tag = EtaClass::q_geometric;  // eta = -Bq (1 - q^x)
      cls.epsilon_p = (Bq < 0) ? 1 : -1;
    } else {
      cls.tag = EtaClass::q_quadratic;  // eta = eps'(q^{-x}-1)(1-d q^x)
      cls.epsilon_p = (A > 0) ? 1 : -1;
      cls.d = Bq / A;
    }
  }
  // the iterated values must agree inside the growing-mode error envelope
  double envelope = 1.0;
  for (int x = 0; x <= x_max; ++x) {
    double tol_x = 1e-10 * envelope * std::max(1.0, std::fabs(eta[x]));
    if (std::fabs(iter[x] - eta[x]) > tol_x)
      throw ReconstructionError("eta iteration disagrees with its closed form");
    envelope *= growth_base;
  }
  return {eta, cls};
}

std::vector<double> solve_a(const ClosureCoefficients& r,
                            const std::vector<double>& eta_values,
                            double eta1, double B0) {
  const double etam1 = r.rm1_2 - eta1;
  std::vector<double> a(eta_values.size());
  for (size_t x = 0; x < eta_values.size(); ++x) {
    double e = eta_values[x];
    double denom = r.r1_1 * e * e + 2.0 * r.rm1_2 * e - eta1 * etam1;
    if (denom == 0.0)
      throw ReconstructionError("degenerate lattice: a_x denominator vanished");
    a[x] = -(r.r1_0 * e * e + r.rm1_1 * e + eta1 * etam1 * B0) / denom;
  }
  return a;
}

double verify_ri0cond(const ClosureCoefficients& r, double eta1, double B0) {
  const double u = r.rm1_0 / (eta1 * B0 * B0);
  return r.r0_0 / (B0 * B0) + (r.r1_0 / B0) * u - u * u;
}

void reconstruct_BD(ReconstructionState& st, int x_max,
                    ReconstructionRoute route) {
  const auto& r = st.coeffs;
  const double eta1 = st.eta1, B0 = st.B0;
  const double etam1 = st.eta_minus1;
  const auto& eta = st.eta_values;  // needs 0..x_max+1
  auto eta_at = [&](int x) { return x < 0 ? etam1 : eta[x]; };

  bool simple = false;
  if (route == ReconstructionRoute::simple) {
    if (std::fabs(st.ri0cond_residual) > 1e-10)
      throw ReconstructionError(
          "ri0cond violated: the simple B~/D~ route does not apply");
    simple = true;
  } else if (route == ReconstructionRoute::automatic) {
    simple = std::fabs(st.ri0cond_residual) <= 1e-10;
  }
  st.route_used = simple ? ReconstructionRoute::simple : ReconstructionRoute::general;

  st.B_values.assign(x_max + 1, 0.0);
  st.D_values.assign(x_max + 1, 0.0);
  if (simple) {
    st.B_tilde.assign(x_max + 1, 0.0);
    st.D_tilde.assign(x_max + 1, 0.0);
    const double w = r.rm1_0 / (eta1 * B0);
    for (int x = 0; x <= x_max; ++x) {
      double e0 = eta_at(x), ep = eta_at(x + 1), em = eta_at(x - 1);
      st.B_tilde[x] = -r.r1_0 * e0 * ep + w * e0 * (ep - e0) - r.rm1_1 * e0 +
                      eta1 * B0 * (ep - e0 - etam1);
      st.D_tilde[x] = -r.r1_0 * e0 * em + w * e0 * (em - e0) - r.rm1_1 * e0 +
                      eta1 * B0 * (em - e0 - etam1);
      st.B_values[x] = st.B_tilde[x] / ((ep - e0) * (ep - em));
      st.D_values[x] = st.D_tilde[x] / ((em - e0) * (em - ep));
    }
  } else {
    // general route through the dual closure relation
    auto R1d = [&](double z) { return r.r1_1 * z + r.rm1_2; };
    auto R0d = [&](double z) {
      return r.r1_1 * z * z + 2.0 * r.rm1_2 * z - eta1 * etam1;
    };
    auto Rm1d = [&](double z) {
      return r.r1_0 * z * z + r.rm1_1 * z + eta1 * etam1 * B0;
    };
    double disc0 = r.r1_0 * r.r1_0 + 4.0 * r.r0_0;
    if (disc0 < 0.0)
      throw ReconstructionError("negative discriminant for E(1)");
    const double e1 = 0.5 * (r.r1_0 + std::sqrt(disc0));
    const double a0 = r.rm1_0 / r.r0_0;
    for (int x = 0; x <= x_max; ++x) {
      double z = eta_at(x);
      double disc = R1d(z) * R1d(z) + 4.0 * R0d(z);
      if (disc <= 0.0)
        throw ReconstructionError("dual alpha_+ = alpha_- on the lattice");
      double s = std::sqrt(disc);
      double adp = 0.5 * (R1d(z) + s), adm = 0.5 * (R1d(z) - s);
      st.B_values[x] = -(Rm1d(z) + e1 * (z + a0) * adp) / (adp * (adp - adm));
      st.D_values[x] = -(Rm1d(z) + e1 * (z + a0) * adm) / (adm * (adm - adp));
    }
  }

  // cross-check B + D against the a_x formula
  for (int x = 0; x <= x_max; ++x) {
    double sum = st.B_values[x] + st.D_values[x];
    double scale = std::max(1.0, std::fabs(st.a_values[x]));
    if (std::fabs(sum - st.a_values[x]) > 1e-8 * scale)
      throw ReconstructionError("reconstructed B + D does not reproduce a_x");
  }
}

ReconstructionState reconstruct(const ClosureCoefficients& r, double eta1,
                                double B0, int x_max,
                                ReconstructionRoute route) {
  ReconstructionState st;
  st.coeffs = r;
  st.eta1 = eta1;
  st.B0 = B0;
  st.eta_minus1 = r.rm1_2 - eta1;
  auto [eta, cls] = solve_eta(r, eta1, x_max + 1);
  st.eta_values = std::move(eta);
  st.cls = cls;
  st.ri0cond_residual = verify_ri0cond(r, eta1, B0);
  st.a_values = solve_a(r, std::vector<double>(st.eta_values.begin(),
                                               st.eta_values.begin() + x_max + 1),
                        eta1, B0);
  reconstruct_BD(st, x_max, route);
  return st;
}

RoundtripReport roundtrip_catalog(const BoundFamily& f, int x_max,
                                  ReconstructionRoute route) {
  RoundtripReport rep;
  rep.state = reconstruct(f.closure, f.eta(1), f.B(0), x_max, route);
  double worst = 0.0;
  for (int x = 0; x <= x_max; ++x) {
    double b = f.B(x), d = f.D(x);
    worst = std::max(worst, std::fabs(rep.state.B_values[x] - b) /
                                std::max(1.0, std::fabs(b)));
    worst = std::max(worst, std::fabs(rep.state.D_values[x] - d) /
                                std::max(1.0, std::fabs(d)));
  }
  rep.max_deviation = worst;
  return rep;
}

}  // namespace opq
