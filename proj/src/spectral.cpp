#include "opq/spectral.hpp"

#include <cmath>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"

namespace opq {

namespace {
constexpr double kMagnitudeCap = 1e120;  // keeps squares inside double range
}

int suite_window(const BoundFamily& f, int cap) {
  if (f.info.finite) return *f.lambda.N;
  double log_phi2 = 0.0;
  double partial = 1.0;
  for (int x = 1; x <= cap; ++x) {
    if (std::fabs(f.B(x)) > kMagnitudeCap || std::fabs(f.D(x)) > kMagnitudeCap)
      return x - 1;
    log_phi2 += std::log(f.B(x - 1)) - std::log(f.D(x));
    partial += std::exp(log_phi2);
    double ratio = f.B(x) / f.D(x + 1);
    if (ratio < 1.0 && x >= 8) {
      double tail = std::exp(log_phi2) * ratio / (1.0 - ratio);
      if (tail < 1e-16 * partial) return x;
    }
  }
  return cap;
}

int suite_n_max(const BoundFamily& f, int window, int cap) {
  if (f.info.finite) return std::min(*f.lambda.N, cap);
  // Gershgorin upper bound of the windowed H
  double rad = 0.0;
  for (int x = 0; x <= window; ++x) {
    double row = f.B(x) + f.D(x);
    if (x > 0) row += sqrt_product(f.B(x - 1), f.D(x));
    if (x < window) row += sqrt_product(f.B(x), f.D(x + 1));
    rad = std::max(rad, row);
  }
  int n = 0;
  while (n < cap && f.E(n + 1) < 0.9 * rad) ++n;
  return n;
}

SpectralSolution solve_spectrum(const BoundFamily& f, SpectrumMethod m,
                                int window, int n_count) {
  SpectralSolution out;
  out.method = m;
  switch (m) {
    case SpectrumMethod::numeric: {
      auto [a, ad] = factorize(f.B, f.D, window + 1);
      (void)ad;
      out.eigenvalues = factored_eigenvalues(a, n_count);
      break;
    }
    case SpectrumMethod::closed_form: {
      for (int n = 0; n < n_count; ++n) out.eigenvalues.push_back(f.E(n));
      break;
    }
    case SpectrumMethod::shape_invariance: {
      // E(n) = sum_{s<n} kappa^s E(1; lambda + s delta)
      if (!f.has_shift)
        throw InvalidParameterError(f.info.id + ": no shift data for shape invariance");
      out.eigenvalues.push_back(0.0);
      double acc = 0.0, kpow = 1.0;
      BoundFamily cur = f;
      for (int s = 0; s + 1 < n_count; ++s) {
        acc += kpow * cur.E(1);
        out.eigenvalues.push_back(acc);
        kpow *= f.kappa;
        if (s + 2 < n_count) cur = shifted_family(cur);
      }
      break;
    }
    case SpectrumMethod::alpha_iteration: {
      double e = 0.0;
      out.eigenvalues.push_back(0.0);
      for (int n = 1; n < n_count; ++n) {
        e += alpha_plus(f.closure, e);
        out.eigenvalues.push_back(e);
      }
      break;
    }
    case SpectrumMethod::characteristic_roots: {
      if (!f.info.finite)
        throw InvalidParameterError("characteristic_roots needs a finite family");
      const int N = *f.lambda.N;
      std::vector<double> evs;
      for (int n = 0; n < n_count; ++n) evs.push_back(f.E(n));
      DualTable q = build_Q_table(f.B, f.D, evs, N, N);
      out.eigenvalues = evs;
      out.residuals = q.char_residuals;
      break;
    }
  }
  return out;
}

PolynomialTable build_P_table(const BoundFamily& f, int n_max, int x_max,
                              bool closed_form_route) {
  PolynomialTable t;
  t.x_max = x_max;
  t.values.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    std::vector<double> row(x_max + 1);
    if (closed_form_route) {
      for (int x = 0; x <= x_max; ++x) row[x] = f.P(n, x);
    } else if (n == 0) {
      for (int x = 0; x <= x_max; ++x) row[x] = 1.0;
    } else {
      const auto& pn = t.values[n - 1];
      const double an = f.A(n - 1), cn = f.C(n - 1);
      if (an == 0.0)
        throw RecurrenceBreakdownError(f.info.id + ": A_n vanished in the three-term recurrence");
      const double bn = -(an + cn);
      for (int x = 0; x <= x_max; ++x) {
        double prev = (n >= 2) ? t.values[n - 2][x] : 0.0;
        row[x] = ((f.eta(x) - bn) * pn[x] - cn * prev) / an;
      }
    }
    // keep the table inside double range; callers read n_max back
    bool ok = true;
    for (double v : row)
      if (!std::isfinite(v) || std::fabs(v) > 1e140) ok = false;
    if (!ok && n > 0) break;
    t.values.push_back(std::move(row));
  }
  t.n_max = static_cast<int>(t.values.size()) - 1;
  return t;
}

DualTable build_Q_table(const LatticeFn& B, const LatticeFn& D,
                        const std::vector<double>& eigenvalues, int x_max,
                        std::optional<int> N_finite) {
  DualTable t;
  t.x_max = x_max;
  t.values.assign(x_max + 1, std::vector<double>(eigenvalues.size()));
  for (size_t k = 0; k < eigenvalues.size(); ++k) {
    const double e = eigenvalues[k];
    double qm = 0.0, q0 = 1.0;  // Q_{x-1}, Q_x
    t.values[0][k] = 1.0;
    for (int x = 0; x < x_max; ++x) {
      double bx = B(x);
      if (bx == 0.0)
        throw RecurrenceBreakdownError("B(x) vanished in the dual recurrence");
      double q1 = ((B(x) + D(x) - e) * q0 - D(x) * qm) / bx;
      qm = q0;
      q0 = q1;
      t.values[x + 1][k] = q1;
    }
    if (N_finite && *N_finite == x_max) {
      // E Q_N = D(N) (Q_N - Q_{N-1}), scale-normalised
      double lhs = e * q0;
      double rhs = D(x_max) * (q0 - qm);
      double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      t.char_residuals.push_back(std::fabs(lhs - rhs) / scale);
    }
  }
  return t;
}

double duality_check(const PolynomialTable& p, const DualTable& q) {
  double worst = 0.0;
  int x_hi = std::min(p.x_max, q.x_max);
  for (int n = 0; n <= p.n_max; ++n) {
    if (n >= static_cast<int>(q.values[0].size())) break;
    for (int x = 0; x <= x_hi; ++x) {
      double a = p.values[n][x], b = q.values[x][n];
      worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
  }
  return worst;
}

double orthogonality_check(const PolynomialTable& p,
                           const std::vector<double>& phi0sq,
                           const std::vector<double>& dnsq,
                           OrthogonalityMode mode) {
  const int nmax = p.n_max, xmax = p.x_max;
  double worst = 0.0;
  if (mode == OrthogonalityMode::rows) {
    for (int n = 0; n <= nmax; ++n) {
      for (int m = n; m <= nmax; ++m) {
        double g = 0.0;
        for (int x = 0; x <= xmax; ++x)
          g += phi0sq[x] * p.values[n][x] * p.values[m][x];
        double dev = std::fabs(std::sqrt(dnsq[n] * dnsq[m]) * g - (n == m ? 1.0 : 0.0));
        worst = std::max(worst, dev);
      }
    }
  } else {
    for (int x = 0; x <= xmax; ++x) {
      for (int y = x; y <= xmax; ++y) {
        double g = 0.0;
        for (int n = 0; n <= nmax; ++n)
          g += dnsq[n] * p.values[n][x] * p.values[n][y];
        double dev = std::fabs(std::sqrt(phi0sq[x] * phi0sq[y]) * g - (x == y ? 1.0 : 0.0));
        worst = std::max(worst, dev);
      }
    }
  }
  return worst;
}

std::vector<double> normalization_dn(const BoundFamily& f, int n_max,
                                     double phi0_norm) {
  std::vector<double> out(n_max + 1);
  out[0] = 1.0 / phi0_norm;
  double log_ratio = 0.0;
  for (int m = 0; m < n_max; ++m) {
    double am = f.A(m), cm1 = f.C(m + 1);
    if (cm1 == 0.0)
      throw RecurrenceBreakdownError(f.info.id + ": C_{m+1} vanished in d_n product");
    double r = am / cm1;
    if (r <= 0.0)
      throw DualConstructionError(f.info.id + ": A_m/C_{m+1} not positive");
    log_ratio += std::log(r);
    out[m + 1] = std::exp(log_ratio) * out[0];
  }
  return out;
}

RecurrenceFromClosure recurrence_coeffs_from_closure(const BoundFamily& f,
                                                     int n_max) {
  RecurrenceFromClosure out;
  const auto& r = f.closure;
  const double eta1 = f.eta(1), b0 = f.B(0);
  out.A.resize(n_max + 1);
  out.C.resize(n_max + 1);
  out.A[0] = r.rm1_0 / r.r0_0;
  out.C[0] = 0.0;
  {
    double lhs = out.A[0] * f.E(1) + b0 * eta1;
    double scale = std::max({1.0, std::fabs(out.A[0] * f.E(1)), std::fabs(b0 * eta1)});
    out.a0_identity_residual = std::fabs(lhs) / scale;
  }
  for (int n = 1; n <= n_max; ++n) {
    double en = f.E(n), ep = f.E(n + 1), em = f.E(n - 1);
    if (ep == em)
      throw Error(f.info.id + ": degenerate spectrum in closure recurrence coefficients");
    double ratio = r.Rm1(en) / r.R0(en);
    out.A[n] = (ratio * (en - em) + eta1 * (en - b0)) / (ep - em);
    out.C[n] = (ratio * (en - ep) + eta1 * (en - b0)) / (em - ep);
  }
  return out;
}

TridiagonalOperator build_dual_hamiltonian(const std::vector<double>& A,
                                           const std::vector<double>& C) {
  const int n = static_cast<int>(A.size());
  for (int k = 0; k < n; ++k) {
    // -A_n plays the role of B: positive inside, may vanish at the top
    if (!(A[k] < 0.0) && !(k == n - 1 && A[k] == 0.0))
      throw DualConstructionError("A_n must be negative for the dual Hamiltonian");
    if (k > 0 && !(C[k] < 0.0))
      throw DualConstructionError("C_n must be negative for the dual Hamiltonian");
  }
  TridiagonalOperator h;
  h.symmetric = true;
  h.diag.resize(n);
  h.super.resize(n - 1);
  for (int k = 0; k < n; ++k) h.diag[k] = -(A[k] + C[k]);
  for (int k = 0; k + 1 < n; ++k)
    h.super[k] = -sqrt_product(-A[k], -C[k + 1]);
  h.sub = h.super;
  return h;
}

double alpha_plus(const ClosureCoefficients& r, double z) {
  double disc = r.R1(z) * r.R1(z) + 4.0 * r.R0(z);
  if (disc < 0.0)
    throw Error("negative discriminant in alpha_+: closure coefficients inconsistent");
  return 0.5 * (r.R1(z) + std::sqrt(disc));
}

double alpha_minus(const ClosureCoefficients& r, double z) {
  double disc = r.R1(z) * r.R1(z) + 4.0 * r.R0(z);
  if (disc < 0.0)
    throw Error("negative discriminant in alpha_-: closure coefficients inconsistent");
  return 0.5 * (r.R1(z) - std::sqrt(disc));
}

}  // namespace opq
