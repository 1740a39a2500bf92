#include "opq/symmetry.hpp"

#include <cmath>
#include <complex>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"

namespace opq {

namespace {

Eigen::MatrixXd quadratic_of(const Eigen::MatrixXd& h, double c2, double c1,
                             double c0) {
  const int n = h.rows();
  Eigen::MatrixXd out = c1 * h + c0 * Eigen::MatrixXd::Identity(n, n);
  if (c2 != 0.0) out += c2 * (h * h);
  return out;
}

Eigen::MatrixXd eta_asdiag(const std::vector<double>& eta) {
  return Eigen::VectorXd::Map(eta.data(), eta.size()).asDiagonal();
}

std::vector<double> phi_n_vector(const BoundFamily& f,
                                 const std::vector<double>& phi0, int n) {
  std::vector<double> v(phi0.size());
  for (size_t x = 0; x < phi0.size(); ++x)
    v[x] = phi0[x] * f.P(n, static_cast<int>(x));
  return v;
}

double vec_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::fabs(t));
  return m;
}

}  // namespace

double closure_residual(const TridiagonalOperator& h,
                        const std::vector<double>& eta_diag,
                        const ClosureCoefficients& r, int margin) {
  const int n = h.size();
  Eigen::MatrixXd H = h.dense();
  Eigen::MatrixXd eta = Eigen::VectorXd::Map(eta_diag.data(), n).asDiagonal();
  Eigen::MatrixXd heta = H * eta - eta * H;
  Eigen::MatrixXd lhs = H * heta - heta * H;
  Eigen::MatrixXd t0 = eta * quadratic_of(H, r.r0_2, r.r0_1, r.r0_0);
  Eigen::MatrixXd t1 = heta * quadratic_of(H, 0.0, r.r1_1, r.r1_0);
  Eigen::MatrixXd tm1 = quadratic_of(H, r.rm1_2, r.rm1_1, r.rm1_0);
  Eigen::MatrixXd res = lhs - t0 - t1 - tm1;
  double worst = 0.0;
  const int lo = margin, hi = n - 1 - margin;
  for (int i = lo; i <= hi; ++i) {
    double scale = std::max({1.0, lhs.row(i).cwiseAbs().maxCoeff(),
                             t0.row(i).cwiseAbs().maxCoeff(),
                             t1.row(i).cwiseAbs().maxCoeff(),
                             tm1.row(i).cwiseAbs().maxCoeff()});
    worst = std::max(worst, res.row(i).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

LadderOperators build_ladder_operators(const TridiagonalOperator& h,
                                       const std::vector<double>& eta_diag,
                                       const ClosureCoefficients& r) {
  const int n = h.size();
  auto ed = symmetric_tridiagonal_eigen(h.diag, h.super);
  const Eigen::MatrixXd& v = ed.vectors;

  Eigen::VectorXd rm1_over_r0(n), am(n), ap(n), gap(n);
  for (int k = 0; k < n; ++k) {
    double w = ed.values[k];
    double r0 = r.R0(w);
    if (r0 == 0.0) throw Error("R0(H) singular on the window");
    rm1_over_r0[k] = r.Rm1(w) / r0;
    double disc = r.R1(w) * r.R1(w) + 4.0 * r0;
    if (disc <= 0.0) throw Error("alpha_+ = alpha_- on the window");
    double s = std::sqrt(disc);
    ap[k] = 0.5 * (r.R1(w) + s);
    am[k] = 0.5 * (r.R1(w) - s);
    gap[k] = s;
  }
  Eigen::MatrixXd eta = Eigen::VectorXd::Map(eta_diag.data(), n).asDiagonal();
  Eigen::MatrixXd H = h.dense();
  Eigen::MatrixXd heta = H * eta - eta * H;
  Eigen::MatrixXd ratio = v * rm1_over_r0.asDiagonal() * v.transpose();
  Eigen::MatrixXd alpha_m = v * am.asDiagonal() * v.transpose();
  Eigen::MatrixXd alpha_p = v * ap.asDiagonal() * v.transpose();
  Eigen::MatrixXd inv_gap = v * gap.cwiseInverse().asDiagonal() * v.transpose();

  LadderOperators out;
  out.a_plus = (heta - (eta + ratio) * alpha_m) * inv_gap;
  out.a_minus = -(heta - (eta + ratio) * alpha_p) * inv_gap;
  double scale = std::max(1.0, out.a_plus.cwiseAbs().maxCoeff());
  out.transpose_residual =
      (out.a_plus - out.a_minus.transpose()).cwiseAbs().maxCoeff() / scale;
  return out;
}

LadderActionReport ladder_action_check(const BoundFamily& f, int window,
                                       int n_max) {
  const int pts = window + 1;
  TridiagonalOperator h = build_hamiltonian(f.B, f.D, pts);
  GroundState g = ground_state(f.B, f.D, pts);
  std::vector<double> eta(pts);
  for (int x = 0; x < pts; ++x) eta[x] = f.eta(x);
  LadderOperators lad = build_ladder_operators(h, eta, f.closure);

  LadderActionReport rep;
  rep.transpose = lad.transpose_residual;
  {
    std::vector<double> phi0 = g.values;
    Eigen::VectorXd p0 = Eigen::VectorXd::Map(phi0.data(), pts);
    rep.annihilate = (lad.a_minus * p0).cwiseAbs().maxCoeff() /
                     std::max(1.0, p0.cwiseAbs().maxCoeff());
  }
  for (int n = 0; n <= n_max; ++n) {
    std::vector<double> pn = phi_n_vector(f, g.values, n);
    Eigen::VectorXd vn = Eigen::VectorXd::Map(pn.data(), pts);
    if (n + 1 <= n_max) {
      std::vector<double> pn1 = phi_n_vector(f, g.values, n + 1);
      Eigen::VectorXd vn1 = Eigen::VectorXd::Map(pn1.data(), pts);
      Eigen::VectorXd lhs = lad.a_plus * vn;
      Eigen::VectorXd rhs = f.A(n) * vn1;
      double scale = std::max({1e-300, lhs.cwiseAbs().maxCoeff(),
                               rhs.cwiseAbs().maxCoeff()});
      rep.up = std::max(rep.up, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
    }
    if (n >= 1) {
      std::vector<double> pm = phi_n_vector(f, g.values, n - 1);
      Eigen::VectorXd vm = Eigen::VectorXd::Map(pm.data(), pts);
      Eigen::VectorXd lhs = lad.a_minus * vn;
      Eigen::VectorXd rhs = f.C(n) * vm;
      double scale = std::max({1e-300, lhs.cwiseAbs().maxCoeff(),
                               rhs.cwiseAbs().maxCoeff()});
      rep.down = std::max(rep.down, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
    }
  }
  return rep;
}

LadderActionReport structure_relation_check(const BoundFamily& f, int window,
                                            int n_max, int margin) {
  const int pts = window + 1;
  GroundState g = ground_state(f.B, f.D, pts);
  std::vector<double> eta(pts), offd(pts);
  for (int x = 0; x < pts; ++x) eta[x] = f.eta(x);
  for (int x = 0; x + 1 < pts; ++x) offd[x] = -sqrt_product(f.B(x), f.D(x + 1));

  auto heta_apply = [&](const std::vector<double>& v, int x) {
    double s = 0.0;
    if (x + 1 < pts) s += offd[x] * (eta[x + 1] - eta[x]) * v[x + 1];
    if (x > 0) s += offd[x - 1] * (eta[x - 1] - eta[x]) * v[x - 1];
    return s;
  };

  LadderActionReport rep;
  const int hi = pts - 1 - margin;
  for (int n = 1; n <= n_max; ++n) {
    const double en = f.E(n), ep = f.E(n + 1), em = f.E(n - 1);
    const double rm1 = f.closure.Rm1(en);
    std::vector<double> pn = phi_n_vector(f, g.values, n);
    std::vector<double> up = phi_n_vector(f, g.values, n + 1);
    std::vector<double> dn = phi_n_vector(f, g.values, n - 1);
    const double an = f.A(n), cn = f.C(n);
    double up_scale = vec_max(up) * std::fabs(an);
    double dn_scale = vec_max(dn) * std::max(std::fabs(cn), 1e-300);
    for (int x = margin; x <= hi; ++x) {
      double comm = heta_apply(pn, x);
      double plus = (comm + (en - em) * eta[x] * pn[x] + rm1 / (ep - en) * pn[x]) / (ep - em);
      double minus = (comm + (en - ep) * eta[x] * pn[x] + rm1 / (em - en) * pn[x]) / (em - ep);
      // rows whose intermediates exceed the cancellation budget are not
      // resolvable in binary64; skip them rather than report noise
      double inter = std::fabs(comm) + std::fabs(eta[x] * pn[x] * (en - em)) +
                     std::fabs(rm1 / (ep - en) * pn[x]);
      if (inter > 1e12 * std::max(up_scale, 1e-300)) continue;
      rep.up = std::max(rep.up, std::fabs(plus - an * up[x]) /
                                    std::max(up_scale, 1e-300));
      if (dn_scale > 0.0)
        rep.down = std::max(rep.down, std::fabs(minus - cn * dn[x]) / dn_scale);
    }
  }
  return rep;
}

double heisenberg_check(const TridiagonalOperator& h,
                        const std::vector<double>& eta_diag,
                        const ClosureCoefficients& r,
                        const std::vector<double>& t_samples, int margin) {
  using Mat = Eigen::MatrixXcd;
  const int n = h.size();
  auto ed = symmetric_tridiagonal_eigen(h.diag, h.super);
  const Eigen::MatrixXd& v = ed.vectors;
  LadderOperators lad = build_ladder_operators(h, eta_diag, r);

  Eigen::VectorXd ap(n), am(n), ratio(n);
  for (int k = 0; k < n; ++k) {
    double w = ed.values[k];
    double disc = r.R1(w) * r.R1(w) + 4.0 * r.R0(w);
    double s = std::sqrt(std::max(disc, 0.0));
    ap[k] = 0.5 * (r.R1(w) + s);
    am[k] = 0.5 * (r.R1(w) - s);
    ratio[k] = r.Rm1(w) / r.R0(w);
  }
  Eigen::MatrixXd eta = Eigen::VectorXd::Map(eta_diag.data(), n).asDiagonal();
  Eigen::MatrixXd const_term = v * ratio.asDiagonal() * v.transpose();

  const std::complex<double> iu(0.0, 1.0);
  double worst = 0.0;
  for (double t : t_samples) {
    Eigen::VectorXcd ph(n), php(n), phm(n);
    for (int k = 0; k < n; ++k) {
      ph[k] = std::exp(iu * t * ed.values[k]);
      php[k] = std::exp(iu * t * ap[k]);
      phm[k] = std::exp(iu * t * am[k]);
    }
    Mat u = v.cast<std::complex<double>>() * ph.asDiagonal() *
            v.transpose().cast<std::complex<double>>();
    Mat lhs = u * eta.cast<std::complex<double>>() * u.adjoint();
    Mat ep = v.cast<std::complex<double>>() * php.asDiagonal() *
             v.transpose().cast<std::complex<double>>();
    Mat em = v.cast<std::complex<double>>() * phm.asDiagonal() *
             v.transpose().cast<std::complex<double>>();
    Mat rhs = lad.a_plus.cast<std::complex<double>>() * ep +
              lad.a_minus.cast<std::complex<double>>() * em -
              const_term.cast<std::complex<double>>();
    Mat res = lhs - rhs;
    const int lo = margin, hi = n - 1 - margin;
    for (int i = lo; i <= hi; ++i) {
      double scale = std::max(1.0, lhs.row(i).cwiseAbs().maxCoeff());
      worst = std::max(worst, res.row(i).cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

double heisenberg_action_check(const BoundFamily& f, int window, int n_max,
                               const std::vector<double>& t_samples,
                               int margin) {
  using Vec = Eigen::VectorXcd;
  const int pts = window + 1;
  TridiagonalOperator h = build_hamiltonian(f.B, f.D, pts);
  GroundState g = ground_state(f.B, f.D, pts);
  std::vector<double> eta(pts);
  for (int x = 0; x < pts; ++x) eta[x] = f.eta(x);
  auto ed = symmetric_tridiagonal_eigen(h.diag, h.super);
  const Eigen::MatrixXd& v = ed.vectors;
  LadderOperators lad = build_ladder_operators(h, eta, f.closure);

  const int n = pts;
  Eigen::VectorXd ap(n), am(n), ratio(n);
  for (int k = 0; k < n; ++k) {
    double w = ed.values[k];
    double disc = f.closure.R1(w) * f.closure.R1(w) + 4.0 * f.closure.R0(w);
    double s = std::sqrt(std::max(disc, 0.0));
    ap[k] = 0.5 * (f.closure.R1(w) + s);
    am[k] = 0.5 * (f.closure.R1(w) - s);
    ratio[k] = f.closure.Rm1(w) / f.closure.R0(w);
  }
  const std::complex<double> iu(0.0, 1.0);
  double worst = 0.0;
  for (int m = 0; m <= n_max; ++m) {
    std::vector<double> pm = phi_n_vector(f, g.values, m);
    Eigen::VectorXd phi = Eigen::VectorXd::Map(pm.data(), pts);
    for (double t : t_samples) {
      auto apply_phase = [&](const Eigen::VectorXd& freq, const Vec& x) {
        Vec y = v.transpose().cast<std::complex<double>>() * x;
        for (int k = 0; k < n; ++k) y[k] *= std::exp(iu * t * freq[k]);
        return Vec(v.cast<std::complex<double>>() * y);
      };
      Vec cphi = phi.cast<std::complex<double>>();
      Vec lhs = apply_phase(ed.values, Vec(eta_asdiag(eta).cast<std::complex<double>>() *
                                           apply_phase(-ed.values, cphi)));
      Vec rhs = lad.a_plus.cast<std::complex<double>>() * apply_phase(ap, cphi) +
                lad.a_minus.cast<std::complex<double>>() * apply_phase(am, cphi) -
                (v * ratio.asDiagonal() * v.transpose()).cast<std::complex<double>>() * cphi;
      double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
      for (int x = 0; x <= window - margin; ++x)
        worst = std::max(worst, std::abs(lhs[x] - rhs[x]) / scale);
    }
  }
  return worst;
}

ShapeInvarianceReport shape_invariance_check(const BoundFamily& f, int window) {
  BoundFamily fs = shifted_family(f);
  ShapeInvarianceReport rep;
  rep.kappa = f.kappa;
  rep.e1 = f.E(1);
  const double k = f.kappa, e1 = f.E(1);
  for (int x = 0; x <= window - 1; ++x) {
    {
      double lhs = f.B(x + 1) * f.varphi(x + 1);
      double rhs = k * fs.B(x) * f.varphi(x);
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.forward = std::max(rep.forward, std::fabs(lhs - rhs) / s);
    }
    if (x >= 1) {
      double lhs = f.D(x) * f.varphi(x - 1);
      double rhs = k * fs.D(x) * f.varphi(x);
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.backward = std::max(rep.backward, std::fabs(lhs - rhs) / s);
    }
    {
      double lhs = f.B(x) + f.D(x + 1);
      double rhs = k * (fs.B(x) + fs.D(x)) + e1;
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.diagonal = std::max(rep.diagonal, std::fabs(lhs - rhs) / s);
    }
    {
      double lhs = f.varphi(x);
      double rhs = (f.eta(x + 1) - f.eta(x)) / f.eta(1);
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.varphi_eta = std::max(rep.varphi_eta, std::fabs(lhs - rhs) / s);
    }
  }
  return rep;
}

ShiftActionReport shift_operator_action(const BoundFamily& f, int n_max,
                                        int window) {
  BoundFamily fs = shifted_family(f);
  const double b0 = f.B(0);
  ShiftActionReport rep;
  for (int n = 0; n <= n_max; ++n) {
    // forward: F P_n(.;l) = E(n;l) P_{n-1}(.;l+d)
    for (int x = 0; x <= window - 1; ++x) {
      double lhs = b0 * (f.P(n, x) - f.P(n, x + 1)) / f.varphi(x);
      double rhs = (n == 0) ? 0.0 : f.E(n) * fs.P(n - 1, x);
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.forward = std::max(rep.forward, std::fabs(lhs - rhs) / s);
    }
    // backward: Bop P_n(.;l+d) = P_{n+1}(.;l)
    for (int x = 0; x <= window - 1; ++x) {
      double dterm = (x == 0) ? 0.0 : f.D(x) * f.varphi(x - 1) * fs.P(n, x - 1);
      double lhs = (f.B(x) * f.varphi(x) * fs.P(n, x) - dterm) / b0;
      double rhs = f.P(n + 1, x);
      double s = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      rep.backward = std::max(rep.backward, std::fabs(lhs - rhs) / s);
    }
    // b_{n-1} f_n = E(n) with catalog f_n = E(n), b_n = 1
    if (n >= 1) {
      double lhs = 1.0 * f.E(n);
      rep.bf_energy = std::max(
          rep.bf_energy, std::fabs(lhs - f.E(n)) / std::max(1.0, std::fabs(f.E(n))));
    }
  }
  return rep;
}

double rodrigues_generate(const BoundFamily& f, int n, int window) {
  // family chain lambda, lambda+delta, ..., lambda+n delta
  std::vector<BoundFamily> chain;
  chain.push_back(f);
  for (int k = 1; k <= n; ++k) chain.push_back(shifted_family(chain.back()));

  const int pts = window + 1;
  // phi_0 at lambda + n delta; finite lattices shrink, pad with zeros
  int inner_pts = pts;
  if (f.info.finite) inner_pts = *chain.back().lambda.N + 1;
  GroundState gn = ground_state(chain.back().B, chain.back().D,
                                std::min(inner_pts, pts));
  std::vector<double> v(pts, 0.0);
  for (size_t i = 0; i < gn.values.size(); ++i) v[i] = gn.values[i];

  for (int k = n - 1; k >= 0; --k) {
    const auto& fk = chain[k];
    std::vector<double> next(pts, 0.0);
    int support = f.info.finite ? (*fk.lambda.N - k + n) : pts - 1;  // grows by one per step
    support = std::min(support, pts - 1);
    for (int x = support; x >= 0; --x) {
      double bx = (v[x] != 0.0 || (x > 0 && v[x - 1] != 0.0)) ? fk.B(x) : 0.0;
      double dx = (x > 0) ? fk.D(x) : 0.0;
      double s = 0.0;
      if (v[x] != 0.0) s += std::sqrt(std::max(bx, 0.0)) * v[x];
      if (x > 0 && v[x - 1] != 0.0) s -= std::sqrt(std::max(dx, 0.0)) * v[x - 1];
      next[x] = s;
    }
    v = next;
  }

  GroundState g0 = ground_state(f.B, f.D, pts);
  std::vector<double> target = phi_n_vector(f, g0.values, n);
  if (v[0] == 0.0) throw Error("Rodrigues chain produced a vector vanishing at x=0");
  double scale = target[0] / v[0];
  double worst = 0.0, tscale = vec_max(target);
  for (int x = 0; x < pts; ++x)
    worst = std::max(worst, std::fabs(v[x] * scale - target[x]));
  return worst / std::max(tscale, 1e-300);
}

DualClosureReport dual_closure_check(const BoundFamily& f, int window) {
  const auto& r = f.closure;
  const double eta1 = f.eta(1);
  const double etam1 = r.rm1_2 - eta1;
  DualClosureReport rep;
  for (int x = 0; x <= window - 1; ++x) {
    double e0 = f.eta(x);
    double dplus = f.eta(x + 1) - e0;
    double dminus = (x == 0 ? etam1 : f.eta(x - 1)) - e0;
    double r1_poly = r.r1_1 * e0 + r.rm1_2;
    double r0_poly = r.r1_1 * e0 * e0 + 2.0 * r.rm1_2 * e0 - eta1 * etam1;
    double rm1_poly = r.r1_0 * e0 * e0 + r.rm1_1 * e0 + eta1 * etam1 * f.B(0);
    {
      double rhs = dplus + dminus;
      double s = std::max({1.0, std::fabs(r1_poly), std::fabs(rhs)});
      rep.r1 = std::max(rep.r1, std::fabs(r1_poly - rhs) / s);
    }
    {
      double rhs = -dplus * dminus;
      double s = std::max({1.0, std::fabs(r0_poly), std::fabs(rhs)});
      rep.r0 = std::max(rep.r0, std::fabs(r0_poly - rhs) / s);
    }
    {
      double rhs = -(f.B(x) + f.D(x)) * r0_poly;
      double s = std::max({1.0, std::fabs(rm1_poly), std::fabs(rhs)});
      rep.rm1 = std::max(rep.rm1, std::fabs(rm1_poly - rhs) / s);
    }
  }
  return rep;
}

}  // namespace opq
