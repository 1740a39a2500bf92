#include "opq/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "opq/errors.hpp"

namespace opq {

Eigen::MatrixXd TridiagonalOperator::dense() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = super[i];
      m(i + 1, i) = sub[i];
    }
  }
  return m;
}

std::vector<double> TridiagonalOperator::apply(const std::vector<double>& v) const {
  const int n = size();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += sub[i - 1] * v[i - 1];
    if (i + 1 < n) s += super[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double TridiagonalOperator::norm_max() const {
  double m = 0.0;
  for (double v : diag) m = std::max(m, std::fabs(v));
  for (double v : super) m = std::max(m, std::fabs(v));
  for (double v : sub) m = std::max(m, std::fabs(v));
  return m;
}

Eigen::MatrixXd BidiagonalFactor::dense() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = main[i];
  for (int i = 1; i < n; ++i) {
    if (forward)
      m(i - 1, i) = -shift[i - 1];
    else
      m(i, i - 1) = -shift[i - 1];
  }
  return m;
}

std::vector<double> BidiagonalFactor::apply(const std::vector<double>& v) const {
  const int n = size();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = main[i] * v[i];
    if (forward) {
      if (i + 1 < n) s -= shift[i] * v[i + 1];
    } else {
      if (i > 0) s -= shift[i - 1] * v[i - 1];
    }
    out[i] = s;
  }
  return out;
}

double sqrt_product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  if (a < 0.0 || b < 0.0)
    throw InvalidFamilyError("negative product under a square root: B(x)D(x+1) < 0");
  return std::exp(0.5 * (std::log(a) + std::log(b)));
}

TridiagonalOperator build_hamiltonian(const LatticeFn& B, const LatticeFn& D,
                                      int n_points) {
  if (std::fabs(D(0)) != 0.0)
    throw InvalidFamilyError("D(0) must vanish exactly");
  TridiagonalOperator h;
  h.symmetric = true;
  h.diag.resize(n_points);
  h.super.resize(n_points - 1);
  for (int x = 0; x < n_points; ++x) h.diag[x] = B(x) + D(x);
  for (int x = 0; x + 1 < n_points; ++x)
    h.super[x] = -sqrt_product(B(x), D(x + 1));
  h.sub = h.super;
  return h;
}

std::pair<BidiagonalFactor, BidiagonalFactor> factorize(const LatticeFn& B,
                                                        const LatticeFn& D,
                                                        int n_points) {
  BidiagonalFactor a, ad;
  a.forward = true;
  ad.forward = false;
  a.main.resize(n_points);
  ad.main.resize(n_points);
  a.shift.resize(n_points - 1);
  ad.shift.resize(n_points - 1);
  for (int x = 0; x < n_points; ++x) {
    double bx = B(x);
    if (bx < 0.0) throw InvalidFamilyError("B(x) < 0 on the window");
    a.main[x] = ad.main[x] = std::sqrt(bx);
  }
  for (int x = 1; x < n_points; ++x) {
    double dx = D(x);
    if (dx < 0.0) throw InvalidFamilyError("D(x) < 0 on the window");
    a.shift[x - 1] = ad.shift[x - 1] = std::sqrt(dx);
  }
  return {a, ad};
}

GroundState ground_state(const LatticeFn& B, const LatticeFn& D, int n_points) {
  GroundState g;
  g.values.resize(n_points);
  double log_phi = 0.0;  // log phi_0(x)
  g.values[0] = 1.0;
  g.squared_norm = 1.0;
  for (int x = 1; x < n_points; ++x) {
    double b = B(x - 1), d = D(x);
    if (!(b > 0.0) || !(d > 0.0))
      throw InvalidFamilyError("ground-state product needs B(x)>0, D(x+1)>0");
    log_phi += 0.5 * (std::log(b) - std::log(d));
    g.values[x] = std::exp(log_phi);
    g.squared_norm += std::exp(2.0 * log_phi);
  }
  return g;
}

TridiagonalOperator similarity_transform(const LatticeFn& B, const LatticeFn& D,
                                         int n_points) {
  TridiagonalOperator h;
  h.symmetric = false;
  h.diag.resize(n_points);
  h.super.resize(n_points - 1);
  h.sub.resize(n_points - 1);
  for (int x = 0; x < n_points; ++x) h.diag[x] = B(x) + D(x);
  for (int x = 0; x + 1 < n_points; ++x) {
    h.super[x] = -B(x);
    h.sub[x] = -D(x + 1);
  }
  return h;
}

TruncationWindow extend_window(const LatticeFn& B, const LatticeFn& D,
                               int x_cap) {
  double log_phi2 = 0.0;
  double partial = 1.0;
  for (int x = 1; x <= x_cap; ++x) {
    double b = B(x - 1), d = D(x);
    if (!(b > 0.0) || !(d > 0.0))
      throw InvalidFamilyError("B or D not positive while extending window");
    log_phi2 += std::log(b) - std::log(d);
    partial += std::exp(log_phi2);
    double ratio = B(x) / D(x + 1);
    if (ratio < 1.0) {
      double tail = std::exp(log_phi2) * ratio / (1.0 - ratio);
      if (tail < 1e-16 * partial) return {x, tail};
    }
  }
  throw DivergentMeasureError(
      "phi_0^2 tail did not pass the 1e-16 test before the window cap");
}

// ---------------------------------------------------------------------------
// implicit-shift QL with eigenvector accumulation (EISPACK tql2 lineage)

EigenDecomposition symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                               const std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> d = diag;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = off[i];
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 80) throw Error("QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    out.vectors.col(j) = z.col(order[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// bisection on the Golub-Kahan tridiagonal of the bidiagonal factor

namespace {

// # eigenvalues of the Golub-Kahan matrix below t.  Zero diagonal keeps the
// pivot recurrence relatively accurate for graded factors.
int gk_count_below(const std::vector<double>& c, double t) {
  int count = 0;
  double p = -t;
  if (p < 0.0) ++count;
  for (double ci : c) {
    double denom = p;
    if (denom == 0.0) denom = -1e-300;
    p = -t - ci * ci / denom;
    if (std::fabs(p) > 1e300) p = (p < 0.0 ? -1e300 : 1e300);
    if (p < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> factored_eigenvalues(const BidiagonalFactor& a, int count) {
  const int n = a.size();
  count = std::min(count, n);
  // interleaved off-diagonals of the permuted [0 A; A^T 0] form
  std::vector<double> c;
  c.reserve(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    c.push_back(a.main[i]);
    if (i + 1 < n) c.push_back(a.shift[i]);
  }
  double hi0 = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    double s = std::fabs(c[i]);
    if (i > 0) s += std::fabs(c[i - 1]);
    hi0 = std::max(hi0, s);
  }
  hi0 = hi0 * (1.0 + 1e-10) + 1e-300;

  std::vector<double> eigs(count);
  for (int k = 0; k < count; ++k) {
    // k-th singular value: sigma with  #sigma < t  crossing k -> k+1
    double lo = 0.0, hi = hi0;
    for (int iter = 0; iter < 2000; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      int below = gk_count_below(c, mid) - n;
      if (below > k)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 1e-16 * hi) break;
    }
    double sigma = 0.5 * (lo + hi);
    eigs[k] = sigma * sigma;
  }
  return eigs;
}

}  // namespace opq
