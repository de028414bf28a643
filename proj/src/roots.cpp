#include "banklaine/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace bl {

void balance_matrix(std::vector<double>& a, int n) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0, c = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a[size_t(j) * n + i]);
        r += std::abs(a[size_t(i) * n + j]);
      }
      if (c == 0 || r == 0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 0; j < n; ++j) a[size_t(i) * n + j] *= g;
        for (int j = 0; j < n; ++j) a[size_t(j) * n + i] *= f;
      }
    }
  }
}

RootResult poly_roots(const LogPoly& p) {
  RootResult out;
  int d = p.degree();
  while (d > 0 && p.sign[size_t(d)] == 0) --d;
  if (d <= 0) return out;
  // scale w = s u with s the geometric mean of the root moduli
  const double log_s = (p.logabs[0] - p.logabs[size_t(d)]) / d;
  std::vector<double> c(size_t(d) + 1);
  for (int j = 0; j <= d; ++j) {
    if (p.sign[size_t(j)] == 0) continue;
    const double e = p.logabs[size_t(j)] + j * log_s - (p.logabs[size_t(d)] + d * log_s);
    c[size_t(j)] = e < -700 ? 0.0 : p.sign[size_t(j)] * std::exp(e);
  }
  const double lead = c[size_t(d)];
  std::vector<double> a(size_t(d) * d, 0.0);
  for (int j = 0; j < d; ++j) a[size_t(j)] = -c[size_t(d - 1 - j)] / lead;
  for (int i = 1; i < d; ++i) a[size_t(i) * d + (i - 1)] = 1.0;
  balance_matrix(a, d);
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = a[size_t(i) * d + j];
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  const auto ev = es.eigenvalues();
  const LogPoly dp = p.derivative();
  const double s = std::exp(log_s);
  for (int i = 0; i < d; ++i) {
    std::complex<double> w = std::complex<double>(ev(i)) * s;
    // Newton polish; accept a step only if it lowers |p|
    LogEval cur = log_eval(p, std::log(w));
    for (int it = 0; it < 8; ++it) {
      if (std::isinf(cur.log_value.real())) break;
      const LogEval der = log_eval(dp, std::log(w));
      const std::complex<double> step = std::exp(cur.log_value - der.log_value);
      const std::complex<double> wn = w - step;
      const LogEval nxt = log_eval(p, std::log(wn));
      if (!(nxt.log_value.real() < cur.log_value.real())) break;
      w = wn;
      cur = nxt;
      if (std::abs(step) < 1e-15 * std::abs(w)) break;
    }
    out.roots.push_back(w);
    const double rel = std::isinf(cur.log_value.real()) ? 0.0 : 1.0 / cur.cond;
    out.max_residual = std::max(out.max_residual, rel);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

}  // namespace bl
