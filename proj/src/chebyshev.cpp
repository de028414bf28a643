#include "banklaine/chebyshev.hpp"

#include <algorithm>
#include <numbers>
#include <tuple>

namespace bl {

ChebPanels::ChebPanels(double lo, double hi, int panels, int degree, const Fn& f, double tol,
                       int max_depth)
    : degree_(degree) {
  breaks_.push_back(lo);
  const double w = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double b = p + 1 == panels ? hi : lo + (p + 1) * w;
    fit(breaks_.back(), b, f, tol, max_depth);
  }
}

void ChebPanels::fit(double a, double b, const Fn& f, double tol, int depth) {
  const int n = degree_ + 1;
  std::vector<double> f1(static_cast<size_t>(n)), f2(static_cast<size_t>(n)), th(static_cast<size_t>(n));
  double s1 = 1, s2 = 1;
  for (int j = 0; j < n; ++j) {
    th[size_t(j)] = std::numbers::pi * (j + 0.5) / n;
    std::tie(f1[size_t(j)], f2[size_t(j)]) = f(a + 0.5 * (b - a) * (1 + std::cos(th[size_t(j)])));
    s1 = std::max(s1, std::abs(f1[size_t(j)]));
    s2 = std::max(s2, std::abs(f2[size_t(j)]));
  }
  std::vector<double> k1(static_cast<size_t>(n)), k2(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t1 = 0, t2 = 0;
    for (int j = 0; j < n; ++j) {
      const double c = std::cos(i * th[size_t(j)]);
      t1 += f1[size_t(j)] * c;
      t2 += f2[size_t(j)] * c;
    }
    const double scale = (i == 0 ? 1.0 : 2.0) / n;
    k1[size_t(i)] = t1 * scale;
    k2[size_t(i)] = t2 * scale;
  }
  double tail = 0;
  for (int i = n - 3; i < n; ++i)
    tail = std::max({tail, std::abs(k1[size_t(i)]) / s1, std::abs(k2[size_t(i)]) / s2});
  if (tail > tol && depth > 0) {
    const double m = 0.5 * (a + b);
    fit(a, m, f, tol, depth - 1);
    fit(m, b, f, tol, depth - 1);
    return;
  }
  tail_ = std::max(tail_, tail);
  breaks_.push_back(b);
  c1_.insert(c1_.end(), k1.begin(), k1.end());
  c2_.insert(c2_.end(), k2.begin(), k2.end());
}

std::pair<double, double> ChebPanels::operator()(double x) const {
  const int n = degree_ + 1;
  const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  const size_t p = size_t(it - breaks_.begin()) - 1;
  const double a = breaks_[p], b = breaks_[p + 1];
  const double u = 2 * (x - a) / (b - a) - 1;
  // Clenshaw
  double b1 = 0, b2 = 0, d1 = 0, d2 = 0;
  const double* k1 = &c1_[p * size_t(n)];
  const double* k2 = &c2_[p * size_t(n)];
  for (int i = n - 1; i >= 1; --i) {
    const double t1 = 2 * u * b1 - b2 + k1[i];
    b2 = b1;
    b1 = t1;
    const double t2 = 2 * u * d1 - d2 + k2[i];
    d2 = d1;
    d1 = t2;
  }
  return {u * b1 - b2 + k1[0], u * d1 - d2 + k2[0]};
}

}  // namespace bl
