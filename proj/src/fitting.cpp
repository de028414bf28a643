#include "banklaine/fitting.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "banklaine/errors.hpp"

namespace bl {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw PreconditionError("need at least 3 paired points");
  LinearFit f;
  f.n = int(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw PreconditionError("abscissae are all equal");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    sse += e * e;
  }
  f.r2 = syy > 0 ? 1 - sse / syy : 1;
  f.slope_se = std::sqrt(sse / (f.n - 2) / sxx);
  const boost::math::students_t dist(f.n - 2);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.slope_lo = f.slope - q * f.slope_se;
  f.slope_hi = f.slope + q * f.slope_se;
  return f;
}

BoundFit fit_bound(const std::string& name, const std::vector<double>& lhs,
                   const std::vector<double>& shape, const std::vector<bool>& in_fit,
                   double slack) {
  if (lhs.size() != shape.size() || lhs.size() != in_fit.size())
    throw PreconditionError("fit_bound: size mismatch");
  BoundFit b;
  b.name = name;
  b.slack = slack;
  for (size_t i = 0; i < lhs.size(); ++i) {
    if (!(shape[i] > 0)) throw PreconditionError("fit_bound: shape must be positive");
    const double r = lhs[i] / shape[i];
    if (in_fit[i]) {
      b.c_fit = std::max(b.c_fit, r);
      ++b.n_fit;
    } else {
      b.c_val = std::max(b.c_val, r);
      ++b.n_val;
    }
  }
  b.validated = b.n_fit > 0 && b.n_val > 0 && std::isfinite(b.c_fit) && b.c_val <= slack * b.c_fit;
  return b;
}

}  // namespace bl
