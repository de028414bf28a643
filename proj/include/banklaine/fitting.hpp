#pragma once

#include <string>
#include <vector>

namespace bl {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double slope_lo = 0;  // 95% Student-t interval
  double slope_hi = 0;
  double slope_se = 0;
  double r2 = 0;
  int n = 0;
};

// Ordinary least squares y = intercept + slope x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Fit of an O-constant: lhs_i <= c * shape_i, with c taken as the largest ratio on
// the fitting partition and checked on the held-out partition.
struct BoundFit {
  std::string name;
  double c_fit = 0;      // max lhs/shape over the fitting partition
  double c_val = 0;      // max lhs/shape over the validation partition
  double slack = 2;      // validation passes when c_val <= slack * c_fit
  int n_fit = 0;
  int n_val = 0;
  bool validated = false;
};

// in_fit[i] selects the fitting partition; shape_i must be positive.
BoundFit fit_bound(const std::string& name, const std::vector<double>& lhs,
                   const std::vector<double>& shape, const std::vector<bool>& in_fit,
                   double slack = 2);

}  // namespace bl
