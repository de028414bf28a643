#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace bl {

// Piecewise Chebyshev interpolant of a pair of functions on [lo, hi].
// Panels start equal and are bisected until the trailing coefficients of both
// components fall below tol * max(1, |f| on the panel).
class ChebPanels {
 public:
  using Fn = std::function<std::pair<double, double>(double)>;

  ChebPanels() = default;
  ChebPanels(double lo, double hi, int panels, int degree, const Fn& f, double tol = 1e-12,
             int max_depth = 12);

  bool contains(double x) const { return !breaks_.empty() && x >= breaks_.front() && x <= breaks_.back(); }
  std::pair<double, double> operator()(double x) const;
  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  int panels() const { return int(breaks_.size()) - 1; }
  // largest accepted tail estimate, relative to max(1, |f|)
  double tail_estimate() const { return tail_; }

 private:
  int degree_ = 0;
  double tail_ = 0;
  std::vector<double> breaks_;
  std::vector<double> c1_, c2_;  // panel-major coefficient tables

  void fit(double a, double b, const Fn& f, double tol, int depth);
};

}  // namespace bl
