#pragma once

#include <complex>
#include <vector>

#include "banklaine/exact_coeffs.hpp"

namespace bl {

// Real-coefficient polynomial stored as log|c_j| and sign, so that
// coefficients like 1/376! survive.
struct LogPoly {
  std::vector<double> logabs;
  std::vector<signed char> sign;

  LogPoly() = default;
  explicit LogPoly(const std::vector<ExactRational>& coeffs);
  LogPoly(std::vector<double> logabs, std::vector<signed char> sign);

  int degree() const { return int(logabs.size()) - 1; }
  LogPoly derivative() const;
  double coeff(int j) const;
};

struct LogEval {
  std::complex<double> log_value;  // principal-ish log of p(w); real part -inf at an exact zero
  double cond = 1.0;               // sum |terms| / |sum|
};

// p(w) with w = exp(logw); logw may be any branch and may have real part -inf.
LogEval log_eval(const LogPoly& p, std::complex<double> logw);
// log p(e^x) for real x; sign stored separately.
double log_eval_real(const LogPoly& p, double x, int* sign = nullptr);

double log_abs(const ExactRational& q);

}  // namespace bl
