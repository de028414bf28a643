#pragma once

#include <complex>
#include <vector>

#include "banklaine/exact_coeffs.hpp"

namespace bl {

// Polynomial in w with exact rational coefficients, c[i] multiplies w^i.
struct RatPoly {
  std::vector<ExactRational> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<ExactRational> coeffs);
  static RatPoly monomial(const ExactRational& a, int deg);

  int degree() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();

  // w d/dw
  RatPoly euler() const;
  std::complex<double> eval(std::complex<double> w) const;
  // sum |c_i| r^i, the scale used for relative residuals
  double abs_eval(double r) const;
  std::vector<double> to_double() const;
};

RatPoly operator+(const RatPoly& p, const RatPoly& q);
RatPoly operator-(const RatPoly& p, const RatPoly& q);
RatPoly operator*(const RatPoly& p, const RatPoly& q);
RatPoly operator*(const ExactRational& a, const RatPoly& p);
bool operator==(const RatPoly& p, const RatPoly& q);

struct RatFunc {
  RatPoly num;
  RatPoly den;

  RatFunc();
  RatFunc(RatPoly n);
  RatFunc(RatPoly n, RatPoly d);

  RatFunc euler() const;
  bool is_zero() const { return num.is_zero(); }
  std::complex<double> eval(std::complex<double> w) const;
};

RatFunc operator+(const RatFunc& p, const RatFunc& q);
RatFunc operator-(const RatFunc& p, const RatFunc& q);
RatFunc operator*(const RatFunc& p, const RatFunc& q);
RatFunc operator/(const RatFunc& p, const RatFunc& q);

}  // namespace bl
