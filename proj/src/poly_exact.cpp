#include "banklaine/poly_exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bl {

RatPoly::RatPoly(std::vector<ExactRational> coeffs) : c(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(const ExactRational& a, int deg) {
  std::vector<ExactRational> v(size_t(deg + 1));
  v[size_t(deg)] = a;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

RatPoly RatPoly::euler() const {
  RatPoly r;
  r.c.resize(c.size());
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] * int(i);
  r.trim();
  return r;
}

std::complex<double> RatPoly::eval(std::complex<double> w) const {
  std::complex<double> s = 0;
  for (size_t i = c.size(); i-- > 0;) s = s * w + c[i].get_d();
  return s;
}

double RatPoly::abs_eval(double r) const {
  double s = 0;
  for (size_t i = c.size(); i-- > 0;) s = s * r + std::abs(c[i].get_d());
  return s;
}

std::vector<double> RatPoly::to_double() const {
  std::vector<double> v;
  v.reserve(c.size());
  for (const auto& q : c) v.push_back(q.get_d());
  return v;
}

RatPoly operator+(const RatPoly& p, const RatPoly& q) {
  std::vector<ExactRational> v(std::max(p.c.size(), q.c.size()));
  for (size_t i = 0; i < p.c.size(); ++i) v[i] += p.c[i];
  for (size_t i = 0; i < q.c.size(); ++i) v[i] += q.c[i];
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& p, const RatPoly& q) {
  std::vector<ExactRational> v(std::max(p.c.size(), q.c.size()));
  for (size_t i = 0; i < p.c.size(); ++i) v[i] += p.c[i];
  for (size_t i = 0; i < q.c.size(); ++i) v[i] -= q.c[i];
  return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& p, const RatPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<ExactRational> v(p.c.size() + q.c.size() - 1);
  for (size_t i = 0; i < p.c.size(); ++i)
    for (size_t j = 0; j < q.c.size(); ++j) v[i + j] += p.c[i] * q.c[j];
  return RatPoly(std::move(v));
}

RatPoly operator*(const ExactRational& a, const RatPoly& p) {
  std::vector<ExactRational> v(p.c);
  for (auto& x : v) x *= a;
  return RatPoly(std::move(v));
}

bool operator==(const RatPoly& p, const RatPoly& q) { return p.c == q.c; }

RatFunc::RatFunc() : den(RatPoly({ExactRational(1)})) {}
RatFunc::RatFunc(RatPoly n) : num(std::move(n)), den(RatPoly({ExactRational(1)})) {}
RatFunc::RatFunc(RatPoly n, RatPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
}

RatFunc RatFunc::euler() const {
  if (den.degree() == 0) return RatFunc(num.euler(), den);
  return RatFunc(num.euler() * den - num * den.euler(), den * den);
}

std::complex<double> RatFunc::eval(std::complex<double> w) const {
  return num.eval(w) / den.eval(w);
}

RatFunc operator+(const RatFunc& p, const RatFunc& q) {
  if (p.den == q.den) return RatFunc(p.num + q.num, p.den);
  return RatFunc(p.num * q.den + q.num * p.den, p.den * q.den);
}

RatFunc operator-(const RatFunc& p, const RatFunc& q) {
  if (p.den == q.den) return RatFunc(p.num - q.num, p.den);
  return RatFunc(p.num * q.den - q.num * p.den, p.den * q.den);
}

RatFunc operator*(const RatFunc& p, const RatFunc& q) {
  return RatFunc(p.num * q.num, p.den * q.den);
}

RatFunc operator/(const RatFunc& p, const RatFunc& q) {
  return RatFunc(p.num * q.den, p.den * q.num);
}

}  // namespace bl
