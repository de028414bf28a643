#include "banklaine/log_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "banklaine/log_complex.hpp"

namespace bl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::complex<double> log1p_c(std::complex<double> u) {
  if (std::abs(u) < 0.5) {
    const double re = 0.5 * std::log1p(2 * u.real() + std::norm(u));
    return {re, std::atan2(u.imag(), 1 + u.real())};
  }
  return std::log(1.0 + u);
}

std::complex<double> expm1_c(std::complex<double> u) {
  if (std::abs(u) < 0.5) {
    const double s = std::sin(0.5 * u.imag());
    const double re = std::expm1(u.real()) * std::cos(u.imag()) - 2 * s * s;
    return {re, std::exp(u.real()) * std::sin(u.imag())};
  }
  return std::exp(u) - 1.0;
}

std::complex<double> log1p_exp(std::complex<double> L) {
  if (L.real() > 0) return L + log1p_c(std::exp(-L));
  return log1p_c(std::exp(L));
}

std::complex<double> log_expm1(std::complex<double> L) {
  if (L.real() > 1) return L + log1p_c(-std::exp(-L));
  return std::log(expm1_c(L));
}

double log_abs(const ExactRational& q) {
  if (q == 0) return -kInf;
  long en = 0, ed = 0;
  const double dn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double dd = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::abs(dn)) - std::log(dd) + double(en - ed) * std::numbers::ln2;
}

LogPoly::LogPoly(const std::vector<ExactRational>& coeffs) {
  for (const auto& q : coeffs) {
    logabs.push_back(log_abs(q));
    sign.push_back(q > 0 ? 1 : (q < 0 ? -1 : 0));
  }
}

LogPoly::LogPoly(std::vector<double> la, std::vector<signed char> s)
    : logabs(std::move(la)), sign(std::move(s)) {}

LogPoly LogPoly::derivative() const {
  LogPoly d;
  for (size_t j = 1; j < logabs.size(); ++j) {
    d.logabs.push_back(logabs[j] + std::log(double(j)));
    d.sign.push_back(sign[j]);
  }
  if (d.logabs.empty()) {
    d.logabs.push_back(-kInf);
    d.sign.push_back(0);
  }
  return d;
}

double LogPoly::coeff(int j) const { return sign[size_t(j)] * std::exp(logabs[size_t(j)]); }

LogEval log_eval(const LogPoly& p, std::complex<double> logw) {
  const size_t n = p.logabs.size();
  if (n == 0) return {{-kInf, 0.0}, 1.0};
  if (std::isinf(logw.real()) && logw.real() < 0) {
    if (p.sign[0] == 0) return {{-kInf, 0.0}, 1.0};
    return {{p.logabs[0], p.sign[0] < 0 ? std::numbers::pi : 0.0}, 1.0};
  }
  const double rho = logw.real();
  double M = -kInf;
  for (size_t j = 0; j < n; ++j)
    if (p.sign[j] != 0) M = std::max(M, p.logabs[j] + double(j) * rho);
  if (std::isinf(M)) return {{-kInf, 0.0}, 1.0};
  const std::complex<double> u = std::polar(1.0, logw.imag());
  // Horner on the unit circle with magnitudes scaled by the largest term.
  std::complex<double> s = 0;
  double abs_sum = 0;
  for (size_t j = n; j-- > 0;) {
    double d = 0;
    if (p.sign[j] != 0) {
      const double e = p.logabs[j] + double(j) * rho - M;
      if (e > -745) d = p.sign[j] * std::exp(e);
    }
    abs_sum += std::abs(d);
    s = s * u + d;
  }
  const double as = std::abs(s);
  if (as == 0) return {{-kInf, 0.0}, kInf};
  return {{M + std::log(as), std::arg(s)}, abs_sum / as};
}

double log_eval_real(const LogPoly& p, double x, int* sign) {
  const size_t n = p.logabs.size();
  double M = -kInf;
  for (size_t j = 0; j < n; ++j)
    if (p.sign[j] != 0) M = std::max(M, p.logabs[j] + double(j) * x);
  if (std::isinf(M)) {
    if (sign) *sign = 0;
    return -kInf;
  }
  double s = 0, comp = 0;
  for (size_t j = 0; j < n; ++j) {
    if (p.sign[j] == 0) continue;
    const double e = p.logabs[j] + double(j) * x - M;
    if (e < -745) continue;
    // Kahan summation
    const double y = p.sign[j] * std::exp(e) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  if (sign) *sign = s > 0 ? 1 : (s < 0 ? -1 : 0);
  return M + std::log(std::abs(s));
}

}  // namespace bl
