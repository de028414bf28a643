#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace bl {

// exp(log_mag + i(arg + 2 pi winding)); log_mag = -inf is zero, +inf is a pole.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double arg = 0.0;
  long long winding = 0;

  static LogComplex zero() { return {}; }
  static LogComplex pole() { return {std::numeric_limits<double>::infinity(), 0.0, 0}; }

  static LogComplex from_log(std::complex<double> L) {
    if (std::isinf(L.real())) return L.real() < 0 ? zero() : pole();
    const double two_pi = 2 * std::numbers::pi;
    double a = std::remainder(L.imag(), two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    return {L.real(), a, (long long)std::llround((L.imag() - a) / two_pi)};
  }

  static LogComplex from_value(std::complex<double> v) {
    if (v == 0.0) return zero();
    return {std::log(std::abs(v)), std::arg(v), 0};
  }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }
  bool is_pole() const { return std::isinf(log_mag) && log_mag > 0; }

  std::complex<double> log() const {
    return {log_mag, arg + 2 * std::numbers::pi * double(winding)};
  }
  std::complex<double> principal_log() const { return {log_mag, arg}; }
  std::complex<double> value() const {
    if (is_zero()) return 0.0;
    return std::polar(std::exp(log_mag), arg);
  }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    return from_log(a.log() + b.log());
  }
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    return from_log(a.log() - b.log());
  }
};

// log(1 + e^L) with the small and large ends handled by series.
std::complex<double> log1p_exp(std::complex<double> L);
// log(e^L - 1).
std::complex<double> log_expm1(std::complex<double> L);
// log(1 + u) accurate for small |u|.
std::complex<double> log1p_c(std::complex<double> u);
// e^u - 1 accurate for small |u|.
std::complex<double> expm1_c(std::complex<double> u);

}  // namespace bl
