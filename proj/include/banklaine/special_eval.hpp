#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "banklaine/exact_coeffs.hpp"
#include "banklaine/log_complex.hpp"
#include "banklaine/log_poly.hpp"

namespace bl {

enum class Route { Direct, Segment, LeftRay, Asymptotic };

struct HEval {
  std::complex<double> log_value;  // log h or log(h-1)
  double err = 0.0;                // absolute error estimate in the log
  Route route = Route::Direct;
};

// h_{m,n}(w) = P_n(w) e^w / Q_m(w) with everything in log form.
// Real-line routines take x = log w.
class GFunction {
 public:
  GFunction(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int N() const { return N_; }
  // log(C(m+2n,m) (m+2n)!)
  double log_c() const { return log_c_; }
  const LogPoly& Q() const { return Q_; }
  const LogPoly& P() const;

  double log_Q_real(double x) const;
  double log_J_real(double x) const;
  // r(x) = log(g(x)-1) - e^x
  double rest(double x) const;
  double log_g_minus_one(double x) const;
  double log_g(double x) const;
  double log_log_g(double x) const;
  double log_gprime(double x) const;

  HEval log_h(std::complex<double> logw) const;
  HEval log_h_minus_one(std::complex<double> logw) const;
  // log log h; uses the asymptotic form once |w| is beyond double range
  std::complex<double> log_log_h(std::complex<double> logw) const;
  // log of g'(z) at z = logw, on the branch of logw
  std::complex<double> log_gprime(std::complex<double> z) const;

  // Individual routes, exposed for testing.
  HEval route_direct(std::complex<double> logw) const;
  HEval route_segment(std::complex<double> logw) const;
  HEval route_left_ray(std::complex<double> logw) const;

 private:
  int m_, n_, N_;
  double log_c_;
  LogPoly Q_;
  std::vector<double> q_;  // Q coefficients as doubles, empty if they underflow
  mutable std::once_flag p_once_;
  mutable LogPoly P_;
};

// Shared, thread-safe cache of GFunction objects keyed by (m,n).
const GFunction& g_function(int m, int n);

// Polynomial value at w from exact coefficients.
LogComplex eval_poly(const std::vector<ExactRational>& coeffs, std::complex<double> w);
LogComplex eval_h(int m, int n, std::complex<double> y);
LogComplex eval_g(int m, int n, std::complex<double> z);
LogComplex eval_g_prime(int m, int n, std::complex<double> z);
double eval_log_g_minus_one(int m, int n, double x);
// Direct value-space form log(P e^w/Q - 1), for the crossover comparison.
double eval_log_g_minus_one_direct(int m, int n, double x);
// R(y,N) = log(h(y)-1) minus the explicit main terms.
double lemma3_remainder(int m, int n, double y);
bool poly_tail_check(int m, int n, std::complex<double> z);

}  // namespace bl
