#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "banklaine/chebyshev.hpp"
#include "banklaine/log_complex.hpp"
#include "banklaine/sequence_builder.hpp"
#include "banklaine/special_eval.hpp"

namespace bl {

struct PairIdx {
  int m = 0;
  int n = 0;
  int N() const { return m + 2 * n + 1; }
};

enum class Side { U, V };

double solve_s(int m, int n);
// The t with g_from(t) = g_to(x).
double phi(PairIdx from, PairIdx to, double x);
// phi'(x) = J_from(e^{phi(x)}) / J_to(e^x)
double phi_prime(PairIdx from, PairIdx to, double x);
// Linear asymptote of phi as x -> -infinity.
double phi_asymptote(PairIdx from, PairIdx to, double x);

enum class FixedPointCase { Greater, Equal, Less };

struct FixedPointReport {
  PairIdx from, to;
  std::vector<double> points;
  FixedPointCase tag = FixedPointCase::Equal;
  std::vector<double> deviation;  // p - log N, or p - ((l-1)/l) log N
  bool degenerate = false;        // from == to
  double sign_margin = 0;         // smallest c with phi<x below p_min-c and phi>x above p_max+c
  double sup_below_logN = 0;      // sup over x <= log N of phi(x) - log N
};

FixedPointReport fixed_points(PairIdx from, PairIdx to, double lo, double hi, int grid = 800);

struct StripPoint {
  int k = 1;
  double t = 0;
  double X = 0;   // interpolated real part before scaling
  bool conj = false;
};

class GluedMapCtx {
 public:
  explicit GluedMapCtx(SequencePlan plan);
  GluedMapCtx(const GluedMapCtx&) = delete;
  GluedMapCtx& operator=(const GluedMapCtx&) = delete;

  const SequencePlan& plan() const { return plan_; }
  int K() const { return plan_.K; }
  PairIdx pair(int k) const { return {plan_.m(k), plan_.n(k)}; }
  const GFunction& g(int k) const { return g_function(plan_.m(k), plan_.n(k)); }
  double s(int k) const;

  double psi(int k, double x, Side side) const;
  double psi_prime(int k, double x, Side side) const;
  // Cached interpolants of (psi, psi') for bulk sweeps; exact outside the cached window.
  std::pair<double, double> psi_both_fast(int k, double x, Side side) const;

  // Strip location of z (conjugated into Im >= 0), with X from exact or cached psi.
  StripPoint locate_U(std::complex<double> z, bool fast = false) const;
  StripPoint locate_V(std::complex<double> z, bool fast = false) const;
  // zeta with U(z) = g_k(zeta); V(z) = g_k(zeta)
  std::complex<double> zeta_U(std::complex<double> z, int* k = nullptr, bool fast = false) const;
  std::complex<double> zeta_V(std::complex<double> z, int* k = nullptr, bool fast = false) const;

  LogComplex eval_U(std::complex<double> z) const;
  LogComplex eval_V(std::complex<double> z) const;
  std::complex<double> log_V_minus_one(std::complex<double> z) const;
  std::complex<double> log_log_U(std::complex<double> z) const;
  std::complex<double> eval_Q(std::complex<double> z) const;
  std::complex<double> eval_Q_inverse(std::complex<double> w) const;
  LogComplex eval_W(std::complex<double> z) const;
  LogComplex eval_G(std::complex<double> z) const;

  bool in_V_sector(std::complex<double> z) const;
  std::complex<double> pow_U(std::complex<double> z) const;  // z^rho
  std::complex<double> pow_V(std::complex<double> z) const;  // -(-z)^sigma

 private:
  SequencePlan plan_;
  std::unique_ptr<std::once_flag[]> s_once_;
  mutable std::vector<double> s_;
  std::unique_ptr<std::once_flag[]> cheb_once_;
  mutable std::vector<ChebPanels> cheb_;
  const ChebPanels& cheb(int k, Side side) const;
};

struct SeamReport {
  double max_UV = 0;        // |log U(i g(y)) - log V(i y^gamma)|
  double max_U_strip = 0;   // U strip seams, t -> 1 vs next strip t = 0
  double max_V_strip = 0;
  double max_G_sector = 0;  // G on either side of the sector rays
  double max_Q = 0;         // Q continuity across its internal seams
  int samples = 0;
};

SeamReport boundary_consistency_check(const GluedMapCtx& ctx, const std::vector<double>& ygrid);

}  // namespace bl
