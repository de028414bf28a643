#include "banklaine/special_eval.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "banklaine/errors.hpp"

namespace bl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
using cd = std::complex<double>;

struct Rule {
  std::vector<double> x, w;  // on [0,1]
};

template <unsigned P>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, P>;
  Rule r;
  const auto& a = G::abscissa();
  const auto& wt = G::weights();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      r.x.push_back(0.5);
      r.w.push_back(0.5 * wt[i]);
      continue;
    }
    r.x.push_back(0.5 - 0.5 * a[i]);
    r.w.push_back(0.5 * wt[i]);
    r.x.push_back(0.5 + 0.5 * a[i]);
    r.w.push_back(0.5 * wt[i]);
  }
  return r;
}

const Rule& rule20() {
  static const Rule r = make_rule<20>();
  return r;
}
const Rule& rule30() {
  static const Rule r = make_rule<30>();
  return r;
}

// Integral of exp(f(v)) over panels generated by `next`, in log form.
// Returns log of the 20-point sum, with a relative error estimate from the 30-point sum.
struct LogIntegral {
  cd log_value;
  double rel_err;
};

template <class F, class NextEdge>
LogIntegral integrate_log(F&& f, double start, NextEdge&& next, double end, int max_panels,
                          bool with_error = true) {
  const Rule& r20 = rule20();
  const Rule& r30 = rule30();
  std::vector<cd> v20, v30;
  std::vector<double> w20, w30;
  double a = start;
  double peak = -kInf;
  int panels = 0;
  while (a < end) {
    double b = std::min(next(a), end);
    if (end - b < 0.25 * (b - a)) b = end;  // no sliver panels
    const double h = b - a;
    double panel_max = -kInf;
    for (size_t i = 0; i < r20.x.size(); ++i) {
      const cd val = f(a + h * r20.x[i]);
      v20.push_back(val);
      w20.push_back(h * r20.w[i]);
      panel_max = std::max(panel_max, val.real());
    }
    if (with_error) {
      for (size_t i = 0; i < r30.x.size(); ++i) {
        v30.push_back(f(a + h * r30.x[i]));
        w30.push_back(h * r30.w[i]);
      }
    }
    const double tail = f(b).real();
    peak = std::max(peak, panel_max);
    a = b;
    if (++panels > max_panels) return {cd(0, 0), kInf};
    // stop once past the peak and far below it
    if (tail < peak - 60 && tail <= panel_max) break;
  }
  double M = -kInf;
  for (const auto& v : v20) M = std::max(M, v.real());
  for (const auto& v : v30) M = std::max(M, v.real());
  if (std::isinf(M)) return {cd(-kInf, 0), kInf};
  cd s20 = 0, s30 = 0;
  double abs20 = 0;
  for (size_t i = 0; i < v20.size(); ++i) {
    const cd t = w20[i] * std::exp(v20[i] - M);
    s20 += t;
    abs20 += std::abs(t);
  }
  for (size_t i = 0; i < v30.size(); ++i) s30 += w30[i] * std::exp(v30[i] - M);
  if (!with_error) s30 = s20;
  const double as = std::abs(s30);
  if (as == 0) return {cd(-kInf, 0), kInf};
  const double err = std::abs(s20 - s30) / as + 8 * kEps * abs20 / as * std::sqrt(double(v20.size()));
  return {M + std::log(s30), err};
}

}  // namespace

GFunction::GFunction(int m, int n) : m_(m), n_(n), N_(m + 2 * n + 1) {
  if (m < 0 || n < 0) throw PreconditionError("m, n must be nonnegative");
  log_c_ = 2 * std::lgamma(double(m + 2 * n + 1)) - std::lgamma(double(m + 1)) -
           std::lgamma(double(2 * n + 1));
  // A_i = (m+1-i) A_{i-1} / (i (N-i))
  std::vector<double> la{0.0};
  std::vector<signed char> sa{1};
  for (int i = 1; i <= m; ++i) {
    la.push_back(la.back() + std::log(double(m + 1 - i)) - std::log(double(i)) -
                 std::log(double(N_ - i)));
    sa.push_back(1);
  }
  // positive coefficients: plain Horner is accurate whenever they fit in a double
  if (*std::min_element(la.begin(), la.end()) > -700) {
    for (double l : la) q_.push_back(std::exp(l));
  }
  Q_ = LogPoly(std::move(la), std::move(sa));
}

const LogPoly& GFunction::P() const {
  std::call_once(p_once_, [this] {
    std::vector<double> lb{0.0};
    std::vector<signed char> sb{1};
    for (int j = 1; j <= 2 * n_; ++j) {
      lb.push_back(lb.back() + std::log(double(2 * n_ + 1 - j)) - std::log(double(j)) -
                   std::log(double(N_ - j)));
      sb.push_back(static_cast<signed char>(-sb.back()));
    }
    P_ = LogPoly(std::move(lb), std::move(sb));
  });
  return P_;
}

double GFunction::log_Q_real(double x) const {
  if (m_ == 0) return 0.0;
  if (q_.empty()) return log_eval_real(Q_, x);
  if (x <= 0) {
    const double w = std::exp(x);
    double acc = q_.back();
    for (int i = m_ - 1; i >= 0; --i) acc = acc * w + q_[size_t(i)];
    return std::log(acc);
  }
  const double u = std::exp(-x);
  double acc = q_.front();
  for (int i = 1; i <= m_; ++i) acc = acc * u + q_[size_t(i)];
  return m_ * x + std::log(acc);
}

double GFunction::log_J_real(double x) const {
  if (std::isinf(x) && x < 0) return -std::log(double(N_));
  const double w = std::exp(x);
  const double Nd = N_;
  if (w > 1e6 * (Nd + 1) * (Nd + 1)) {
    double wq = 0.0;  // w Q'(w)/Q(w)
    if (m_ > 0) wq = std::exp(log_eval_real(Q_.derivative(), x) + x - log_Q_real(x));
    const double mu = Nd - 1 - 2 * wq;
    return -x - std::log1p(mu / w);
  }
  const double lq = log_Q_real(x);
  const double S = w + Nd;
  const double cap = std::min(1.0, 8.0 / S);
  const double h0 = std::min(1.0, 0.5 / S);
  auto f = [&](double v) {
    if (v >= 1) return cd(N_ > 1 ? -kInf : -w, 0);
    double val = -w * v;
    if (N_ > 1) val += (Nd - 1) * std::log1p(-v);
    if (m_ > 0) val += 2 * (lq - log_Q_real(x + std::log1p(-v)));
    return cd(val, 0);
  };
  auto next = [&](double a) { return a == 0 ? h0 : a + std::min(a, cap); };
  const auto r = integrate_log(f, 0.0, next, 1.0, 100000, false);
  return r.log_value.real();
}

double GFunction::rest(double x) const {
  return N_ * x - log_c_ - 2 * log_Q_real(x) + log_J_real(x);
}

double GFunction::log_g_minus_one(double x) const { return std::exp(x) + rest(x); }

double GFunction::log_g(double x) const {
  const double L = log_g_minus_one(x);
  return L > 0 ? L + std::log1p(std::exp(-L)) : std::log1p(std::exp(L));
}

double GFunction::log_log_g(double x) const {
  if (x > 30) return x + std::log1p(std::exp(-x) * rest(x));
  return std::log(log_g(x));
}

double GFunction::log_gprime(double x) const {
  return std::exp(x) + N_ * x - log_c_ - 2 * log_Q_real(x);
}

std::complex<double> GFunction::log_gprime(std::complex<double> z) const {
  const cd lq = m_ == 0 ? cd(0, 0) : log_eval(Q_, z).log_value;
  return std::exp(z) + double(N_) * z - log_c_ - 2.0 * lq;
}

HEval GFunction::route_direct(cd lw) const {
  const LogEval p = log_eval(P(), lw);
  const LogEval q = m_ == 0 ? LogEval{cd(0, 0), 1.0} : log_eval(Q_, lw);
  if (std::isinf(q.log_value.real())) return {cd(kInf, 0), 0.0, Route::Direct};
  if (std::isinf(p.log_value.real())) return {cd(-kInf, 0), 0.0, Route::Direct};
  const cd w = std::exp(lw);
  const double err = 4 * kEps * (p.cond + q.cond + std::abs(w) + 1);
  return {p.log_value - q.log_value + w, err, Route::Direct};
}

// log(h-1) = w + N log w - log c - 2 log Q(w) + log J(w),
// J(w) = int_0^1 e^{-wv} (1-v)^{N-1} (Q(w)/Q(w(1-v)))^2 dv.
HEval GFunction::route_segment(cd lw) const {
  const cd w = std::exp(lw);
  const double Nd = N_;
  const LogEval q = m_ == 0 ? LogEval{cd(0, 0), 1.0} : log_eval(Q_, lw);
  if (std::isinf(q.log_value.real())) return {cd(kInf, 0), kInf, Route::Segment};
  const double S = std::abs(w) + Nd;
  double cap = std::min(1.0, 8.0 / S);
  if (std::abs(w.imag()) > 0) cap = std::min(cap, 6.0 / std::abs(w.imag()));
  const double h0 = std::min(1.0, 0.5 / S);
  double qcond = 0;
  auto f = [&](double v) {
    if (v >= 1) return cd(N_ > 1 ? -kInf : -w.real(), 0);
    const double l1 = std::log1p(-v);
    cd val = -w * v;
    if (N_ > 1) val += (Nd - 1) * l1;
    if (m_ > 0) {
      const LogEval qv = log_eval(Q_, lw + l1);
      qcond = std::max(qcond, qv.cond);
      val += 2.0 * (q.log_value - qv.log_value);
    }
    return val;
  };
  auto next = [&](double a) { return a == 0 ? h0 : a + std::min(a, cap); };
  const auto J = integrate_log(f, 0.0, next, 1.0, 20000);
  const cd L = w + Nd * lw - log_c_ - 2.0 * q.log_value + J.log_value;
  const double err = J.rel_err + 4 * kEps * (std::abs(w) + Nd * std::abs(lw) + std::abs(log_c_) +
                                             2 * (q.cond + qcond));
  return {L, err, Route::Segment};
}

// h(w) = e^w w^{N-1}/(c Q(w)^2) int_0^inf e^{-u} (1-u/w)^{N-1} (Q(w)/Q(w-u))^2 du.
HEval GFunction::route_left_ray(cd lw) const {
  const cd w = std::exp(lw);
  const double Nd = N_;
  const LogEval q = m_ == 0 ? LogEval{cd(0, 0), 1.0} : log_eval(Q_, lw);
  if (std::isinf(q.log_value.real())) return {cd(kInf, 0), kInf, Route::LeftRay};
  const double aw = std::abs(w);
  const double cap = std::min(2.0, 4.0 * (aw + 1) / Nd);
  const double h0 = std::min(0.5, 0.5 * (aw + 1) / Nd);
  double qcond = 0;
  auto f = [&](double u) {
    cd val = -u;
    const cd ratio = 1.0 - u / w;
    if (N_ > 1) val += (Nd - 1) * std::log(ratio);
    if (m_ > 0) {
      const LogEval qv = log_eval(Q_, std::log(w - u));
      qcond = std::max(qcond, qv.cond);
      val += 2.0 * (q.log_value - qv.log_value);
    }
    return val;
  };
  auto next = [&](double a) { return a == 0 ? h0 : a + std::min(a, cap); };
  const auto I = integrate_log(f, 0.0, next, kInf, 20000);
  const cd lh = w + (Nd - 1) * lw - log_c_ - 2.0 * q.log_value + I.log_value;
  const double err = I.rel_err + 4 * kEps * (aw + Nd * std::abs(lw) + std::abs(log_c_) +
                                             2 * (q.cond + qcond));
  return {lh, err, Route::LeftRay};
}

namespace {

HEval to_log_h(HEval hm1) {
  if (std::isinf(hm1.log_value.real())) {
    if (hm1.log_value.real() < 0) return {cd(0, 0), hm1.err, hm1.route};
    return hm1;
  }
  const cd lh = log1p_exp(hm1.log_value);
  // d log h / dL = (h-1)/h; the linearization only holds for small errors
  const double amp = std::abs(1.0 - std::exp(-lh));
  return {lh, hm1.err < 1e-3 ? hm1.err * amp : hm1.err, hm1.route};
}

HEval to_log_hm1(HEval h) {
  if (std::isinf(h.log_value.real())) return h;
  const cd l = log_expm1(h.log_value);
  const double amp = std::abs(std::exp(h.log_value - l));
  return {l, h.err < 1e-3 ? h.err * amp : h.err, h.route};
}

bool better(const HEval& a, const HEval& b) {
  if (std::isnan(a.err)) return false;
  if (std::isnan(b.err)) return true;
  return a.err < b.err;
}

}  // namespace

HEval GFunction::log_h(cd lw) const {
  if (std::isinf(lw.real()) && lw.real() < 0) return {cd(0, 0), 0.0, Route::Direct};
  HEval best = route_direct(lw);
  if (std::isinf(best.log_value.real()) && best.log_value.real() > 0) return best;
  if (best.err < 1e-13) return best;
  const cd w = std::exp(lw);
  if (w.real() > -(N_ + 30.0)) {
    const HEval s = to_log_h(route_segment(lw));
    if (better(s, best)) best = s;
    if (best.err < 1e-12) return best;
  }
  if (w.real() < N_ + 30.0) {
    const HEval r = route_left_ray(lw);
    if (better(r, best)) best = r;
  }
  return best;
}

HEval GFunction::log_h_minus_one(cd lw) const {
  if (std::isinf(lw.real()) && lw.real() < 0) return {cd(-kInf, 0), 0.0, Route::Direct};
  HEval best = to_log_hm1(route_direct(lw));
  if (std::isinf(best.log_value.real()) && best.log_value.real() > 0) return best;
  if (best.err < 1e-13) return best;
  const cd w = std::exp(lw);
  if (w.real() > -(N_ + 30.0)) {
    const HEval s = route_segment(lw);
    if (better(s, best)) best = s;
    if (best.err < 1e-12) return best;
  }
  if (w.real() < N_ + 30.0) {
    const HEval r = to_log_hm1(route_left_ray(lw));
    if (better(r, best)) best = r;
  }
  return best;
}

cd GFunction::log_log_h(cd lw) const {
  if (lw.real() > 30) {
    // log h = w + log(P/Q)(w); the correction is below double resolution of w
    const cd lp = log_eval(P(), lw).log_value;
    const cd lq = m_ == 0 ? cd(0, 0) : log_eval(Q_, lw).log_value;
    const cd corr = (lp - lq) * std::exp(-lw);
    return lw + log1p_c(corr);
  }
  return std::log(log_h(lw).log_value);
}

const GFunction& g_function(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<GFunction>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, n}];
  if (!slot) slot = std::make_unique<GFunction>(m, n);
  return *slot;
}

LogComplex eval_poly(const std::vector<ExactRational>& coeffs, cd w) {
  if (coeffs.empty()) throw PreconditionError("empty coefficient vector");
  const LogPoly p(coeffs);
  const cd lw = w == 0.0 ? cd(-kInf, 0) : std::log(w);
  return LogComplex::from_log(log_eval(p, lw).log_value);
}

LogComplex eval_h(int m, int n, cd y) {
  const cd ly = y == 0.0 ? cd(-kInf, 0) : std::log(y);
  return LogComplex::from_log(g_function(m, n).log_h(ly).log_value);
}

LogComplex eval_g(int m, int n, cd z) {
  return LogComplex::from_log(g_function(m, n).log_h(z).log_value);
}

LogComplex eval_g_prime(int m, int n, cd z) {
  return LogComplex::from_log(g_function(m, n).log_gprime(z));
}

double eval_log_g_minus_one(int m, int n, double x) {
  return g_function(m, n).log_g_minus_one(x);
}

double eval_log_g_minus_one_direct(int m, int n, double x) {
  const GFunction& g = g_function(m, n);
  int sp = 0;
  const double lp = log_eval_real(g.P(), x, &sp);
  const double lh = lp - g.log_Q_real(x) + std::exp(x);
  return std::log(std::expm1(lh));
}

double lemma3_remainder(int m, int n, double y) {
  if (!(y > 0)) throw PreconditionError("y must be positive");
  const GFunction& g = g_function(m, n);
  return g.log_J_real(std::log(y)) + std::log(double(g.N()) + y);
}

bool poly_tail_check(int m, int n, cd z) {
  if (!(std::abs(z) > m + 2 * n)) throw PreconditionError("|z| must exceed m+2n");
  const PolyPair pp = rmn_coefficients(m, n);
  const cd lz = std::log(z);
  const double r = std::abs(z);
  auto tail_ok = [&](const std::vector<ExactRational>& c) {
    const int d = int(c.size()) - 1;
    if (d == 0) return true;
    std::vector<ExactRational> t(c.begin(), c.end() - 1);
    const double lt = log_eval(LogPoly(t), lz).log_value.real();
    const double bound = log_abs(c[size_t(d - 1)]) + (d - 1) * std::log(r);
    return lt <= bound + 1e-12 * std::max(1.0, std::abs(bound));
  };
  const bool nonzero = !std::isinf(log_eval(LogPoly(pp.B), lz).log_value.real()) &&
                       !std::isinf(log_eval(LogPoly(pp.A), lz).log_value.real());
  return tail_ok(pp.B) && tail_ok(pp.A) && nonzero;
}

}  // namespace bl
