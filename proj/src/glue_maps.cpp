#include "banklaine/glue_maps.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "banklaine/errors.hpp"

namespace bl {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
using cd = std::complex<double>;

// Bracketed root of an increasing function, starting the search at x0.
template <class F>
double increasing_root(F&& f, double x0, double step, double abs_tol) {
  double a = x0 - step, b = x0 + step;
  double fa = f(a), fb = f(b);
  double sa = step, sb = step;
  int guard = 0;
  while (fa > 0) {
    b = a;
    fb = fa;
    a -= sa;
    sa *= 2;
    fa = f(a);
    if (++guard > 200) throw std::runtime_error("bracketing failed");
  }
  while (fb < 0) {
    a = b;
    fa = fb;
    b += sb;
    sb *= 2;
    fb = f(b);
    if (++guard > 400) throw std::runtime_error("bracketing failed");
  }
  if (fa == 0) return a;
  if (fb == 0) return b;
  std::uintmax_t iters = 200;
  auto tol = [abs_tol](double l, double r) {
    return std::abs(r - l) <= abs_tol ||
           std::abs(r - l) <= 4 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(l), std::abs(r));
  };
  const auto [l, r] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (l + r);
}

double log_cN(const GFunction& g) { return g.log_c() + std::log(double(g.N())); }

}  // namespace

double solve_s(int m, int n) {
  const GFunction& g = g_function(m, n);
  auto L = [&](double s) { return g.log_g_minus_one(s); };
  return increasing_root(L, std::log(double(g.N())), 1.0, 1e-16);
}

double phi_asymptote(PairIdx from, PairIdx to, double x) {
  const GFunction& gf = g_function(from.m, from.n);
  const GFunction& gt = g_function(to.m, to.n);
  return (gt.N() * x - log_cN(gt) + log_cN(gf)) / gf.N();
}

double phi(PairIdx from, PairIdx to, double x) {
  if (from.m == to.m && from.n == to.n) return x;
  // past this the correction e^{-x}(r_to - r_from) is below the resolution of x
  if (x > 700) return x;
  const GFunction& gf = g_function(from.m, from.n);
  const GFunction& gt = g_function(to.m, to.n);
  const double rt = gt.rest(x);
  const bool scaled = x > 0;
  const double ex = std::exp(scaled ? -x : x);
  auto F = [&](double d) {
    const double diff = gf.rest(x + d) - rt;
    return scaled ? std::expm1(d) + ex * diff : ex * std::expm1(d) + diff;
  };
  const double d0 = x < -2 ? phi_asymptote(from, to, x) - x : 0.0;
  const double d = increasing_root(F, d0, 0.5, 1e-15 * std::max(1.0, std::abs(x)));
  return x + d;
}

double phi_prime(PairIdx from, PairIdx to, double x) {
  if (from.m == to.m && from.n == to.n) return 1.0;
  const double p = phi(from, to, x);
  return std::exp(g_function(from.m, from.n).log_J_real(p) - g_function(to.m, to.n).log_J_real(x));
}

FixedPointReport fixed_points(PairIdx from, PairIdx to, double lo, double hi, int grid) {
  if (!(lo < hi)) throw PreconditionError("window must satisfy lo < hi");
  FixedPointReport r;
  r.from = from;
  r.to = to;
  r.tag = to.m > from.m ? FixedPointCase::Greater
                        : (to.m == from.m ? FixedPointCase::Equal : FixedPointCase::Less);
  const double logN = std::log(double(from.N()));
  if (from.m == to.m && from.n == to.n) {
    r.degenerate = true;
    return r;
  }
  std::vector<double> xs(size_t(grid) + 1), ds(size_t(grid) + 1);
  for (int i = 0; i <= grid; ++i) {
    xs[size_t(i)] = lo + (hi - lo) * i / grid;
    ds[size_t(i)] = phi(from, to, xs[size_t(i)]) - xs[size_t(i)];
  }
  auto D = [&](double x) { return phi(from, to, x) - x; };
  // phi(x) - x rounds to exactly 0 far out; a grid zero is a fixed point only
  // when the nearest nonzero values on either side differ in sign
  auto sgn = [](double v) { return (v > 0) - (v < 0); };
  int prev = 0;
  for (int i = 0; i < grid; ++i) {
    const double a = ds[size_t(i)], b = ds[size_t(i) + 1];
    if (a != 0) prev = sgn(a);
    if (a == 0 && i > 0 && prev != 0) {
      int j = i + 1;
      while (j <= grid && ds[size_t(j)] == 0) ++j;
      if (j <= grid && sgn(ds[size_t(j)]) == -prev) r.points.push_back(xs[size_t(i)]);
      continue;
    }
    if (a != 0 && b != 0 && (a < 0) != (b < 0)) {
      std::uintmax_t it = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(50);
      const auto [l, u] = boost::math::tools::toms748_solve(D, xs[size_t(i)], xs[size_t(i) + 1],
                                                            a, b, tol, it);
      r.points.push_back(0.5 * (l + u));
    }
  }
  const int l = to.N() - from.N();
  const double ref = (r.tag == FixedPointCase::Less && l >= 1) ? (l - 1.0) / l * logN : logN;
  for (double p : r.points) r.deviation.push_back(p - ref);
  if (!r.points.empty()) {
    const double pmin = r.points.front(), pmax = r.points.back();
    for (int i = 0; i <= grid; ++i) {
      const double x = xs[size_t(i)], d = ds[size_t(i)];
      if (x > pmax && d < 0) r.sign_margin = std::max(r.sign_margin, x - pmax);
      if (x < pmin && d > 0) r.sign_margin = std::max(r.sign_margin, pmin - x);
    }
  } else {
    r.sign_margin = std::numeric_limits<double>::infinity();
  }
  r.sup_below_logN = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i)
    if (xs[size_t(i)] <= logN) r.sup_below_logN = std::max(r.sup_below_logN, ds[size_t(i)] + xs[size_t(i)] - logN);
  if (logN >= lo && logN <= hi) r.sup_below_logN = std::max(r.sup_below_logN, D(logN));
  return r;
}

GluedMapCtx::GluedMapCtx(SequencePlan plan)
    : plan_(std::move(plan)),
      s_once_(new std::once_flag[size_t(plan_.K) + 1]),
      s_(size_t(plan_.K) + 1, 0.0),
      cheb_once_(new std::once_flag[2 * (size_t(plan_.K) + 1)]),
      cheb_(2 * (size_t(plan_.K) + 1)) {}

double GluedMapCtx::s(int k) const {
  if (k < 1 || k > plan_.K) throw DepthError("strip index outside materialized plan");
  std::call_once(s_once_[size_t(k)], [&] { s_[size_t(k)] = solve_s(plan_.m(k), plan_.n(k)); });
  return s_[size_t(k)];
}

double GluedMapCtx::psi(int k, double x, Side side) const {
  if (k < 1 || k + 1 > plan_.K) throw DepthError("psi needs strips k and k+1");
  const PairIdx a = pair(k), b = pair(k + 1);
  if (side == Side::U) return phi(a, b, x + s(k + 1)) - s(k);
  const double Nk = double(plan_.N(k)), Nk1 = double(plan_.N(k + 1));
  return Nk * (phi(a, b, x / Nk1 + s(k + 1)) - s(k));
}

double GluedMapCtx::psi_prime(int k, double x, Side side) const {
  if (k < 1 || k + 1 > plan_.K) throw DepthError("psi needs strips k and k+1");
  const PairIdx a = pair(k), b = pair(k + 1);
  if (side == Side::U) return phi_prime(a, b, x + s(k + 1));
  const double Nk = double(plan_.N(k)), Nk1 = double(plan_.N(k + 1));
  return Nk / Nk1 * phi_prime(a, b, x / Nk1 + s(k + 1));
}

const ChebPanels& GluedMapCtx::cheb(int k, Side side) const {
  const size_t idx = 2 * size_t(k) + (side == Side::V ? 1 : 0);
  std::call_once(cheb_once_[idx], [&] {
    const double Nk1 = double(plan_.N(k + 1));
    auto f = [&](double x) {
      return std::pair<double, double>(psi(k, x, side), psi_prime(k, x, side));
    };
    if (side == Side::U) {
      const double hi = std::ceil(std::max(48.0, 12 + 8 * std::log(Nk1)));
      cheb_[idx] = ChebPanels(0.0, hi, int(std::ceil(hi / 4)), 18, f);
    } else {
      const double w = 40 + std::max(0.0, s(k + 1));
      cheb_[idx] = ChebPanels(-Nk1 * w, 0.0, int(std::ceil(w / 4)), 18, f);
    }
  });
  return cheb_[idx];
}

std::pair<double, double> GluedMapCtx::psi_both_fast(int k, double x, Side side) const {
  if (k < 1 || k + 1 > plan_.K) throw DepthError("psi needs strips k and k+1");
  if (plan_.m(k) == plan_.m(k + 1) && plan_.n(k) == plan_.n(k + 1)) {
    // identical pairs: psi is the identity up to the (equal) shifts
    return {x, 1.0};
  }
  const ChebPanels& c = cheb(k, side);
  if (c.contains(x)) return c(x);
  const PairIdx a = pair(k), b = pair(k + 1);
  if (side == Side::U && x > 0) {
    // phi(x') = x' + e^{-x'}(r_to - r_from) up to O(e^{-2x'}), x' >= 48
    const double xp = x + s(k + 1);
    const double d = std::exp(-xp) * (g(k + 1).rest(xp) - g(k).rest(xp));
    return {xp + d - s(k), 1 - d};
  }
  if (side == Side::V && x < 0) {
    // past x' = -40 phi sits on its linear asymptote to O(e^{x'})
    const double Nk = double(plan_.N(k)), Nk1 = double(plan_.N(k + 1));
    return {Nk * (phi_asymptote(a, b, x / Nk1 + s(k + 1)) - s(k)), 1.0};
  }
  return {psi(k, x, side), psi_prime(k, x, side)};
}

StripPoint GluedMapCtx::locate_U(cd z, bool fast) const {
  StripPoint p;
  p.conj = z.imag() < 0;
  const double x = std::max(0.0, z.real());
  const double y = std::abs(z.imag());
  p.k = int(std::floor(y / kTwoPi)) + 1;
  if (p.k + 1 > plan_.K) throw DepthError("U strip beyond materialized plan");
  p.t = y / kTwoPi - (p.k - 1);
  if (p.t == 0) {
    p.X = x;
  } else {
    const double ps = fast ? psi_both_fast(p.k, x, Side::U).first : psi(p.k, x, Side::U);
    p.X = x + p.t * (ps - x);
  }
  return p;
}

StripPoint GluedMapCtx::locate_V(cd z, bool fast) const {
  StripPoint p;
  p.conj = z.imag() < 0;
  const double x = std::min(0.0, z.real());
  const double y = std::abs(z.imag());
  if (y >= kTwoPi * double(plan_.calN(plan_.K - 1))) throw DepthError("V strip beyond materialized plan");
  const auto it = std::upper_bound(plan_.calN_seq.begin(), plan_.calN_seq.end(), y / kTwoPi,
                                   [](double v, std::int64_t c) { return v < double(c); });
  p.k = int(it - plan_.calN_seq.begin()) + 1;
  p.t = (y - kTwoPi * double(plan_.calN(p.k - 1))) / (kTwoPi * double(plan_.N(p.k)));
  if (p.t == 0) {
    p.X = x;
  } else {
    const double ps = fast ? psi_both_fast(p.k, x, Side::V).first : psi(p.k, x, Side::V);
    p.X = x + p.t * (ps - x);
  }
  return p;
}

cd GluedMapCtx::zeta_U(cd z, int* k, bool fast) const {
  const StripPoint p = locate_U(z, fast);
  if (k) *k = p.k;
  const cd zeta(p.X + s(p.k), kTwoPi * p.t);
  return p.conj ? std::conj(zeta) : zeta;
}

cd GluedMapCtx::zeta_V(cd z, int* k, bool fast) const {
  const StripPoint p = locate_V(z, fast);
  if (k) *k = p.k;
  const cd zeta(p.X / double(plan_.N(p.k)) + s(p.k), kTwoPi * p.t);
  return p.conj ? std::conj(zeta) : zeta;
}

LogComplex GluedMapCtx::eval_U(cd z) const {
  int k = 1;
  const cd zeta = zeta_U(z, &k);
  return LogComplex::from_log(g(k).log_h(zeta).log_value);
}

LogComplex GluedMapCtx::eval_V(cd z) const {
  int k = 1;
  const cd zeta = zeta_V(z, &k);
  return LogComplex::from_log(g(k).log_h(zeta).log_value);
}

cd GluedMapCtx::log_V_minus_one(cd z) const {
  int k = 1;
  const cd zeta = zeta_V(z, &k);
  return g(k).log_h_minus_one(zeta).log_value;
}

cd GluedMapCtx::log_log_U(cd z) const {
  int k = 1;
  const cd zeta = zeta_U(z, &k);
  return g(k).log_log_h(zeta);
}

cd GluedMapCtx::eval_Q(cd z) const {
  const double x = std::max(0.0, z.real());
  const double y = z.imag();
  if (x >= 1) return {x, y};
  const double r = std::abs(cd(x, y));
  if (r < 1) return cd(x, y) * std::pow(r, plan_.gamma - 1);
  if (std::abs(y) >= 1) {
    const double ay = std::abs(y);
    const double Y = (1 - x) * g_inverse_eval(plan_, ay) + x * ay;
    return {x, y < 0 ? -Y : Y};
  }
  return {x, y};
}

cd GluedMapCtx::eval_Q_inverse(cd w) const {
  const double X = std::max(0.0, w.real());
  const double Y = w.imag();
  if (X >= 1) return {X, Y};
  const double r = std::abs(cd(X, Y));
  if (r < 1) return cd(X, Y) * std::pow(r, 1.0 / plan_.gamma - 1);
  if (std::abs(Y) >= 1) {
    const double aY = std::abs(Y);
    auto F = [&](double y) { return (1 - X) * g_inverse_eval(plan_, y) + X * y - aY; };
    std::uintmax_t it = 200;
    double hi = std::max(2.0, aY);
    while (F(hi) < 0) hi *= 1.05;
    double lo = 1.0;
    if (F(lo) >= 0) return {X, Y < 0 ? -1.0 : 1.0};
    auto tol = [](double a, double b) {
      return std::abs(b - a) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b));
    };
    const auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, tol, it);
    const double y = 0.5 * (a + b);
    return {X, Y < 0 ? -y : y};
  }
  return {X, Y};
}

LogComplex GluedMapCtx::eval_W(cd z) const { return eval_U(eval_Q(z)); }

bool GluedMapCtx::in_V_sector(cd z) const {
  return std::abs(std::arg(-z)) < std::numbers::pi / (2 * plan_.sigma);
}

cd GluedMapCtx::pow_U(cd z) const {
  if (z == 0.0) return 0.0;
  return std::exp(plan_.rho * std::log(z));
}

cd GluedMapCtx::pow_V(cd z) const {
  if (z == 0.0) return 0.0;
  return -std::exp(plan_.sigma * std::log(-z));
}

LogComplex GluedMapCtx::eval_G(cd z) const {
  if (in_V_sector(z)) return eval_V(pow_V(z));
  return eval_W(pow_U(z));
}

namespace {

// Discrepancy between two log-domain values, relative to their size.
double log_distance(const LogComplex& a, const LogComplex& b) {
  const double dm = std::abs(a.log_mag - b.log_mag);
  const double da = std::abs(std::remainder(a.arg - b.arg, kTwoPi));
  return std::hypot(dm, da) / std::max(1.0, std::abs(a.log_mag));
}

}  // namespace

SeamReport boundary_consistency_check(const GluedMapCtx& ctx, const std::vector<double>& ygrid) {
  SeamReport rep;
  const SequencePlan& p = ctx.plan();
  for (double y : ygrid) {
    const double gy = g_inverse_eval(p, y);
    const LogComplex u = ctx.eval_U(cd(0, gy));
    const LogComplex v = ctx.eval_V(cd(0, std::pow(y, p.gamma)));
    rep.max_UV = std::max(rep.max_UV, log_distance(u, v));
    // G across the sector rays, approached from both sides
    if (y > 0) {
      const double r = std::pow(y, 1.0 / p.rho);
      const double th = std::numbers::pi / (2 * p.rho);
      for (double sgn : {1.0, -1.0}) {
        const cd z = std::polar(r, sgn * th);
        const LogComplex a = ctx.eval_W(ctx.pow_U(z));
        const LogComplex b = ctx.eval_V(ctx.pow_V(z));
        rep.max_G_sector = std::max(rep.max_G_sector, log_distance(a, b));
      }
    }
    ++rep.samples;
  }
  // strip seams: strip k at t = 1 against strip k+1 at t = 0
  const std::vector<double> xu{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  for (int k = 1; k + 2 <= p.K; ++k) {
    const GFunction& gk = ctx.g(k);
    const GFunction& gk1 = ctx.g(k + 1);
    for (double x : xu) {
      const LogComplex a = LogComplex::from_log(
          gk.log_h(cd(ctx.psi(k, x, Side::U) + ctx.s(k), kTwoPi)).log_value);
      const LogComplex b = LogComplex::from_log(gk1.log_h(cd(x + ctx.s(k + 1), 0)).log_value);
      rep.max_U_strip = std::max(rep.max_U_strip, log_distance(a, b));
      const double xv = -x * double(p.N(k + 1));
      const double Nk = double(p.N(k)), Nk1 = double(p.N(k + 1));
      const LogComplex c = LogComplex::from_log(
          gk.log_h(cd(ctx.psi(k, xv, Side::V) / Nk + ctx.s(k), kTwoPi)).log_value);
      const LogComplex d =
          LogComplex::from_log(gk1.log_h(cd(xv / Nk1 + ctx.s(k + 1), 0)).log_value);
      rep.max_V_strip = std::max(rep.max_V_strip, log_distance(c, d));
    }
  }
  // Q across its internal seams
  for (int i = 0; i <= 64; ++i) {
    const double th = -std::numbers::pi / 2 + std::numbers::pi * i / 64;
    const cd on = std::polar(1.0, th);
    const cd in = std::polar(1.0 - 1e-12, th);
    rep.max_Q = std::max(rep.max_Q, std::abs(ctx.eval_Q(on) - ctx.eval_Q(in)));
    const double x = (i + 0.5) / 65.0;
    for (double sy : {1.0, -1.0}) {
      const cd a = ctx.eval_Q(cd(x, sy * 1.0));
      const cd b = ctx.eval_Q(cd(x, sy * (1.0 - 1e-12)));
      rep.max_Q = std::max(rep.max_Q, std::abs(a - b));
    }
    const double yy = 1 + (kTwoPi * (p.K - 1) - 2) * i / 64.0;
    rep.max_Q = std::max(rep.max_Q, std::abs(ctx.eval_Q(cd(1.0 - 1e-12, yy)) - ctx.eval_Q(cd(1.0, yy))));
  }
  return rep;
}

}  // namespace bl
