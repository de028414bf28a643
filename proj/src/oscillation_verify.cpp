#include "banklaine/oscillation_verify.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <omp.h>

#include "banklaine/errors.hpp"
#include "banklaine/roots.hpp"
#include "banklaine/special_eval.hpp"

namespace bl {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
// |kappa| below this fraction of sum |c_i||w|^i is treated as a zero of kappa
constexpr double kPoleTol = 1e-6;

// theta^j kappa / kappa for j = 1..3, with a flag for points close to a zero of kappa.
struct Ratios {
  cd r1, r2, r3;
  bool pole = false;
};

Ratios ratios(const RatPoly (&d)[4], cd w) {
  Ratios r;
  const cd k = d[0].eval(w);
  if (std::abs(k) <= kPoleTol * d[0].abs_eval(std::abs(w))) r.pole = true;
  r.r1 = d[1].eval(w) / k;
  r.r2 = d[2].eval(w) / k;
  r.r3 = d[3].eval(w) / k;
  return r;
}

// log-derivative of F = (kappa2/kappa1) e^w, namely l = T/(kappa1 kappa2), as
// l, lambda = theta l / l, theta lambda
struct LogDerivF {
  cd l, lam, dlam;
  bool pole = false;
};

LogDerivF log_deriv_F(const OdeAlgebra& alg, cd w) {
  const Ratios a = ratios(alg.d1, w), b = ratios(alg.d2, w);
  const RatPoly& T = alg.wronski;
  const cd t0 = T.eval(w);
  const RatPoly T1 = T.euler(), T2 = T1.euler();
  const cd q1 = T1.eval(w) / t0, q2 = T2.eval(w) / t0;
  LogDerivF f;
  f.pole = a.pole || b.pole;
  f.l = t0 / (alg.d1[0].eval(w) * alg.d2[0].eval(w));
  f.lam = q1 - a.r1 - b.r1;
  f.dlam = (q2 - q1 * q1) - (a.r2 - a.r1 * a.r1) - (b.r2 - b.r1 * b.r1);
  return f;
}

cd schwarzian_value(const LogDerivF& f) {
  // M = F''/F' = l + lambda, theta M = l lambda + theta lambda
  const cd M = f.l + f.lam;
  const cd dM = f.l * f.lam + f.dlam;
  return dM - 0.5 * M * M;
}

}  // namespace

OdeAlgebra::OdeAlgebra(SolutionSpec s) : spec(std::move(s)) {
  d1[0] = RatPoly(spec.a);
  d2[0] = RatPoly(spec.b);
  for (int j = 1; j < 4; ++j) {
    d1[j] = d1[j - 1].euler();
    d2[j] = d2[j - 1].euler();
  }
  const RatPoly w = RatPoly::monomial(ExactRational(1), 1);
  wronski = d1[0] * d2[1] - d1[1] * d2[0] + w * d1[0] * d2[0];
}

cd OdeAlgebra::coeff(cd w) const {
  const double K = spec.k1 + spec.k2 + 1;
  return w * w / 4.0 + double(spec.k2 - spec.k1) * w / 2.0 + K * K / 4.0;
}

double ode_residual(const OdeAlgebra& alg, cd z, bool* pole) {
  const cd w = std::exp(z);
  const double K = alg.K();
  const cd c = alg.coeff(w);
  double worst = 0;
  bool at_pole = false;
  for (int f = 0; f < 2; ++f) {
    const RatPoly(&d)[4] = f == 0 ? alg.d1 : alg.d2;
    const double c0 = f == 0 ? -0.5 : 0.5;
    const Ratios r = ratios(d, w);
    at_pole = at_pole || r.pole;
    // f''/f = r2 + 2 r1 l0 + l0^2 + c0 w with l0 = c0 w - K/2
    const cd l0 = c0 * w - K / 2;
    const cd fpp = r.r2 + 2.0 * r.r1 * l0 + l0 * l0 + c0 * w;
    worst = std::max(worst, std::abs(fpp - c) / (1 + std::abs(c)));
  }
  if (pole) *pole = at_pole;
  return worst;
}

double ode_residual(const SolutionSpec& spec, cd z, bool* pole) {
  return ode_residual(OdeAlgebra(spec), z, pole);
}

cd wronskian(const OdeAlgebra& alg, cd z) {
  // f1 f2 (L2 - L1) = a0b0 T(w) e^{-Kz}
  const cd w = std::exp(z);
  return alg.spec.a0b0.get_d() * alg.wronski.eval(w) * std::exp(-double(alg.K()) * z);
}

cd wronskian(const SolutionSpec& spec, cd z) { return wronskian(OdeAlgebra(spec), z); }

BankLaineReport banklaine_check(const SolutionSpec& spec, double im_limit) {
  const OdeAlgebra alg(spec);
  BankLaineReport rep;
  const double a0b0 = spec.a0b0.get_d();
  const double K = alg.K();
  for (int f = 0; f < 2; ++f) {
    const auto& coeffs = f == 0 ? spec.a : spec.b;
    if (coeffs.size() < 2) continue;
    const RootResult rr = poly_roots(LogPoly(coeffs));
    rep.max_root_residual = std::max(rep.max_root_residual, rr.max_residual);
    const RatPoly& other = f == 0 ? alg.d2[0] : alg.d1[0];
    const RatPoly& dk = f == 0 ? alg.d1[1] : alg.d2[1];
    for (const cd w0 : rr.roots) {
      // E' = a0b0 w^{-K} theta(kappa1 kappa2), and the kappa at hand vanishes
      const cd Ep = a0b0 * dk.eval(w0) * other.eval(w0) * std::exp(-K * std::log(w0));
      const double dev = std::min(std::abs(Ep - 1.0), std::abs(Ep + 1.0));
      const double arg = std::arg(w0);
      const long lo = long(std::ceil((-im_limit - arg) / kTwoPi));
      const long hi = long(std::floor((im_limit - arg) / kTwoPi));
      if (hi < lo) continue;
      const int copies = int(hi - lo + 1);
      rep.zeros += copies;
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (std::abs(Ep - 1.0) < std::abs(Ep + 1.0)) rep.plus_ones += copies;
    }
  }
  return rep;
}

double schwarzian_check(const OdeAlgebra& alg, cd z, bool* pole) {
  const cd w = std::exp(z);
  const LogDerivF f = log_deriv_F(alg, w);
  if (pole) *pole = f.pole;
  const cd twoA = -2.0 * alg.coeff(w);
  return std::abs(schwarzian_value(f) - twoA) / (1 + std::abs(twoA));
}

double schwarzian_check(const SolutionSpec& spec, cd z, bool* pole) {
  return schwarzian_check(OdeAlgebra(spec), z, pole);
}

double schwarzian_mobius_check(const OdeAlgebra& alg, cd z, const std::array<cd, 4>& abcd) {
  const cd w = std::exp(z);
  const LogDerivF f = log_deriv_F(alg, w);
  const cd l = f.l, dl = f.l * f.lam, ddl = f.l * (f.dlam + f.lam * f.lam);
  const cd F = alg.d2[0].eval(w) / alg.d1[0].eval(w) * std::exp(w);
  const cd F1 = F * l, F2 = F * (dl + l * l), F3 = F * (ddl + 3.0 * l * dl + l * l * l);
  const auto [a, b, c, d] = abcd;
  const cd det = a * d - b * c;
  const cd D = c * F + d;
  const cd G1 = det * F1 / (D * D);
  const cd G2 = det * (F2 / (D * D) - 2.0 * c * F1 * F1 / (D * D * D));
  const cd G3 = det * (F3 / (D * D) - 6.0 * c * F1 * F2 / (D * D * D) +
                       6.0 * c * c * F1 * F1 * F1 / (D * D * D * D));
  const cd SF = F3 / F1 - 1.5 * (F2 / F1) * (F2 / F1);
  const cd SG = G3 / G1 - 1.5 * (G2 / G1) * (G2 / G1);
  return std::abs(SG - SF) / (1 + std::abs(SF));
}

double bank_identity_check(const OdeAlgebra& alg, cd z, double scale) {
  const cd w = std::exp(z);
  const Ratios a = ratios(alg.d1, w), b = ratios(alg.d2, w);
  const double K = alg.K();
  const cd LE = a.r1 + b.r1 - K;
  const cd dLE = (a.r2 - a.r1 * a.r1) + (b.r2 - b.r1 * b.r1);
  // 2E''/E - (E'/E)^2 = 2 theta(E'/E) + (E'/E)^2
  const cd E0 = scale * alg.spec.a0b0.get_d() * alg.d1[0].eval(w) * alg.d2[0].eval(w);
  const cd invE2 = std::exp(2 * K * z) / (E0 * E0);
  const cd fourA = -4.0 * alg.coeff(w);
  return std::abs(fourA + 2.0 * dLE + LE * LE + invE2) / (1 + std::abs(fourA));
}

double bank_identity_check(const SolutionSpec& spec, cd z, double scale) {
  return bank_identity_check(OdeAlgebra(spec), z, scale);
}

OdeSweep ode_sweep(const SolutionSpec& spec, int nx, int ny) {
  const OdeAlgebra alg(spec);
  OdeSweep s;
  const std::array<cd, 4> mob{cd(2, 1), cd(-1, 0.5), cd(0.3, -1), cd(1, 1)};
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const cd z(-3 + 5.0 * i / (nx - 1), -kPi + kTwoPi * j / (ny - 1));
      ++s.points;
      bool p1 = false, p2 = false;
      const double o = ode_residual(alg, z, &p1);
      const double sc = schwarzian_check(alg, z, &p2);
      s.wronskian = std::max(s.wronskian, std::abs(wronskian(alg, z) - 1.0));
      if (p1 || p2) {
        ++s.poles;
        continue;
      }
      s.ode = std::max(s.ode, o);
      s.schwarzian = std::max(s.schwarzian, sc);
      s.identity = std::max(s.identity, bank_identity_check(alg, z));
      s.mobius = std::max(s.mobius, schwarzian_mobius_check(alg, z, mob));
    }
  }
  return s;
}

// ---- zeros and poles ----

const char* count_kind_name(CountKind k) {
  switch (k) {
    case CountKind::ZerosU: return "zeros-U";
    case CountKind::ZerosV: return "zeros-V";
    case CountKind::ZerosG: return "zeros-G";
    case CountKind::PolesU: return "poles-U";
    case CountKind::PolesV: return "poles-V";
    case CountKind::PolesG: return "poles-G";
  }
  return "?";
}

CountKind count_kind_from_name(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == count_kind_name(CountKind(i))) return CountKind(i);
  throw PreconditionError("unknown count kind: " + s);
}

namespace {

// Root of an increasing f on [from, +-inf) given f(from) has the sign opposite to dir.
template <class F>
double monotone_solve(F&& f, double from, double dir) {
  double a = from, b = from + dir * 1.0;
  double fa = f(a), fb = f(b);
  int guard = 0;
  while ((dir > 0 && fb < 0) || (dir < 0 && fb > 0)) {
    a = b;
    fa = fb;
    b = from + (b - from) * 2;
    fb = f(b);
    if (++guard > 200) throw PrecisionError("strip inversion failed to bracket");
  }
  if (fb == 0) return b;
  if (dir < 0) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  std::uintmax_t it = 200;
  auto tol = [](double l, double r) { return std::abs(r - l) <= 1e-12 * std::max(1.0, std::abs(l)); };
  const auto [l, r] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, it);
  return 0.5 * (l + r);
}

struct RootSet {
  std::vector<cd> P, Q;
  double residual = 0;
};

// Radii contributed by one strip: U/V and G radii for zeros and poles, each weighted.
struct StripRadii {
  std::vector<double> r[6];
};

void place_roots(const GluedMapCtx& ctx, int k, const std::vector<cd>& roots, bool zeros,
                 StripRadii& out) {
  const SequencePlan& p = ctx.plan();
  const double sk = ctx.s(k);
  const double Nk = double(p.N(k));
  const size_t iu = size_t(zeros ? CountKind::ZerosU : CountKind::PolesU);
  const size_t iv = size_t(zeros ? CountKind::ZerosV : CountKind::PolesV);
  const size_t ig = size_t(zeros ? CountKind::ZerosG : CountKind::PolesG);
  double psiU0 = std::numeric_limits<double>::quiet_NaN();
  for (const cd w : roots) {
    const double L = std::log(std::abs(w));
    double t = std::arg(w) / kTwoPi;
    if (t < 0) t += 1;
    if (t >= 1) t = 0;
    const double tau = L - sk;
    const int weight = (k == 1 && t == 0) ? 1 : 2;
    if (t > 0 && std::isnan(psiU0)) psiU0 = ctx.psi_both_fast(k, 0.0, Side::U).first;
    const double u0 = t > 0 ? t * psiU0 : 0.0;
    double rad_side, rad_g;
    size_t iside;
    if (tau >= u0) {
      double x = tau;
      if (t > 0) {
        auto f = [&](double v) { return (1 - t) * v + t * ctx.psi_both_fast(k, v, Side::U).first - tau; };
        x = monotone_solve(f, 0.0, 1.0);
      }
      const cd z(x, kTwoPi * (k - 1 + t));
      rad_side = std::abs(z);
      try {
        rad_g = std::pow(std::abs(ctx.eval_Q_inverse(z)), 1.0 / p.rho);
      } catch (const DepthError&) {
        // the preimage lies past the plan, hence past the G depth
        rad_g = std::numeric_limits<double>::infinity();
      }
      iside = iu;
    } else {
      const double target = Nk * tau;
      double x = target;
      if (t > 0) {
        auto f = [&](double v) { return (1 - t) * v + t * ctx.psi_both_fast(k, v, Side::V).first - target; };
        x = monotone_solve(f, 0.0, -1.0);
      }
      const cd z(x, kTwoPi * (double(p.calN(k - 1)) + Nk * t));
      rad_side = std::abs(z);
      rad_g = std::pow(rad_side, 1.0 / p.sigma);
      iside = iv;
    }
    for (int c = 0; c < weight; ++c) {
      out.r[iside].push_back(rad_side);
      out.r[ig].push_back(rad_g);
    }
  }
}

}  // namespace

ZeroCatalog::ZeroCatalog(const GluedMapCtx& ctx, ExecPolicy policy, bool with_zeros) {
  const SequencePlan& p = ctx.plan();
  const int K = p.K;
  if (K < 2) throw DepthError("zero catalog needs at least two strips");
  // roots per distinct pair
  std::map<std::pair<int, int>, RootSet> cache;
  for (int k = 1; k < K; ++k) cache[{p.m(k), p.n(k)}];
  std::vector<std::pair<int, int>> keys;
  for (const auto& kv : cache) keys.push_back(kv.first);
  std::exception_ptr err;
  auto root_job = [&](size_t i) {
    const GFunction& g = g_function(keys[i].first, keys[i].second);
    RootSet& rs = cache.at(keys[i]);
    if (with_zeros && g.P().degree() > 0) {
      const RootResult r = poly_roots(g.P());
      rs.P = r.roots;
      rs.residual = std::max(rs.residual, r.max_residual);
    }
    if (g.Q().degree() > 0) {
      const RootResult r = poly_roots(g.Q());
      rs.Q = r.roots;
      rs.residual = std::max(rs.residual, r.max_residual);
    }
  };
  std::vector<StripRadii> per(static_cast<size_t>(K));
  auto strip_job = [&](int k) {
    const RootSet& rs = cache.at({p.m(k), p.n(k)});
    place_roots(ctx, k, rs.P, true, per[size_t(k)]);
    place_roots(ctx, k, rs.Q, false, per[size_t(k)]);
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(keys.size()); ++i) {
      try {
        root_job(size_t(i));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
#pragma omp parallel for schedule(dynamic)
    for (int k = 1; k < K; ++k) {
      try {
        strip_job(k);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (size_t i = 0; i < keys.size(); ++i) root_job(i);
    for (int k = 1; k < K; ++k) strip_job(k);
  }
  for (const auto& kv : cache) max_residual_ = std::max(max_residual_, kv.second.residual);
  for (int i = 0; i < 6; ++i) {
    for (int k = 1; k < K; ++k)
      radii_[i].insert(radii_[i].end(), per[size_t(k)].r[i].begin(), per[size_t(k)].r[i].end());
    std::sort(radii_[i].begin(), radii_[i].end());
  }
  const double yU = kTwoPi * (K - 1);
  const double yV = kTwoPi * double(p.calN(K - 1));
  const double RU = std::min(yU, g_forward_inverse(p, yU));
  const double RG = std::min(std::pow(RU, 1.0 / p.rho), std::pow(yV, 1.0 / p.sigma));
  depth_[size_t(CountKind::PolesU)] = yU;
  depth_[size_t(CountKind::PolesV)] = yV;
  depth_[size_t(CountKind::PolesG)] = RG;
  if (with_zeros) {
    depth_[size_t(CountKind::ZerosU)] = yU;
    depth_[size_t(CountKind::ZerosV)] = yV;
    depth_[size_t(CountKind::ZerosG)] = RG;
  }
}

double ZeroCatalog::depth(CountKind k) const { return depth_[size_t(k)]; }

int ZeroCatalog::count(CountKind k, double r) const {
  if (r > depth_[size_t(k)]) throw DepthError("radius beyond materialized depth for " + std::string(count_kind_name(k)));
  const auto& v = radii_[size_t(k)];
  return int(std::upper_bound(v.begin(), v.end(), r) - v.begin());
}

int count_zeros(const GluedMapCtx& ctx, CountKind kind, double r) {
  return ZeroCatalog(ctx).count(kind, r);
}

CountingCurve counting_curve(const ZeroCatalog& cat, CountKind kind, const std::vector<double>& radii) {
  CountingCurve c;
  c.kind = kind;
  c.radii = radii;
  for (double r : radii) c.counts.push_back(cat.count(kind, r));
  return c;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0 && hi > lo) || n < 2) throw PreconditionError("log_spaced needs 0 < lo < hi and n >= 2");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return v;
}

ExponentFit counting_exponent_fit(const CountingCurve& curve, bool log2_correction,
                                  double min_decades, int min_points) {
  std::vector<double> x, y;
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0;
  for (size_t i = 0; i < curve.radii.size(); ++i) {
    if (curve.counts[i] <= 0) continue;
    const double lr = std::log(curve.radii[i]);
    double ly = std::log(double(curve.counts[i]));
    if (log2_correction) ly += 2 * std::log(lr);
    x.push_back(lr);
    y.push_back(ly);
    rmin = std::min(rmin, curve.radii[i]);
    rmax = std::max(rmax, curve.radii[i]);
  }
  if (int(x.size()) < min_points) throw PreconditionError("too few radii with positive counts");
  const double dec = std::log10(rmax / rmin);
  if (dec < min_decades) throw PreconditionError("radii span too few decades");
  ExponentFit f;
  f.fit = least_squares(x, y);
  f.log2_corrected = log2_correction;
  f.decades = dec;
  return f;
}

// ---- rays ----

double ray_theta_limit(const GluedMapCtx& ctx, Side side, double log_r, double eps) {
  const SequencePlan& p = ctx.plan();
  const int K = p.K;
  if (side == Side::U) {
    const double yU = kTwoPi * (K - 1);
    const double bound = 0.9 * std::min(yU, g_forward_inverse(p, yU));
    const double s = std::min(1.0, bound / std::exp(p.rho * log_r));
    return std::min(std::asin(s) / p.rho, (1 - eps) * kPi / (2 * p.rho));
  }
  const double bound = 0.9 * kTwoPi * double(p.calN(K - 1));
  const double s = std::min(1.0, bound / std::exp(p.sigma * log_r));
  return std::min(std::asin(s) / p.sigma, (1 - eps) * kPi / (2 * p.sigma));
}

RayReport ray_asymptotics_check(const GluedMapCtx& ctx, Side side, const std::vector<double>& thetas,
                                const std::vector<double>& log_r, double eps) {
  const SequencePlan& p = ctx.plan();
  const double e = side == Side::U ? p.rho : p.sigma;
  const double th_max = (1 - eps) * kPi / (2 * e);
  RayReport rep;
  rep.side = side;
  for (double th : thetas) {
    if (std::abs(th) > th_max * (1 + 1e-12)) throw PreconditionError("ray outside the sector");
    for (double lr : log_r) {
      const cd lw = e * cd(lr, th);
      const double scale = std::exp(e * lr) * std::cos(e * th);
      double ratio;
      try {
        if (side == Side::U) {
          const cd w = std::exp(lw);
          int k = 1;
          const cd zeta = ctx.zeta_U(ctx.eval_Q(w), &k, true);
          const cd ll = ctx.g(k).log_log_h(zeta);
          // log log G ~ z^rho as complex numbers; log|G| itself changes sign across a strip
          ratio = ll.real() / scale;
        } else {
          const cd w = -std::exp(lw);
          int k = 1;
          const cd zeta = ctx.zeta_V(w, &k, true);
          ratio = ctx.g(k).log_h_minus_one(zeta).log_value.real() / -scale;
        }
      } catch (const DepthError&) {
        ++rep.skipped;
        continue;
      }
      if (!std::isfinite(ratio)) ratio = std::numeric_limits<double>::infinity();
      rep.theta.push_back(th);
      rep.log_r.push_back(lr);
      rep.ratio.push_back(ratio);
      rep.max_deviation = std::max(rep.max_deviation, std::abs(ratio - 1));
    }
  }
  return rep;
}

AnchorReport rho_one_anchor(const std::vector<double>& radii, const std::vector<double>& thetas) {
  const OdeAlgebra alg(solution_coefficients(0, 0));
  const double a0b0 = alg.spec.a0b0.get_d();
  const double rmax = radii.empty() ? 0 : *std::max_element(radii.begin(), radii.end());
  auto log_abs_E = [&](cd z) {
    const cd w = std::exp(z);
    return std::log(std::abs(a0b0 * alg.d1[0].eval(w) * alg.d2[0].eval(w))) - alg.K() * z.real();
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  AnchorReport a;
  for (double r : radii) {
    for (double t : thetas) {
      const cd zr = std::polar(r, t), zl = -zr;
      const double rc = r * std::cos(t);
      a.max_dev_E_right = std::max(a.max_dev_E_right, rel(-log_abs_E(zr), rc));
      a.max_dev_E_left = std::max(a.max_dev_E_left, rel(log_abs_E(zl), rc));
      const cd Ar = -alg.coeff(std::exp(zr)), Al = -alg.coeff(std::exp(zl));
      const double half_log_Ar = 0.5 * std::log(std::abs(Ar));
      const double closed_r = 0.5 * (2 * rc + std::log(std::abs(1.0 + std::exp(-2.0 * zr))) - std::log(4.0));
      a.max_dev_A_right = std::max(a.max_dev_A_right, rel(half_log_Ar, closed_r));
      const double closed_l = 0.25 * std::abs(std::exp(2.0 * zl) + 1.0);
      a.max_dev_A_left = std::max(a.max_dev_A_left, rel(std::abs(Al), closed_l));
      if (r == rmax) {
        a.ratio_E_right = std::max(a.ratio_E_right, std::abs(-log_abs_E(zr) / rc - 1));
        a.ratio_A_right = std::max(a.ratio_A_right, std::abs(half_log_Ar / rc - 1));
        a.ratio_A_left = std::max(a.ratio_A_left, std::abs(std::abs(Al) / 0.25 - 1));
      }
    }
  }
  return a;
}

// ---- fitted constants ----

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["constants"] = constants;
  j["pass"] = pass;
  auto arr = nlohmann::json::array();
  for (const auto& f : fits)
    arr.push_back({{"name", f.name}, {"c_fit", f.c_fit}, {"c_val", f.c_val}, {"slack", f.slack},
                   {"n_fit", f.n_fit}, {"n_val", f.n_val}, {"validated", f.validated}});
  j["fits"] = arr;
  return j;
}

VerificationReport lemma3_fit(const Lemma3Options& opt) {
  std::vector<double> lhs, shape;
  std::vector<bool> fit;
  std::vector<int> Ns;
  for (int N = 8; N <= opt.N_max; ++N) {
    // admissible m in [1, N/8] with N - 1 - m even
    std::vector<int> ms;
    for (int m = 1; m <= N / 8; ++m)
      if ((N - 1 - m) % 2 == 0) ms.push_back(m);
    if (ms.empty()) continue;
    if (opt.m_per_N > 0 && int(ms.size()) > opt.m_per_N) {
      std::vector<int> pick;
      for (int i = 0; i < opt.m_per_N; ++i)
        pick.push_back(ms[size_t(i) * (ms.size() - 1) / size_t(opt.m_per_N - 1)]);
      pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
      ms = pick;
    }
    for (int m : ms) {
      const int n = (N - 1 - m) / 2;
      for (int i = 0; i < opt.y_points; ++i) {
        const double y = 0.1 * std::pow(100.0 * N, double(i) / (opt.y_points - 1));
        lhs.push_back(lemma3_remainder(m, n, y));
        shape.push_back(4.0 * m * y / (N * (y + N - 2.0 * m)));
        fit.push_back(N % 2 == 0);
        Ns.push_back(N);
      }
    }
  }
  VerificationReport rep;
  BoundFit b = fit_bound("B", lhs, shape, fit, 1.0);
  rep.fits.push_back(b);
  rep.constants["B"] = b.c_fit;
  rep.constants["B_validation"] = b.c_val;
  // N0: smallest sampled N from which every point, either parity, obeys the fitted B
  int N0 = Ns.empty() ? 0 : Ns.front();
  for (size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] > b.c_fit * shape[i] * (1 + 1e-12)) N0 = std::max(N0, Ns[i] + 1);
  rep.constants["N0"] = N0;
  rep.constants["N_max"] = opt.N_max;
  rep.constants["samples"] = double(lhs.size());
  rep.pass["lemma3"] = b.validated && N0 <= 8;
  return rep;
}

VerificationReport lemma5_fit(const GluedMapCtx& ctx, int k_max, int N0) {
  const SequencePlan& p = ctx.plan();
  const int kmax = std::min(k_max, p.K - 1);
  if (kmax < 2) throw DepthError("transition-map fit needs at least three strips");
  struct Row {
    std::vector<double> l1, s1, l2, s2, l2lit, l3, l4, l5, s5, l6, s6, d, dinv;
  };
  std::vector<Row> rows(size_t(kmax) + 1);
  // pairs that carry information: phi is not the identity and the remainder bound applies (N >= N0)
  std::vector<int> eligible;
  for (int k = 1; k <= kmax; ++k) {
    const PairIdx a = ctx.pair(k), b = ctx.pair(k + 1);
    if ((a.m != b.m || a.n != b.n) && a.N() >= N0) eligible.push_back(k);
  }
  std::exception_ptr err;
  auto job = [&](int k) {
    Row& R = rows[size_t(k)];
    const PairIdx a = ctx.pair(k), b = ctx.pair(k + 1);
    const double N = a.N(), M = b.N();
    const double lN = std::log(N);
    const double sk = ctx.s(k);
    const double beta = 1 / std::pow(std::log(k + 2.0), 2);
    const double lit = (std::lgamma(M + 1) - std::lgamma(N + 1)) / N;
    auto both = [&](double x) { return std::pair<double, double>(phi(a, b, x), phi_prime(a, b, x)); };
    for (int j = 0; j <= 16; ++j) {
      const double x = 8 * lN + j + 1e-9;
      const auto [f, fp] = both(x);
      R.l1.push_back(std::abs(f - x));
      R.s1.push_back(std::exp(-x / 2));
      R.l5.push_back(std::abs(fp - 1));
      R.s5.push_back(std::exp(-x / 2) + beta);
      R.d.push_back(fp);
      R.dinv.push_back(1 / fp);
    }
    for (int j = 0; j <= 30; ++j) {
      const double x = lN - j - 1e-9;
      const auto [f, fp] = both(x);
      R.l2.push_back(std::abs(f - phi_asymptote(a, b, x)));
      R.l2lit.push_back(std::abs(f - (M / N) * x + lit));
      R.s2.push_back(std::exp(x));
      R.l4.push_back(R.l2.back());
      R.l6.push_back(std::abs(fp - M / N));
      R.s6.push_back(std::exp(x) / N);
      R.d.push_back(fp);
      R.dinv.push_back(1 / fp);
    }
    const double hi = 8 * lN + 16;
    for (int j = 0; j < 20; ++j) {
      const double x = sk + (hi - sk) * j / 19.0;
      R.l3.push_back(std::abs(phi(a, b, x) - x));
    }
  };
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < eligible.size(); ++i) {
    try {
      job(eligible[i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  VerificationReport rep;
  // alternate eligible pairs between the fitting and the validation partition
  auto gather = [&](const std::string& name, auto lhs_of, auto shape_of, bool gate = true) {
    std::vector<double> l, s;
    std::vector<bool> f;
    for (size_t e = 0; e < eligible.size(); ++e) {
      const Row& R = rows[size_t(eligible[e])];
      const std::vector<double>& L = lhs_of(R);
      for (size_t i = 0; i < L.size(); ++i) {
        l.push_back(L[i]);
        s.push_back(shape_of(R, i));
        f.push_back(e % 2 == 0);
      }
    }
    BoundFit b = fit_bound(name, l, s, f, 2.0);
    rep.fits.push_back(b);
    rep.constants[name] = b.c_fit;
    if (gate) rep.pass[name] = b.validated;
  };
  rep.constants["eligible_pairs"] = double(eligible.size());
  rep.constants["N0"] = N0;
  auto one = [](const Row&, size_t) { return 1.0; };
  gather("c1", [](const Row& R) -> const auto& { return R.l1; }, [](const Row& R, size_t i) { return R.s1[i]; });
  gather("c2", [](const Row& R) -> const auto& { return R.l2; }, [](const Row& R, size_t i) { return R.s2[i]; });
  // the asymptote without the binomial term, reported only
  gather("c2_literal", [](const Row& R) -> const auto& { return R.l2lit; },
         [](const Row& R, size_t i) { return R.s2[i]; }, false);
  gather("c3", [](const Row& R) -> const auto& { return R.l3; }, one);
  gather("c4", [](const Row& R) -> const auto& { return R.l4; }, one);
  gather("c5", [](const Row& R) -> const auto& { return R.l5; }, [](const Row& R, size_t i) { return R.s5[i]; });
  gather("c6", [](const Row& R) -> const auto& { return R.l6; }, [](const Row& R, size_t i) { return R.s6[i]; });
  gather("c8", [](const Row& R) -> const auto& { return R.d; }, one);
  gather("c7_inverse", [](const Row& R) -> const auto& { return R.dinv; }, one);
  if (rep.constants["c7_inverse"] > 0) rep.constants["c7"] = 1 / rep.constants["c7_inverse"];
  if (eligible.size() < 2) {
    // nothing to fit: every consecutive pair below N0 or identical
    for (auto& [name, ok] : rep.pass) ok = eligible.empty();
  }
  double sdev = 0;
  for (int k = 1; k <= std::min(p.K, 200); ++k)
    sdev = std::max(sdev, std::abs(ctx.s(k) - std::log(double(p.N(k)))));
  rep.constants["s_shift_max"] = sdev;
  rep.pass["s_shift"] = sdev <= 3;
  rep.constants["k_max"] = kmax;
  return rep;
}

VerificationReport counting_constants(const CountingCurve& curve, double exponent,
                                      const std::string& prefix, bool log2_correction) {
  std::vector<double> n, shape, inv, ishape;
  std::vector<bool> fit;
  for (size_t i = 0; i < curve.radii.size(); ++i) {
    if (curve.counts[i] <= 0) continue;
    const double r = curve.radii[i];
    double s = std::pow(r, exponent);
    if (log2_correction) s /= std::pow(std::log(r), 2);
    n.push_back(curve.counts[i]);
    shape.push_back(s);
    inv.push_back(s);
    ishape.push_back(curve.counts[i]);
    fit.push_back(i % 2 == 0);
  }
  VerificationReport rep;
  const BoundFit hi = fit_bound(prefix + "_hi", n, shape, fit, 2.0);
  const BoundFit lo = fit_bound(prefix + "_lo_inverse", inv, ishape, fit, 2.0);
  rep.fits = {hi, lo};
  rep.constants[prefix + "_hi"] = hi.c_fit;
  rep.constants[prefix + "_lo"] = lo.c_fit > 0 ? 1 / lo.c_fit : 0;
  rep.pass[prefix] = hi.validated && lo.validated;
  return rep;
}

}  // namespace bl
