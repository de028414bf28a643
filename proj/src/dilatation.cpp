#include "banklaine/dilatation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "banklaine/errors.hpp"

namespace bl {

using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double K_minus_one(double abs_mu) { return 2 * abs_mu / (1 - abs_mu); }

cd strip_mu(double a, double b) { return cd(a, b) / cd(1 + a, -b); }

// Q sub-region of a point in the closed right half-plane.
enum class QReg { Identity, Radial, Interp };

QReg q_region(cd w) {
  const double x = std::max(0.0, w.real());
  if (x >= 1) return QReg::Identity;
  if (std::abs(cd(x, w.imag())) < 1) return QReg::Radial;
  if (std::abs(w.imag()) >= 1) return QReg::Interp;
  return QReg::Identity;
}

// The g-piece index for a height y >= 1 (same lookup as g_inverse_eval).
int g_piece(const SequencePlan& p, double y) {
  const double v = std::pow(y, p.gamma);
  const auto it = std::upper_bound(p.calN_seq.begin(), p.calN_seq.end(), v / kTwoPi,
                                   [](double a, std::int64_t c) { return a < double(c); });
  return std::min(int(it - p.calN_seq.begin()) + 1, p.K);
}

double g_on_piece(const SequencePlan& p, int kg, double y) {
  return kTwoPi * (kg - 1) + (std::pow(y, p.gamma) - kTwoPi * double(p.calN(kg - 1))) / double(p.N(kg));
}

// Everything needed to evaluate the quasiconformal part on one smooth piece,
// extended analytically past the piece boundaries.
struct Chart {
  bool vside = false;
  bool conj = false;
  int k = 1;
  QReg qreg = QReg::Identity;
  int kg = 1;
};

Chart chart_at(const GluedMapCtx& ctx, cd z) {
  const SequencePlan& p = ctx.plan();
  Chart c;
  c.conj = z.imag() < 0;
  const cd zu = c.conj ? std::conj(z) : z;
  if (ctx.in_V_sector(zu)) {
    c.vside = true;
    c.k = ctx.locate_V(ctx.pow_V(zu)).k;
    return c;
  }
  const cd w = ctx.pow_U(zu);
  c.qreg = q_region(w);
  if (c.qreg == QReg::Interp) c.kg = g_piece(p, std::abs(w.imag()));
  c.k = ctx.locate_U(ctx.eval_Q(w)).k;
  return c;
}

cd chart_eval(const GluedMapCtx& ctx, const Chart& c, cd z) {
  const SequencePlan& p = ctx.plan();
  const cd zu = c.conj ? std::conj(z) : z;
  cd out;
  if (c.vside) {
    const cd w = ctx.pow_V(zu);
    const double x = w.real(), y = w.imag();
    const double Nk = double(p.N(c.k));
    const double t = (y / kTwoPi - double(p.calN(c.k - 1))) / Nk;
    out = cd(x + t * (ctx.psi(c.k, x, Side::V) - x), y);
  } else {
    const cd w = ctx.pow_U(zu);
    cd u = w;
    if (c.qreg == QReg::Radial) {
      u = w * std::pow(std::abs(w), p.gamma - 1);
    } else if (c.qreg == QReg::Interp) {
      const double x = w.real(), y = w.imag();
      u = cd(x, (1 - x) * g_on_piece(p, c.kg, y) + x * y);
    }
    const double x = u.real(), y = u.imag();
    const double t = y / kTwoPi - (c.k - 1);
    out = cd(x + t * (ctx.psi(c.k, x, Side::U) - x), y);
  }
  return c.conj ? std::conj(out) : out;
}

std::pair<double, double> psi_pair(const GluedMapCtx& ctx, int k, double x, Side side, bool fast) {
  if (fast) return ctx.psi_both_fast(k, x, side);
  return {ctx.psi(k, x, side), ctx.psi_prime(k, x, side)};
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::UStrip: return "U-strip";
    case Region::VStrip: return "V-strip";
    case Region::QStretch: return "Q-stretch";
    case Region::QInterp: return "Q-interp";
    case Region::Holomorphic: return "holomorphic";
  }
  return "?";
}

DilatationSample mu_at(const GluedMapCtx& ctx, cd z, bool fast) {
  const SequencePlan& p = ctx.plan();
  DilatationSample s;
  s.z = z;
  const bool conj = z.imag() < 0;
  const cd zu = conj ? std::conj(z) : z;
  cd mu;
  if (ctx.in_V_sector(zu)) {
    const StripPoint sp = ctx.locate_V(ctx.pow_V(zu), fast);
    const double x = std::min(0.0, ctx.pow_V(zu).real());
    const auto [ps, dps] = psi_pair(ctx, sp.k, x, Side::V, fast);
    const double a = sp.t * (dps - 1) / 2;
    const double b = (ps - x) / (2 * kTwoPi * double(p.N(sp.k)));
    // holomorphic pre-composition with -(-z)^sigma rotates mu by conj(p')/p'
    const double argp = (p.sigma - 1) * std::arg(-zu);
    mu = strip_mu(a, b) * std::polar(1.0, -2 * argp);
    s.region = Region::VStrip;
  } else {
    const cd w = ctx.pow_U(zu);
    cd mu_q = 0, q_w = 1;
    s.region = Region::UStrip;
    switch (q_region(w)) {
      case QReg::Radial: {
        const double r = std::abs(w);
        mu_q = r > 0 ? (p.gamma - 1) / (p.gamma + 1) * w / std::conj(w) : cd(0);
        q_w = (p.gamma + 1) / 2 * std::pow(r, p.gamma - 1);
        s.region = Region::QStretch;
        break;
      }
      case QReg::Interp: {
        const double x = std::max(0.0, w.real()), y = w.imag();
        const double g = g_inverse_eval(p, y), gp = g_inverse_derivative(p, y);
        q_w = 0.5 * cd(1 + (1 - x) * gp + x, y - g);
        const cd q_wb = 0.5 * cd(1 - (1 - x) * gp - x, y - g);
        mu_q = q_wb / q_w;
        s.region = Region::QInterp;
        break;
      }
      case QReg::Identity:
        break;
    }
    const cd u = ctx.eval_Q(w);
    const StripPoint sp = ctx.locate_U(u, fast);
    const double x = std::max(0.0, u.real());
    const auto [ps, dps] = psi_pair(ctx, sp.k, x, Side::U, fast);
    const double a = sp.t * (dps - 1) / 2;
    const double b = (ps - x) / (2 * kTwoPi);
    const cd mu_u = strip_mu(a, b);
    const cd th = std::conj(q_w) / q_w;
    const cd mu_w = (mu_q + mu_u * th) / (1.0 + std::conj(mu_q) * mu_u * th);
    const double argp = (p.rho - 1) * std::arg(zu);
    mu = mu_w * std::polar(1.0, -2 * argp);
  }
  if (mu == 0.0) s.region = Region::Holomorphic;
  s.mu = conj ? std::conj(mu) : mu;
  const double am = std::abs(s.mu);
  if (!(am < 1)) throw PrecisionError("Beltrami coefficient not below 1");
  s.K = 1 + K_minus_one(am);
  return s;
}

cd quasi_part(const GluedMapCtx& ctx, cd z) { return chart_eval(ctx, chart_at(ctx, z), z); }

cd mu_finite_difference(const GluedMapCtx& ctx, cd z) {
  const Chart c = chart_at(ctx, z);
  const double h = 1e-5 * (1 + std::abs(z));
  const cd fx = (chart_eval(ctx, c, z + h) - chart_eval(ctx, c, z - h)) / (2 * h);
  const cd fy = (chart_eval(ctx, c, z + cd(0, h)) - chart_eval(ctx, c, z - cd(0, h))) / (2 * h);
  const cd I(0, 1);
  return (fx + I * fy) / (fx - I * fy);
}

KBoundReport K_U_bound_check(const GluedMapCtx& ctx, int k, const std::vector<double>& xgrid) {
  KBoundReport rep;
  rep.k = k;
  for (double x : xgrid) {
    const double ps = ctx.psi(k, x, Side::U), dps = ctx.psi_prime(k, x, Side::U);
    const double r = std::abs(dps - 1) + std::abs(ps - x);
    const double bound = 4 * (1 + r) * r / std::min(1.0, dps);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double am = std::abs(strip_mu(t * (dps - 1) / 2, (ps - x) / (2 * kTwoPi)));
      const double km1 = K_minus_one(am);
      ++rep.points;
      rep.max_K = std::max(rep.max_K, 1 + km1);
      rep.max_excess = std::max(rep.max_excess, km1 - bound);
      if (km1 > bound) ++rep.violations;
      if (bound > 0) rep.max_ratio = std::max(rep.max_ratio, km1 / bound);
    }
  }
  return rep;
}

namespace {

// Angular breakpoints in [0, pi] for radius r: the inner edge of the Q-interp
// wedge and the sector ray. The wedge has width ~ r^{-rho} and gets its own nodes.
std::vector<double> angular_breaks(const SequencePlan& p, double r) {
  const double ray = std::numbers::pi / (2 * p.rho);
  const double rr = std::pow(r, p.rho);
  std::vector<double> b{0.0};
  if (rr > 1) b.push_back(std::acos(1 / rr) / p.rho);
  b.push_back(ray);
  b.push_back(std::numbers::pi);
  return b;
}

// Sums over theta for each radial node; nodes are independent.
std::vector<double> annulus_rows(const GluedMapCtx& ctx, double r_lo, double r_hi, int n_r,
                                 int n_theta, ExecPolicy policy) {
  const double lr0 = std::log(r_lo), dlr = (std::log(r_hi) - lr0) / n_r;
  const int n_wedge = std::max(8, n_theta / 16);
  std::vector<double> rows(size_t(n_r), 0.0);
  std::exception_ptr err;
  auto row = [&](int i) {
    const double r = std::exp(lr0 + (i + 0.5) * dlr);
    const std::vector<double> br = angular_breaks(ctx.plan(), r);
    double sum = 0, comp = 0;
    for (size_t seg = 0; seg + 1 < br.size(); ++seg) {
      const double a = br[seg], len = br[seg + 1] - a;
      const bool wedge = br.size() == 4 && seg == 1;
      const int n = wedge ? n_wedge : std::max(2, int(std::ceil(n_theta * len / std::numbers::pi)));
      const double dth = len / n;
      for (int j = 0; j < n; ++j) {
        const double th = a + (j + 0.5) * dth;
        const double v = K_minus_one(std::abs(mu_at(ctx, std::polar(r, th), true).mu)) * dth;
        const double y = v - comp, t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
    }
    // the conjugate half contributes the same
    rows[size_t(i)] = 2 * sum * dlr;
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_r; ++i) {
      try {
        row(i);
      } catch (...) {
#pragma omp critical
        err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int i = 0; i < n_r; ++i) row(i);
  }
  return rows;
}

double kahan_total(const std::vector<double>& v) {
  double sum = 0, comp = 0;
  for (double x : v) {
    const double y = x - comp, t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

AnnulusIntegral dilatation_integral(const GluedMapCtx& ctx, double r_lo, double r_hi, int n_r,
                                    int n_theta, ExecPolicy policy) {
  if (!(r_lo > 0 && r_hi > r_lo)) throw PreconditionError("need 0 < r_lo < r_hi");
  if (n_r < 2 || n_theta < 2) throw PreconditionError("resolution too small");
  AnnulusIntegral out;
  out.value = kahan_total(annulus_rows(ctx, r_lo, r_hi, n_r, n_theta, policy));
  out.coarse = kahan_total(annulus_rows(ctx, r_lo, r_hi, n_r / 2, n_theta / 2, policy));
  out.err_estimate = std::abs(out.value - out.coarse);
  return out;
}

}  // namespace bl
