#include "doctest.h"

#include <cmath>
#include <numbers>

#include "banklaine/errors.hpp"
#include "banklaine/glue_maps.hpp"

using namespace bl;
using cd = std::complex<double>;
using doctest::Approx;

namespace {

const double pi = std::numbers::pi;

}  // namespace

TEST_CASE("normalizing shift s") {
  CHECK(solve_s(0, 0) == Approx(std::log(std::log(2.0))));
  CHECK(solve_s(0, 0) == Approx(-0.3665129).epsilon(1e-7));
  const double s = solve_s(0, 1);
  const double w = std::exp(s);
  CHECK((1 - w + w * w / 2) * std::exp(w) == Approx(2).epsilon(1e-12));
  for (auto [m, n] : {std::pair{0, 5}, {3, 20}, {10, 150}}) {
    const double sk = solve_s(m, n);
    CHECK(g_function(m, n).log_g(sk) == Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("phi") {
  const PairIdx a{0, 0}, b{0, 1};
  for (double x : {-3.0, 0.0, 2.0}) {
    CHECK(phi(b, b, x) == Approx(x));
    CHECK(phi_prime(b, b, x) == Approx(1));
  }
  CHECK(phi(a, b, 0.0) == Approx(std::log(1 + std::log(0.5))));
  CHECK(phi(a, b, 0.0) == Approx(-1.1814).epsilon(1e-4));
  const PairIdx c{0, 12}, d{0, 15};
  const double h = 1e-6;
  for (double x : {-5.0, 0.0, 2.0, 4.0}) {
    const double fd = (phi(c, d, x + h) - phi(c, d, x - h)) / (2 * h);
    CHECK(phi_prime(c, d, x) == Approx(fd).epsilon(1e-6));
  }
  const double x = 8 * std::log(double(c.N())) + 2;
  CHECK(std::abs(phi(c, d, x) - x) <= std::exp(-x / 2));
  CHECK(phi(c, d, -40.0) == Approx(phi_asymptote(c, d, -40.0)).epsilon(1e-12));
}

TEST_CASE("fixed points") {
  const auto same = fixed_points({0, 1}, {0, 1}, -5, 5);
  CHECK(same.degenerate);
  const auto r = fixed_points({0, 0}, {0, 1}, -5, 5);
  REQUIRE(r.points.size() == 1);
  CHECK(std::abs(r.points[0] - std::log(3.0)) <= 3);
  GluedMapCtx ctx(make_plan(2.0, 1.0, 51));
  for (int k = 5; k <= 50; ++k) {
    const PairIdx f = ctx.pair(k), t = ctx.pair(k + 1);
    if (f.m == t.m && f.n == t.n) continue;
    const auto fp = fixed_points(f, t, -20, 12 * std::log(double(f.N())) + 20);
    for (double dev : fp.deviation) CHECK(std::abs(dev) <= 3);
  }
}

TEST_CASE("transition maps psi") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 12));
  for (int k = 1; k < 11; ++k) {
    CHECK(ctx.psi(k, 0.0, Side::V) == Approx(0).epsilon(1e-12));
    CHECK(ctx.psi(k, 0.0, Side::U) == Approx(phi(ctx.pair(k), ctx.pair(k + 1), ctx.s(k + 1)) - ctx.s(k)));
    // u_{k+1}(0) = u_k(psi_k(0)) = 2
    CHECK(ctx.g(k).log_g(ctx.s(k) + ctx.psi(k, 0.0, Side::U)) == Approx(std::log(2.0)).epsilon(1e-12));
  }
  GluedMapCtx flat(plan_from_sequences(1.0, 0.0, {0, 1, 1, 1}, {0, 0, 0, 0}));
  for (double x : {-3.0, 0.0, 4.0}) CHECK(flat.psi(2, x, Side::U) == Approx(x));
  for (double x : {-3.0, 0.5, 4.0, 15.0}) {
    const auto [v, dv] = ctx.psi_both_fast(4, x, Side::U);
    CHECK(v == Approx(ctx.psi(4, x, Side::U)).epsilon(1e-10));
    CHECK(dv == Approx(ctx.psi_prime(4, x, Side::U)).epsilon(1e-9));
  }
}

TEST_CASE("U and V") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 30));
  CHECK(ctx.eval_U(0.0).value().real() == Approx(2));
  CHECK(ctx.eval_V(0.0).value().real() == Approx(2));
  for (cd z : {cd(1.3, 2.0), cd(0.4, 9.0), cd(3, 20)}) {
    const cd u = ctx.eval_U(z).value(), uc = ctx.eval_U(std::conj(z)).value();
    CHECK(std::abs(uc - std::conj(u)) <= 1e-10 * std::abs(u));
  }
  for (double x : {20.0, 40.0, 80.0}) CHECK(ctx.log_log_U(x).real() / x == Approx(1).epsilon(0.2));
  double prev = 2;
  for (double x = -0.5; x > -30; x -= 2.5) {
    const double v = ctx.eval_V(x).value().real();
    CHECK(v > 1);
    CHECK(v < prev);
    prev = v;
  }
  // V(x) = g_1(s_1 + x) on strip 1, so log(V - 1) = s_1 + x + O(e^x)
  for (double x : {-20.0, -30.0}) CHECK(std::abs(ctx.log_V_minus_one(x).real() - (ctx.s(1) + x)) <= std::exp(x));
}

TEST_CASE("Q") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 30));
  const cd q = ctx.eval_Q(cd(0, 0.5));
  CHECK(q.real() == Approx(0).epsilon(1e-14));
  CHECK(q.imag() == Approx(0.25));
  for (cd z : {cd(1, 3), cd(2.5, -7), cd(10, 0.1)}) CHECK(std::abs(ctx.eval_Q(z) - z) < 1e-14);
  for (double y : {0.3, 2.0, 7.0, 25.0}) {
    const cd qi = ctx.eval_Q(cd(0, y));
    CHECK(qi.real() == Approx(0).epsilon(1e-12));
    CHECK(qi.imag() == Approx(g_inverse_eval(ctx.plan(), y)));
  }
  for (cd z : {cd(0.2, 0.3), cd(0.5, 4), cd(0.9, -12)})
    CHECK(std::abs(ctx.eval_Q_inverse(ctx.eval_Q(z)) - z) < 1e-9);
}

TEST_CASE("G on the real axis") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 30));
  const double r = 5;
  const cd gp = ctx.eval_G(r).value();
  const cd u = ctx.eval_U(std::pow(r, ctx.plan().rho)).value();
  CHECK(std::abs(gp - u) <= 1e-12 * std::abs(u));
  const double gv = ctx.eval_G(-r).value().real();
  CHECK(gv > 1);
  CHECK(gv <= 2);
}

TEST_CASE("seams") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 30));
  std::vector<double> ys;
  for (int i = 0; i <= 40; ++i) ys.push_back(0.05 + 0.015 * i * i);
  const SeamReport r = boundary_consistency_check(ctx, ys);
  CHECK(r.samples > 0);
  CHECK(r.max_UV <= 1e-8);
  CHECK(r.max_U_strip <= 1e-8);
  CHECK(r.max_V_strip <= 1e-8);
  CHECK(r.max_G_sector <= 1e-8);
  CHECK(r.max_Q <= 1e-8);
}

TEST_CASE("depth errors") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 5));
  CHECK_THROWS_AS(ctx.eval_U(cd(1, 2 * pi * 10)), DepthError);
}
