#include "doctest.h"

#include <cmath>
#include <numbers>

#include "banklaine/dilatation.hpp"

using namespace bl;
using cd = std::complex<double>;
using doctest::Approx;

namespace {

const double pi = std::numbers::pi;

SequencePlan flat_plan(double gamma, int K) {
  return plan_from_sequences(gamma, 0.0, std::vector<int>(size_t(K), 0), std::vector<int>(size_t(K), 0));
}

}  // namespace

TEST_CASE("identical pairs give a conformal map") {
  GluedMapCtx ctx(flat_plan(1.0, 20));
  for (cd z : {cd(3, 1), cd(-2, 0.5), cd(5, -9), cd(-4, -4)}) {
    const DilatationSample s = mu_at(ctx, z);
    CHECK(std::abs(s.mu) == Approx(0).epsilon(1e-15));
    CHECK(s.K == 1);
  }
  CHECK(dilatation_integral(ctx, 2, 4, 16, 64).value == Approx(0).epsilon(1e-15));
}

TEST_CASE("radial stretch has dilatation gamma") {
  GluedMapCtx ctx(flat_plan(2.0, 20));
  for (cd z : {cd(0.5, 0), cd(0.3, 0.2), std::polar(0.8, 0.9)}) {
    const DilatationSample s = mu_at(ctx, z);
    CHECK(s.region == Region::QStretch);
    CHECK(s.K == Approx(2.0).epsilon(1e-12));
  }
  const DilatationSample far = mu_at(ctx, std::polar(9.0, 0.3));
  CHECK(far.K == Approx(1).epsilon(1e-15));
}

TEST_CASE("analytic against finite-difference Beltrami coefficients") {
  for (double d : {0.0, 1.0}) {
    GluedMapCtx ctx(make_plan(2.0, d, 40));
    for (cd z : {cd(2, 1), cd(4, 3.5), cd(-3, 2), cd(-6, -1), cd(0.3, 0.6), cd(1.5, -4), cd(8, 5)}) {
      const cd an = mu_at(ctx, z).mu;
      const cd fd = mu_finite_difference(ctx, z);
      CHECK(std::abs(an - fd) < 1e-6);
    }
  }
}

TEST_CASE("fast and exact psi give the same mu") {
  GluedMapCtx ctx(make_plan(2.0, 0.5, 40));
  for (cd z : {cd(3, 2), cd(-5, 1), cd(7, -6)})
    CHECK(std::abs(mu_at(ctx, z).mu - mu_at(ctx, z, true).mu) < 1e-9);
}

TEST_CASE("strip dilatation bound") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 20));
  std::vector<double> xs;
  for (int i = 0; i <= 80; ++i) xs.push_back(0.5 * i);
  const KBoundReport r = K_U_bound_check(ctx, 10, xs);
  CHECK(r.points == 5 * 81);
  CHECK(r.violations == 0);
}

TEST_CASE("t = 0 edges are not conformal when psi moves x") {
  // a = 0 on the lower edge but b = (psi(x) - x)/(4 pi) is not
  GluedMapCtx ctx(make_plan(2.0, 0.0, 20));
  const int k = 5;
  const double x = 1.0;
  REQUIRE(std::abs(ctx.psi(k, x, Side::U) - x) > 1e-3);
  const double u_edge = 2 * pi * (k - 1);
  const cd w(x + 1e-9, u_edge);
  const cd z = std::pow(w, 1 / ctx.plan().rho);
  CHECK(mu_at(ctx, z).K > 1 + 1e-6);
}

TEST_CASE("annulus integrals") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 60));
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 3; j <= 7; ++j) {
    const AnnulusIntegral a = dilatation_integral(ctx, std::ldexp(1.0, j), std::ldexp(1.0, j + 1), 24, 96);
    CHECK(a.value > 0);
    CHECK(a.value < prev);
    prev = a.value;
  }
}

TEST_CASE("serial and parallel integrals agree") {
  GluedMapCtx ctx(make_plan(2.0, 1.0, 40));
  const double s = dilatation_integral(ctx, 4, 8, 12, 48, ExecPolicy::Serial).value;
  const double p = dilatation_integral(ctx, 4, 8, 12, 48, ExecPolicy::Parallel).value;
  CHECK(s == Approx(p).epsilon(1e-13));
}

TEST_CASE("dilatation excess decays along rays") {
  GluedMapCtx ctx(make_plan(2.0, 0.0, 120));
  for (double th : {0.4, 1.0, 1.5, 2.0, 2.5}) {
    const double k_near = mu_at(ctx, std::polar(100.0, th)).K - 1;
    const double k_far = mu_at(ctx, std::polar(2000.0, th)).K - 1;
    CHECK(k_far < 0.5 * k_near);
  }
  // the real axes run along the lower edge of strip 1, where psi_1(x) - x tends to a constant
  const double k0 = mu_at(ctx, 100.0).K, k1 = mu_at(ctx, 2000.0).K;
  CHECK(k0 > 1.1);
  CHECK(k1 == Approx(k0).epsilon(1e-3));
}
