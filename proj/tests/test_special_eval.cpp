#include "doctest.h"

#include <cmath>
#include <numbers>

#include "banklaine/special_eval.hpp"

using namespace bl;
using cd = std::complex<double>;
using doctest::Approx;

namespace {

const double pi = std::numbers::pi;

cd g_value(int m, int n, cd z) { return eval_g(m, n, z).value(); }

}  // namespace

TEST_CASE("eval_poly") {
  // 1 - w + w^2/2 vanishes at w = 1 + i
  CHECK(std::abs(eval_poly(rmn_coefficients(0, 1).B, cd(1, 1)).value()) < 1e-14);
  auto v = eval_poly(rmn_coefficients(0, 1).B, cd(0, 1));
  CHECK(v.value().real() == Approx(0.5));
  CHECK(v.value().imag() == Approx(-1));
  CHECK(eval_poly({ExactRational(5), ExactRational(3)}, 0.0).value().real() == Approx(5));
  CHECK(eval_poly(rmn_coefficients(1, 1).A, 3.0).value().real() == Approx(2));
}

TEST_CASE("eval_h") {
  auto h = eval_h(0, 0, 2.0);
  CHECK(h.log_mag == Approx(2));
  CHECK(h.arg == Approx(0).epsilon(1e-15));
  CHECK(eval_h(0, 1, 0.0).value().real() == Approx(1));
  for (double y : {1e-2, 3e-3, 1e-3}) {
    const double hm1 = eval_h(0, 1, y).value().real() - 1;
    CHECK(hm1 / (y * y * y / 6) == Approx(1).epsilon(2 * y));
  }
}

TEST_CASE("eval_g") {
  for (double x : {-2.0, 0.0, 1.5, 4.0}) {
    auto g = eval_g(0, 0, x);
    CHECK(g.log_mag == Approx(std::exp(x)));
  }
  CHECK(eval_g(0, 0, cd(0, pi)).log_mag == Approx(-1));
  CHECK(eval_g(0, 1, -40.0).log_mag == Approx(0).epsilon(1e-12));
}

TEST_CASE("eval_g_prime against finite differences") {
  CHECK(eval_g_prime(0, 0, 0.0).log_mag == Approx(1));
  // (0,1) at z = 0: C(2,0) (m+2n)! = 2, so g'(0) = e/2
  CHECK(eval_g_prime(0, 1, 0.0).value().real() == Approx(std::exp(1.0) / 2));
  const double h = 1e-5;
  for (auto [m, n] : {std::pair{0, 1}, {1, 1}, {2, 3}})
    for (cd z : {cd(0.3, 0.2), cd(-1, 2), cd(1.2, -0.7)}) {
      const cd fd = (g_value(m, n, z + h) - g_value(m, n, z - h)) / (2 * h);
      const cd an = eval_g_prime(m, n, z).value();
      // central differences lose |g| eps / h to cancellation
      CHECK(std::abs(fd - an) < 1e-8 * (std::abs(an) + std::abs(g_value(m, n, z))));
    }
}

TEST_CASE("g' does not vanish") {
  for (auto [m, n] : {std::pair{0, 1}, {1, 2}, {3, 4}})
    for (double x = -5; x <= 5; x += 0.5)
      for (double y = -pi; y <= pi; y += pi / 8) CHECK(std::isfinite(eval_g_prime(m, n, cd(x, y)).log_mag));
}

TEST_CASE("log(g - 1) on the real line") {
  CHECK(eval_log_g_minus_one(0, 0, std::log(std::log(2.0))) == Approx(0).epsilon(1e-14));
  CHECK(eval_log_g_minus_one(0, 0, 0.0) == Approx(std::log(std::exp(1.0) - 1)));
  CHECK(eval_log_g_minus_one(0, 0, 0.0) == Approx(0.54132).epsilon(1e-5));
  for (double x : {-10.0, -20.0, -40.0})
    CHECK(std::abs(eval_log_g_minus_one(0, 1, x) - (-std::log(6.0) + std::exp(x) + 3 * x)) <= std::exp(x));
}

TEST_CASE("log-domain and direct forms agree where both are accurate") {
  for (auto [m, n] : {std::pair{0, 2}, {1, 3}, {2, 5}})
    for (double x : {2.0, 3.0, 4.0})
      CHECK(eval_log_g_minus_one(m, n, x) == Approx(eval_log_g_minus_one_direct(m, n, x)).epsilon(1e-9));
  // the direct form is lost to cancellation once g - 1 is far below eps
  const double L = eval_log_g_minus_one(2, 5, -3.0);
  CHECK(L < -40);
  CHECK_FALSE(std::abs(eval_log_g_minus_one_direct(2, 5, -3.0) - L) < 1e-3);
}

TEST_CASE("large degrees stay finite") {
  const GFunction& g = g_function(20, 180);
  for (double x : {-30.0, 0.0, 5.0, 8.0, 30.0}) {
    CHECK(std::isfinite(g.log_g_minus_one(x)));
    CHECK(std::isfinite(g.log_gprime(x)));
  }
}

TEST_CASE("remainder R(y,N)") {
  CHECK(lemma3_remainder(0, 0, 1.0) == Approx(std::log(std::exp(1.0) - 1) - 1 + std::log(2.0)));
  CHECK(lemma3_remainder(0, 0, 1.0) == Approx(0.2345).epsilon(1e-3));
  for (double y : {0.1, 1.0, 10.0, 50.0}) {
    const double N = 3;
    CHECK(std::abs(lemma3_remainder(1, 1, y)) <= 4 * 1.0 * y / (N * (y + N - 2)));
  }
}

TEST_CASE("polynomial tail bound") {
  CHECK(poly_tail_check(0, 1, 10.0));
  CHECK(poly_tail_check(0, 0, cd(3, 4)));
  CHECK(poly_tail_check(1, 1, 4.0));
  CHECK(poly_tail_check(1, 1, 7.0));
  // the literal bound drops the factor 2 of the geometric sum; on the imaginary axis
  // |B_0 + B_1 z| > |B_1 z| always
  CHECK_FALSE(poly_tail_check(1, 1, cd(0, 4)));
  CHECK_FALSE(poly_tail_check(0, 1, cd(0, 10)));
}
