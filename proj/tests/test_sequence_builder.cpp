#include "doctest.h"

#include <cmath>
#include <numbers>

#include "banklaine/sequence_builder.hpp"

using namespace bl;
using doctest::Approx;

namespace {

const double two_pi = 2 * std::numbers::pi;

}  // namespace

TEST_CASE("n sequence") {
  CHECK(build_n_sequence(1.0, 5) == std::vector<int>{0, 1, 1, 1, 1});
  const auto n2 = build_n_sequence(2.0, 2);
  CHECK(n2[0] == 0);
  CHECK(n2[1] == 12);
  for (double g : {1.3, 1.5, 2.0, 2.7}) {
    const auto n = build_n_sequence(g, 300);
    CHECK(n[0] == 0);
    for (int v : n) CHECK(v >= 0);
  }
}

TEST_CASE("m sequence") {
  for (double g : {1.0, 1.5, 2.0}) {
    const auto m = build_m_sequence(g, 0.0, 200);
    CHECK(std::all_of(m.begin(), m.end(), [](int v) { return v == 0; }));
  }
  // delta gamma = 1/2
  const auto half = build_m_sequence(1.0, 0.5, 20);
  for (int k = 1; k < 7; ++k) CHECK(half[size_t(k - 1)] == 0);
  CHECK(half[6] == 1);
  // delta gamma = 1
  const auto one = build_m_sequence(1.0, 1.0, 200);
  CHECK(one[0] == 0);
  int k1 = 0;
  for (int k = 1; k <= 200 && !k1; ++k)
    if (one[size_t(k - 1)] == 1) k1 = k;
  REQUIRE(k1 > 0);
  for (int k = k1; k <= 200; ++k) CHECK(one[size_t(k - 1)] == 1);
  for (double g : {1.5, 2.0})
    for (double d : {0.5, 1.0}) CHECK(build_m_sequence(g, d, 50)[0] == 0);
}

TEST_CASE("h and frak h") {
  const SequencePlan p = make_plan(2.0, 0.0, 50);
  CHECK(h_eval(p, 0) == 0);
  CHECK(h_eval(p, two_pi) == Approx(two_pi));
  for (int k = 1; k <= 50; ++k) CHECK((2 * p.n(k) + 1) % 2 == 1);
  for (double x : {0.0, 1.0, 30.0, 200.0}) CHECK(frakh_eval(p, x) == 0);
  for (int k = 1; k < 50; ++k) CHECK(h_eval(p, two_pi * (k + 1)) > h_eval(p, two_pi * k));
}

TEST_CASE("g from the plan") {
  const SequencePlan p1 = make_plan(1.0, 0.0, 10);
  for (double x : {0.1, 1.0, 3.0, two_pi}) CHECK(g_inverse_eval(p1, x) == Approx(x));
  const SequencePlan p2 = make_plan(2.0, 0.0, 10);
  for (double x : {0.1, 1.0, 2.0}) CHECK(g_inverse_eval(p2, x) == Approx(x * x));
  const SequencePlan p3 = make_plan(2.0, 1.0, 60);
  double prev = -1;
  for (double x = 0; x < 40; x += 0.37) {
    const double g = g_inverse_eval(p3, x);
    CHECK(g > prev);
    prev = g;
    CHECK(g_forward_inverse(p3, g) == Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("growth of the plan") {
  const SequencePlan p2 = make_plan(2.0, 0.0, 500);
  const double ratio = double(p2.calN(500)) / (two_pi * 500.0 * 500.0);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
  CHECK(verify_plan_estimates(make_plan(2.0, 0.0, 200)).m_ratio_sup == 0);
  const SequencePlan p15 = make_plan(1.5, 0.0, 500);
  // k = 1 is pinned to slope 1 by n_1 = 0
  for (int k = 2; k <= 500; ++k)
    CHECK(std::abs(h_eval(p15, two_pi * k) - std::pow(two_pi * k, 1.5)) <= two_pi);
}

TEST_CASE("lambda and rho") {
  CHECK(rho_from_gamma(2.0) == Approx(0.75));
  CHECK(rho_from_gamma(1.0) == Approx(1.0));
  CHECK(gamma_from_lambda(1.5) == Approx(2.0));
}

TEST_CASE("plan json round trip") {
  const SequencePlan p = make_plan(1.5, 0.5, 40);
  CHECK(plan_from_json(plan_to_json(p)) == p);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS(make_plan(0.5, 0.0, 10));
  CHECK_THROWS(make_plan(2.0, 1.5, 10));
  CHECK_THROWS(make_plan(2.0, 0.0, 0));
}
