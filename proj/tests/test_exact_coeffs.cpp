#include "doctest.h"

#include "banklaine/exact_coeffs.hpp"

using namespace bl;
using Q = ExactRational;

TEST_CASE("solution coefficients of small specs") {
  SolutionSpec s00 = solution_coefficients(0, 0);
  CHECK(s00.a == std::vector<Q>{1});
  CHECK(s00.b == std::vector<Q>{1});
  CHECK(s00.a0b0 == 1);

  SolutionSpec s01 = solution_coefficients(0, 1);
  CHECK(s01.b == std::vector<Q>{1, -1});
  CHECK(abs(s01.a0b0) == 1);
  CHECK(s01.a0b0 == -1);

  SolutionSpec s20 = solution_coefficients(2, 0);
  CHECK(s20.a == std::vector<Q>{1, 1, Q(1, 2)});
}

TEST_CASE("closed form agrees with the recurrences") {
  for (int k1 = 0; k1 <= 12; ++k1)
    for (int k2 = 0; k2 <= 12; ++k2) {
      CHECK(closed_form_a(k1, k2) == recurrence_a(k1, k2));
      CHECK(closed_form_b(k1, k2) == recurrence_b(k1, k2));
    }
}

TEST_CASE("textbook forms differ from the closed form once both indices are positive") {
  CHECK(textbook_a(2, 0) == closed_form_a(2, 0));
  CHECK(textbook_b(0, 2) == closed_form_b(0, 2));
  CHECK(textbook_a(2, 2) != closed_form_a(2, 2));
}

TEST_CASE("recurrence_check") {
  CHECK(recurrence_check(solution_coefficients(0, 0)));
  CHECK(recurrence_check(solution_coefficients(3, 2)));
  SolutionSpec bad = solution_coefficients(1, 1);
  bad.a[1] += 1;
  CHECK_FALSE(recurrence_check(bad));
}

TEST_CASE("rmn coefficients") {
  PolyPair p01 = rmn_coefficients(0, 1);
  CHECK(p01.A == std::vector<Q>{1});
  CHECK(p01.B == std::vector<Q>{1, -1, Q(1, 2)});
  CHECK(p01.A[0] * p01.B[2] == Q(1, 2));

  PolyPair p11 = rmn_coefficients(1, 1);
  CHECK(p11.A == std::vector<Q>{1, Q(1, 3)});
  CHECK(p11.B == std::vector<Q>{1, Q(-2, 3), Q(1, 6)});
  // the textbook form gives B_1 = -1/2, which does not solve the recurrence
  CHECK(textbook_b(1, 2)[1] == Q(-1, 2));
  CHECK(p11.A[1] * p11.B[2] == Q(1, 18));

  PolyPair p00 = rmn_coefficients(0, 0);
  CHECK(p00.A == std::vector<Q>{1});
  CHECK(p00.B == std::vector<Q>{1});
}

TEST_CASE("product invariant is one") {
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n) CHECK(product_invariant(rmn_coefficients(m, n)) == 1);
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(20, 0) == 1);
}

TEST_CASE("json round trip of rationals and specs") {
  const Q q(-7, 12);
  CHECK(rational_from_json(to_json(q)) == q);
  auto j = to_json(solution_coefficients(2, 3));
  CHECK(j["k1"] == 2);
  CHECK(j["k2"] == 3);
}
