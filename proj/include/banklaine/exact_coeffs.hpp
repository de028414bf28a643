#pragma once

#include <gmpxx.h>

#include <vector>

#include <json.hpp>

namespace bl {

using ExactRational = mpq_class;
using ExactInteger = mpz_class;

struct SolutionSpec {
  int k1 = 0;
  int k2 = 0;
  ExactRational c0;
  ExactRational c;
  std::vector<ExactRational> a;
  std::vector<ExactRational> b;
  ExactRational a0b0;
};

struct PolyPair {
  int m = 0;
  int n = 0;
  std::vector<ExactRational> A;
  std::vector<ExactRational> B;
  int N() const { return m + 2 * n + 1; }
};

ExactInteger factorial(unsigned k);
ExactInteger binomial(unsigned n, unsigned k);

// a_i = C(k1,i)(k1+k2-i)!/(k1+k2)!, b_j = (-1)^j C(k2,j)(k1+k2-j)!/(k1+k2)!.
std::vector<ExactRational> closed_form_a(int k1, int k2);
std::vector<ExactRational> closed_form_b(int k1, int k2);
// Vectors generated from a[0] = 1 by the first-order recurrences.
std::vector<ExactRational> recurrence_a(int k1, int k2);
std::vector<ExactRational> recurrence_b(int k1, int k2);
// The textbook forms k2!/(i+k2)! and (-1)^j k1!/(j+k1)!; kept for comparison only.
std::vector<ExactRational> textbook_a(int k1, int k2);
std::vector<ExactRational> textbook_b(int k1, int k2);

SolutionSpec solution_coefficients(int k1, int k2);
bool recurrence_check(const SolutionSpec& spec);

PolyPair rmn_coefficients(int m, int n);
// |A_m B_2n| C(m+2n,m) (m+2n)!, which is exactly 1.
ExactRational product_invariant(const PolyPair& p);

nlohmann::json to_json(const ExactRational& q);
ExactRational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SolutionSpec& s);
nlohmann::json to_json(const PolyPair& p);

}  // namespace bl
