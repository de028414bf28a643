#include "banklaine/exact_coeffs.hpp"

#include <stdexcept>

namespace bl {

ExactInteger factorial(unsigned k) {
  ExactInteger r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

ExactInteger binomial(unsigned n, unsigned k) {
  ExactInteger r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

std::vector<ExactRational> closed_form(int k, int other, bool alternate) {
  std::vector<ExactRational> v;
  const unsigned total = unsigned(k + other);
  const ExactInteger ft = factorial(total);
  for (int i = 0; i <= k; ++i) {
    ExactRational q(binomial(unsigned(k), unsigned(i)) * factorial(total - unsigned(i)), ft);
    q.canonicalize();
    if (alternate && (i % 2)) q = -q;
    v.push_back(q);
  }
  return v;
}

// 2 c0 (k+1-i) v_{i-1} = (2ic + i^2) v_i with c = -K/2.
std::vector<ExactRational> by_recurrence(int k, int other, const ExactRational& c0) {
  const ExactRational c(-(k + other + 1), 2);
  std::vector<ExactRational> v{ExactRational(1)};
  for (int i = 1; i <= k; ++i) {
    ExactRational lhs = 2 * c0 * (k + 1 - i) * v.back();
    ExactRational rhs = 2 * i * c + i * i;
    v.push_back(lhs / rhs);
  }
  return v;
}

bool satisfies(const std::vector<ExactRational>& v, int k, const ExactRational& c0,
               const ExactRational& c) {
  if (v.size() != size_t(k + 1)) return false;
  for (int i = 1; i <= k; ++i) {
    if (2 * c0 * (k + 1 - i) * v[i - 1] != (2 * i * c + i * i) * v[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<ExactRational> closed_form_a(int k1, int k2) { return closed_form(k1, k2, false); }
std::vector<ExactRational> closed_form_b(int k1, int k2) { return closed_form(k2, k1, true); }

std::vector<ExactRational> recurrence_a(int k1, int k2) {
  return by_recurrence(k1, k2, ExactRational(-1, 2));
}
std::vector<ExactRational> recurrence_b(int k1, int k2) {
  return by_recurrence(k2, k1, ExactRational(1, 2));
}

std::vector<ExactRational> textbook_a(int k1, int k2) {
  std::vector<ExactRational> v;
  for (int i = 0; i <= k1; ++i) v.emplace_back(factorial(k2), factorial(i + k2));
  for (auto& q : v) q.canonicalize();
  return v;
}

std::vector<ExactRational> textbook_b(int k1, int k2) {
  std::vector<ExactRational> v;
  for (int j = 0; j <= k2; ++j) {
    ExactRational q(factorial(k1), factorial(j + k1));
    q.canonicalize();
    v.push_back(j % 2 ? ExactRational(-q) : q);
  }
  return v;
}

SolutionSpec solution_coefficients(int k1, int k2) {
  if (k1 < 0 || k2 < 0) throw std::invalid_argument("k1, k2 must be nonnegative");
  SolutionSpec s;
  s.k1 = k1;
  s.k2 = k2;
  s.c0 = ExactRational(-1, 2);
  s.c = ExactRational(-(k1 + k2 + 1), 2);
  s.a = closed_form_a(k1, k2);
  s.b = closed_form_b(k1, k2);
  if (s.a != recurrence_a(k1, k2) || s.b != recurrence_b(k1, k2))
    throw std::logic_error("closed form and recurrence disagree");
  // W(f1,f2) = a0b0 * a_{k1} b_{k2}, so a0b0 = 1/(a_{k1} b_{k2}).
  s.a0b0 = 1 / (s.a.back() * s.b.back());
  return s;
}

bool recurrence_check(const SolutionSpec& s) {
  return satisfies(s.a, s.k1, ExactRational(-1, 2), s.c) &&
         satisfies(s.b, s.k2, ExactRational(1, 2), s.c) && s.a.size() && s.a[0] == 1 &&
         s.b.size() && s.b[0] == 1;
}

PolyPair rmn_coefficients(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("m, n must be nonnegative");
  PolyPair p;
  p.m = m;
  p.n = n;
  p.A = closed_form_a(m, 2 * n);
  p.B = closed_form_b(m, 2 * n);
  if (product_invariant(p) != 1) throw std::logic_error("product invariant violated");
  return p;
}

ExactRational product_invariant(const PolyPair& p) {
  ExactRational prod = abs(p.A.back() * p.B.back());
  return prod * binomial(unsigned(p.m + 2 * p.n), unsigned(p.m)) *
         factorial(unsigned(p.m + 2 * p.n));
}

nlohmann::json to_json(const ExactRational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

ExactRational rational_from_json(const nlohmann::json& j) {
  ExactRational q(ExactInteger(j.at("num").get<std::string>()),
                  ExactInteger(j.at("den").get<std::string>()));
  q.canonicalize();
  return q;
}

namespace {
nlohmann::json vec_json(const std::vector<ExactRational>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& q : v) arr.push_back(to_json(q));
  return arr;
}
}  // namespace

nlohmann::json to_json(const SolutionSpec& s) {
  return {{"k1", s.k1},       {"k2", s.k2},       {"c0", to_json(s.c0)},
          {"c", to_json(s.c)}, {"a", vec_json(s.a)}, {"b", vec_json(s.b)},
          {"a0b0", to_json(s.a0b0)}};
}

nlohmann::json to_json(const PolyPair& p) {
  return {{"m", p.m}, {"n", p.n}, {"A", vec_json(p.A)}, {"B", vec_json(p.B)}};
}

}  // namespace bl
