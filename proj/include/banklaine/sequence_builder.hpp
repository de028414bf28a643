#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace bl {

// Vectors are indexed from k = 1: element [k-1] belongs to strip k.
struct SequencePlan {
  double gamma = 1.0;
  double delta = 0.0;
  double rho = 1.0;
  double sigma = 1.0;
  int K = 0;
  int k0 = 0;  // threshold strip when delta*gamma > 1, else 0
  std::vector<int> n_seq;
  std::vector<int> m_seq;
  std::vector<std::int64_t> N_seq;
  std::vector<std::int64_t> calN_seq;
  std::vector<double> h_breaks;      // h(2 pi k), k = 0..K
  std::vector<double> frakh_breaks;  // frak h(2 pi k), k = 0..K

  int n(int k) const { return n_seq[size_t(k - 1)]; }
  int m(int k) const { return m_seq[size_t(k - 1)]; }
  std::int64_t N(int k) const { return N_seq[size_t(k - 1)]; }
  // calN(0) = 0
  std::int64_t calN(int k) const { return k == 0 ? 0 : calN_seq[size_t(k - 1)]; }
};

double alpha(double x);
double rho_from_gamma(double gamma);
double gamma_from_lambda(double lambda);

std::vector<int> build_n_sequence(double gamma, int K);
std::vector<int> build_m_sequence(double gamma, double delta, int K);
// Smallest k0 from which alpha(x) x^dg gains at least 4 pi per strip; -1 if none below the cap.
int m_threshold(double dg, int cap = 10000000);

SequencePlan make_plan(double gamma, double delta, int K);
SequencePlan plan_from_sequences(double gamma, double delta, std::vector<int> n_seq,
                                 std::vector<int> m_seq);

double h_eval(const SequencePlan& plan, double x);
double frakh_eval(const SequencePlan& plan, double x);
// The g with (h + frak h)(g(x)) = x^gamma.
double g_inverse_eval(const SequencePlan& plan, double x);
double g_inverse_derivative(const SequencePlan& plan, double x);
// Inverse of g_inverse_eval: x with g(x) = u, i.e. ((h+frak h)(u))^{1/gamma}.
double g_forward_inverse(const SequencePlan& plan, double u);

struct PlanEstimates {
  double h_dev_scaled_sup = 0;   // |h(2pi k)-(2pi k)^g| / ((2pi k)^{g-2}+1), k >= 2
  double h_dev_abs_sup = 0;      // |h(2pi k)-(2pi k)^g|, k >= 2
  double h_dev_k1 = 0;           // the same at k = 1
  double slope_err_sup = 0;      // |2n_k+1 - g (2pi k)^{g-1}|, k >= 2
  double m_ratio_sup = 0;        // m_k (log(k+2))^2 / (2n_k+1)
  double calN_ratio_last = 0;    // calN_K / ((2pi)^{g-1} K^g)
  double calN_ratio_maxdev = 0;  // over k in [K/2, K]
  double N_ratio_beta_sup = 0;   // |N_{k+1}/N_k / ((k+1)/k)^{g-1} - 1|, k in [K/2, K)
  double frakh_drift_sup = 0;    // |frak h(2pi k) - alpha x^{dg}| past k0
  double g_dev_sup = 0;          // |g(x)-x| / (x alpha(x) + 1) at breakpoints
  bool all_finite = true;
};

PlanEstimates verify_plan_estimates(const SequencePlan& plan);

nlohmann::json plan_to_json(const SequencePlan& plan);
SequencePlan plan_from_json(const nlohmann::json& j);
bool operator==(const SequencePlan& a, const SequencePlan& b);

}  // namespace bl
